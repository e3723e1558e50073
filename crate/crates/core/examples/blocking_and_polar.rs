//! The blocking polyhedron of P_5 and the polar of S_5 in L-coordinates.

use tspoly::artifacts::Artifacts;
use tspoly::polyhedra::bounded_subcomplex;

fn main() -> tspoly::Result<()> {
    let art = Artifacts::for_n(5)?;
    let b = art.blocker()?;
    println!(
        "blocker: {} vertices, {} rays, {} facets",
        b.vrep.points.len(),
        b.vrep.rays.len(),
        b.hrep.inequalities.len()
    );
    println!(
        "bounded part f-vector {:?}",
        bounded_subcomplex(&b.lattice).f_vector()
    );
    let polar = art.polar()?;
    println!(
        "polar of S: {} vertices in dimension {}, f-vector {:?}",
        polar.vrep.points.len(),
        polar.chart.dim(),
        polar.lattice.f_vector()
    );
    println!(
        "TT part of the blocker f-vector {:?}",
        art.tt_part_of_blocker()?.f_vector()
    );
    Ok(())
}
