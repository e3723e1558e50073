//! Facets and face lattice of the symmetric TSP polytope S_5.

use tspoly::artifacts::Artifacts;

fn main() -> tspoly::Result<()> {
    let art = Artifacts::for_n(5)?;
    let s = art.s_hull()?;
    println!(
        "dim S = {}, {} equations, {} facets",
        s.dim(),
        s.hrep.equations.len(),
        s.hrep.inequalities.len()
    );
    println!("f-vector {:?}", s.lattice.f_vector());
    for f in &s.hrep.inequalities {
        let tight = s.vrep.points.iter().filter(|c| f.is_tight(c)).count();
        println!("  {f:?}  tight on {tight} tours");
    }
    Ok(())
}
