//! The graphical TSP polyhedron P_5: vertices, facets and face counts.

use std::time::Instant;
use tspoly::artifacts::Artifacts;
use tspoly::parsimony::{classify_facets, facet_label};

fn main() -> tspoly::Result<()> {
    let art = Artifacts::for_n(5)?;
    let t = Instant::now();
    let p = art.p_hull()?;
    println!(
        "{} vertices, {} rays, {} facets in {:?}",
        p.vrep.points.len(),
        p.vrep.rays.len(),
        p.hrep.inequalities.len(),
        t.elapsed()
    );
    println!("f-vector {:?}", p.lattice.f_vector());
    for c in classify_facets(art.inst(), p, art.s_hull()?)? {
        println!(
            "  {:<8?} {}",
            c.class,
            facet_label(art.inst(), &c.inequality)
        );
    }
    Ok(())
}
