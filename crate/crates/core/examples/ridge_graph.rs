//! Ridge graph of P_5 with class-coloured nodes, printed as DOT.

use tspoly::artifacts::Artifacts;
use tspoly::parsimony::{classify_facets, ridge_graph};

fn main() -> tspoly::Result<()> {
    let art = Artifacts::for_n(5)?;
    let classes = classify_facets(art.inst(), art.p_hull()?, art.s_hull()?)?;
    let g = ridge_graph(art.p_hull()?).with_classes(&classes);
    eprintln!(
        "{} nodes, {} edges, connected: {}",
        g.facets.len(),
        g.edges.len(),
        g.is_connected()
    );
    print!("{}", g.to_dot(art.inst()));
    Ok(())
}
