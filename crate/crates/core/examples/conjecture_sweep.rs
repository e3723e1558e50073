//! Component condition against exact parsimony for every subset of the
//! subtour rows at n = 5.

use tspoly::artifacts::Artifacts;
use tspoly::parsimony::{all_subsets, classify_facets, conjecture_probe, ridge_graph, CheckMode};

fn main() -> tspoly::Result<()> {
    let art = Artifacts::for_n(5)?;
    let classes = classify_facets(art.inst(), art.p_hull()?, art.s_hull()?)?;
    let ridge = ridge_graph(art.p_hull()?).with_classes(&classes);
    let summary = conjecture_probe(
        &art,
        &ridge,
        &classes,
        all_subsets(10),
        CheckMode::Exact,
        0,
        0,
    )?;
    println!(
        "{} relaxations: {} parsimonious, {} break the necessary condition, {} break its converse, {} non-NR facets",
        summary.entries.len(),
        summary.parsimonious,
        summary.implication_violations,
        summary.conjecture_violations,
        summary.non_nr_facets
    );
    Ok(())
}
