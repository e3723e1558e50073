//! Triangle slacks, the TT normal form and minimum-slack edge sets.

use std::collections::BTreeSet;
use tspoly::exactcore::{QVector, Rat};
use tspoly::instances::Instance;
use tspoly::ttgeom::{e_sets, is_tt, lambda, theta};

fn main() -> tspoly::Result<()> {
    let inst = Instance::new(5)?;
    let cut = inst
        .cut_vector(&BTreeSet::from([0, 1]))
        .scale(&Rat::new(1, 2));
    println!("a = ½·cut({{1,2}}) = {cut}");
    println!("TT: {}, λ(a) = {}", is_tt(&inst, &cut), lambda(&inst, &cut));
    let fp = e_sets(&inst, &cut);
    for u in 0..inst.n() {
        let edges: Vec<String> = fp.at(u).iter().map(|&e| inst.edge(e).to_string()).collect();
        println!("  E^{} = {{{}}}", u + 1, edges.join(","));
    }
    let ones = QVector::constant(inst.num_edges(), Rat::one());
    println!(
        "θ(1) = {}, λ(1) = {}",
        theta(&inst, &ones),
        lambda(&inst, &ones)
    );
    Ok(())
}
