//! Exact and sampled parsimony checks for relaxations of S_5 by subtour rows.

use tspoly::artifacts::Artifacts;
use tspoly::parsimony::{parsimony_check_exact, parsimony_check_sampled, Relaxation};

fn main() -> tspoly::Result<()> {
    let art = Artifacts::for_n(5)?;
    let inst = art.inst();
    let full = Relaxation::subtour(&art)?;
    let v = parsimony_check_exact(inst, art.cycles(), &full)?;
    println!(
        "all subtour rows: {:?} after {} vertices",
        v.status, v.vertices_checked
    );
    let v = parsimony_check_sampled(inst, &full, 50, 7)?;
    println!("sampled: {:?} on {} metrics", v.status, v.sample_count);
    let one = Relaxation::for_artifacts(&art, vec![inst.all_subtour_inequalities()[0].clone()])?;
    let v = parsimony_check_exact(inst, art.cycles(), &one)?;
    println!("single subtour row: {:?}", v.status);
    Ok(())
}
