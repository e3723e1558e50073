//! Hamiltonian cycles and vertices of the graphical TSP polyhedron.

use tspoly::instances::Instance;

fn main() -> tspoly::Result<()> {
    let n: usize = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(5);
    let inst = Instance::new(n)?;
    let cycles = inst.hamiltonian_cycles();
    println!(
        "n = {n}: {} edges, {} Hamiltonian cycles",
        inst.num_edges(),
        cycles.len()
    );
    if n <= 5 {
        let v = inst.gtsp_vertices();
        let non_tours = v
            .iter()
            .filter(|x| x.iter().any(|e| e.to_f64() > 1.0))
            .count();
        println!(
            "{} vertices of P, {} with a doubled edge",
            v.len(),
            non_tours
        );
    }
    println!("z = {}", inst.point_z());
    for s in inst.all_subtour_inequalities().iter().take(3) {
        println!("subtour row: {s:?}");
    }
    Ok(())
}
