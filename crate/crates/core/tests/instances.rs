mod support;

use std::collections::BTreeSet;

use proptest::prelude::*;
use tspoly::artifacts::Artifacts;
use tspoly::exactcore::{Inequality, QVector, Rat};
use tspoly::instances::{in_conv_plus_orthant, Edge, Instance, InstanceExport};
use tspoly::polyhedra::{dd_convert_back, HRep};
use tspoly::Error;

fn scaled_ints(v: &QVector) -> Vec<i64> {
    v.iter()
        .map(|r| {
            (r * &Rat::from_int(2))
                .to_i64_pair()
                .map(|(p, q)| p / q)
                .unwrap()
        })
        .collect()
}

fn as_ints(v: &QVector) -> Vec<i64> {
    v.iter().map(|r| r.to_i64_pair().unwrap().0).collect()
}

#[test]
fn rejects_tiny_instances() {
    assert!(matches!(Instance::new(2), Err(Error::InvalidInstance(_))));
    assert!(Instance::new(3).is_ok());
}

#[test]
fn edges_are_lexicographic() {
    let inst = Instance::new(5).unwrap();
    let labels: Vec<String> = inst.edges().iter().map(|e| e.to_string()).collect();
    assert_eq!(
        labels,
        ["12", "13", "14", "15", "23", "24", "25", "34", "35", "45"]
    );
    assert_eq!(inst.edge_index(3, 1), inst.edge_index(1, 3));
    assert_eq!(inst.edge(inst.edge_index(2, 4)), Edge::new(4, 2));
    assert_eq!(inst.dim_symmetric(), 5);
}

#[test]
fn cycle_counts_match_formula_and_permutations() {
    for n in 3..=7 {
        let inst = Instance::new(n).unwrap();
        let cycles = inst.hamiltonian_cycles();
        assert_eq!(cycles.len(), support::tour_count(n), "n={n}");
        assert_eq!(
            cycles.iter().cloned().collect::<BTreeSet<_>>(),
            support::tours_by_permutation(&inst)
        );
        let mut sorted = cycles.clone();
        sorted.sort();
        assert_eq!(sorted, cycles);
    }
    assert_eq!(Instance::new(7).unwrap().hamiltonian_cycles().len(), 360);
}

#[test]
fn delta_z_and_subtour_examples() {
    let inst = Instance::new(5).unwrap();
    let d0 = inst.delta(0).unwrap();
    assert_eq!(d0.sum(), Rat::from_int(2));
    assert!(matches!(inst.delta(5), Err(Error::OutOfRange(_))));
    let z = inst.point_z();
    assert_eq!(z[0], Rat::new(1, 2));
    assert_eq!(z, support::mean(inst.hamiltonian_cycles().as_slice()));
    for u in 0..5 {
        assert_eq!(inst.delta(u).unwrap().dot(&z), Rat::one());
    }
    let s = inst.subtour_inequality(&[0, 1]).unwrap();
    assert_eq!(s, inst.subtour_inequality(&[2, 3, 4]).unwrap());
    assert_eq!(s.rhs(), &Rat::from_int(2));
    assert!(inst.subtour_inequality(&[0]).is_err());
    assert!(inst.subtour_inequality(&[0, 1, 2, 3]).is_err());
    assert!(inst.subtour_inequality(&[0, 7]).is_err());
    assert_eq!(inst.all_subtour_inequalities().len(), 10);
    assert_eq!(
        Instance::new(6).unwrap().all_subtour_inequalities().len(),
        25
    );
    assert_eq!(
        inst.nonneg_inequality(3).unwrap().lhs(),
        &QVector::unit(10, 3)
    );
    assert!(inst.nonneg_inequality(10).is_err());
}

#[test]
fn tours_satisfy_degree_and_subtour_rows() {
    let inst = Instance::new(6).unwrap();
    let rows = inst.all_subtour_inequalities();
    for c in inst.hamiltonian_cycles() {
        for u in 0..6 {
            assert_eq!(inst.delta(u).unwrap().dot(&c), Rat::one());
        }
        assert!(rows.iter().all(|r| r.is_satisfied(&c)));
    }
}

#[test]
fn small_graphical_polyhedra() {
    // n = 3: the triangle and the three doubled paths.
    let v3 = Instance::new(3).unwrap().gtsp_vertices();
    let expect: Vec<QVector> = [[0, 2, 2], [1, 1, 1], [2, 0, 2], [2, 2, 0]]
        .iter()
        .map(|x| QVector::from_ints(x))
        .collect();
    assert_eq!(v3, expect);
    assert_eq!(Instance::new(4).unwrap().gtsp_vertices().len(), 31);
}

#[test]
fn multiplicity_three_never_needed_at_n4() {
    let inst = Instance::new(4).unwrap();
    let vertices = inst.gtsp_vertices();
    let refs: Vec<&QVector> = vertices.iter().collect();
    let cap3 = support::eulerian_brute_force(&inst, 3);
    for x in &cap3 {
        assert!(in_conv_plus_orthant(x, &refs), "{x:?} escapes the hull");
        if x.iter().any(|v| *v == Rat::from_int(3)) {
            assert!(!vertices.contains(x));
        }
    }
}

#[test]
fn graphical_vertices_against_brute_force_at_n5() {
    let art = Artifacts::for_n(5).unwrap();
    let inst = art.inst();
    let vertices = art.gtsp_vertices();
    assert_eq!(vertices.len(), 362);
    let cands = support::eulerian_brute_force(inst, 2);
    let cand_set: BTreeSet<&QVector> = cands.iter().collect();
    let cand_ints: Vec<Vec<i64>> = cands.iter().map(as_ints).collect();
    let hull = art.p_hull().unwrap();
    let facets: Vec<&Inequality> = hull.hrep.inequalities.iter().collect();
    for x in &cands {
        assert!(facets.iter().all(|f| f.is_satisfied(x)));
    }
    for v in vertices {
        assert!(cand_set.contains(v));
        let mut c = QVector::zeros(10);
        for f in facets.iter().filter(|f| f.is_tight(v)) {
            c = c.add(f.lhs());
        }
        let c = scaled_ints(&c.scale(&Rat::from_int(2)));
        let cost = |x: &[i64]| x.iter().zip(&c).map(|(a, b)| a * b).sum::<i64>();
        let own = cost(&as_ints(v));
        let ties = cand_ints.iter().filter(|x| cost(x) <= own).count();
        assert_eq!(ties, 1, "{v:?} is not the unique minimiser");
    }
    let back = dd_convert_back(&hull.hrep).unwrap();
    assert_eq!(back.canonical().points, vertices.to_vec());
}

#[test]
fn export_round_trips_through_json() {
    let inst = Instance::new(4).unwrap();
    let cycles = inst.hamiltonian_cycles();
    let ex = inst.export(&cycles);
    assert_eq!(ex.edges[0], [1, 2]);
    let text = serde_json::to_string(&ex).unwrap();
    assert!(text.starts_with("{\"n\":4"));
    let back: InstanceExport = serde_json::from_str(&text).unwrap();
    assert_eq!(back, ex);
    let h = HRep::new(inst.all_subtour_inequalities(), vec![]);
    assert!(cycles.iter().all(|c| h.contains(c)));
}

fn p5_vertices() -> &'static [QVector] {
    static V: std::sync::OnceLock<Vec<QVector>> = std::sync::OnceLock::new();
    V.get_or_init(|| Instance::new(5).unwrap().gtsp_vertices())
}

fn vertex_perm(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn cycle_set_is_permutation_invariant(perm in vertex_perm(6)) {
        let inst = Instance::new(6).unwrap();
        let cycles: BTreeSet<QVector> = inst.hamiltonian_cycles().into_iter().collect();
        let moved: BTreeSet<QVector> = cycles.iter().map(|c| inst.permute_edges(c, &perm)).collect();
        prop_assert_eq!(moved, cycles);
    }

    #[test]
    fn graphical_vertices_are_permutation_invariant(perm in vertex_perm(4)) {
        let inst = Instance::new(4).unwrap();
        let v: BTreeSet<QVector> = inst.gtsp_vertices().into_iter().collect();
        let moved: BTreeSet<QVector> = v.iter().map(|c| inst.permute_edges(c, &perm)).collect();
        prop_assert_eq!(moved, v);
    }

    #[test]
    fn shortcutting_a_walk_stays_in_the_polyhedron(
        walk in prop::collection::vec(0usize..5, 4..12),
    ) {
        // A closed walk through every vertex dominates, after shortcutting,
        // a point of the graphical polyhedron.
        let inst = Instance::new(5).unwrap();
        let mut w: Vec<usize> = walk;
        w.extend(0..5);
        w.dedup();
        if w.first() == w.last() {
            w.pop();
        }
        prop_assume!(w.len() >= 3 && w.windows(2).all(|p| p[0] != p[1]));
        let mut pairs: Vec<(usize, usize)> = w.windows(2).map(|p| (p[0], p[1])).collect();
        pairs.push((w[w.len() - 1], w[0]));
        let x = inst.edge_vector(&pairs);
        let refs: Vec<&QVector> = p5_vertices().iter().collect();
        prop_assert!(in_conv_plus_orthant(&x, &refs));
    }
}
