mod support;

use std::collections::BTreeSet;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tspoly::artifacts::{Artifacts, Hull};
use tspoly::exactcore::{Inequality, QVector, Rat};
use tspoly::parsimony::{
    all_subsets, classify_facets, component_condition, facet_label, facet_lifts, implication_check,
    is_metric_cost, nr_writability_check, nr_writability_sweep, parsimony_check_exact,
    parsimony_check_sampled, ridge_graph, ridge_matches_blocker, row_facets, sample_metric,
    ClassifiedFacet, ExactChecker, FacetClass, GapWitness, ParsimonyVerdict, Relaxation,
    VerdictStatus,
};
use tspoly::polyhedra::{bounded_subcomplex, VRep};

fn art5() -> &'static Artifacts {
    static A: std::sync::OnceLock<Artifacts> = std::sync::OnceLock::new();
    A.get_or_init(|| Artifacts::for_n(5).unwrap())
}

fn classes5() -> Vec<ClassifiedFacet> {
    let art = art5();
    classify_facets(art.inst(), art.p_hull().unwrap(), art.s_hull().unwrap()).unwrap()
}

fn count(classes: &[ClassifiedFacet], c: FacetClass) -> usize {
    classes.iter().filter(|f| f.class == c).count()
}

#[test]
fn facet_classes_at_n5() {
    let classes = classes5();
    assert_eq!(classes.len(), 25);
    assert_eq!(count(&classes, FacetClass::Nonneg), 10);
    assert_eq!(count(&classes, FacetClass::Degree), 5);
    assert_eq!(count(&classes, FacetClass::TtNr), 10);
    assert_eq!(count(&classes, FacetClass::TtNonNr), 0);
    let inst = art5().inst();
    let subtours: BTreeSet<Inequality> = inst.all_subtour_inequalities().into_iter().collect();
    for c in classes.iter().filter(|c| c.class == FacetClass::TtNr) {
        assert!(subtours.contains(&c.inequality));
        assert_eq!(c.s_dim, 4);
    }
    let colours: BTreeSet<&str> = classes.iter().map(|c| c.class.color()).collect();
    assert_eq!(colours.len(), 3);
}

#[test]
fn symmetric_facets_lift_to_degree_facets_plus_one() {
    let art = art5();
    let classes = classes5();
    let lifts = facet_lifts(art.p_hull().unwrap(), art.s_hull().unwrap(), &classes);
    assert_eq!(lifts.len(), 20);
    assert_eq!(lifts.iter().filter(|l| l.good).count(), 10);
    for l in &lifts {
        assert!(l.is_simplex_lift(5, &classes), "{:?}", l.s_facet);
        assert_eq!(l.tt_lifts.len(), usize::from(l.good));
    }
}

#[test]
fn ridge_graph_of_the_cube() {
    let pts: Vec<QVector> = (0..8u32)
        .map(|m| QVector::from_ints(&[(m & 1) as i64, (m >> 1 & 1) as i64, (m >> 2 & 1) as i64]))
        .collect();
    let hull = Hull::from_vrep(VRep::polytope(pts)).unwrap();
    let ridge = ridge_graph(&hull);
    assert_eq!(ridge.facets.len(), 6);
    assert_eq!(ridge.edges.len(), 12);
    assert!((0..6).all(|v| ridge.degree_of(v) == 4));
    assert!(ridge.is_connected());
    let keep: BTreeSet<usize> = [0, 1].into_iter().collect();
    let comps = ridge.components(&keep);
    assert!(comps.len() == 1 || comps.len() == 2);
}

#[test]
fn ridge_graph_of_p5() {
    let art = art5();
    let classes = classes5();
    let ridge = ridge_graph(art.p_hull().unwrap()).with_classes(&classes);
    assert_eq!(ridge.facets.len(), 25);
    assert_eq!(ridge.edges.len(), 260);
    assert!(ridge.is_connected());
    let b = art.blocker().unwrap();
    assert!(ridge_matches_blocker(
        &ridge,
        &classes,
        &bounded_subcomplex(&b.lattice)
    ));
    let dot = ridge.to_dot(art.inst());
    assert!(dot.starts_with("graph") || dot.contains("graph"));
    assert_eq!(dot.matches(" -- ").count(), 260);
    let label = facet_label(art.inst(), &art.inst().subtour_inequality(&[0, 1]).unwrap());
    assert!(!label.is_empty());
}

#[test]
fn relaxation_rows_are_validated() {
    let art = art5();
    let inst = art.inst();
    assert!(Relaxation::for_artifacts(art, vec![inst.nonneg_inequality(0).unwrap()]).is_err());
    assert!(Relaxation::for_artifacts(art, vec![inst.degree_inequality(0).unwrap()]).is_err());
    let halved = Inequality::new(QVector::constant(10, Rat::one()), Rat::from_int(6));
    assert!(Relaxation::for_artifacts(art, vec![halved]).is_err());
    let short = Inequality::new(QVector::constant(3, Rat::one()), Rat::one());
    assert!(Relaxation::for_artifacts(art, vec![short]).is_err());
    let r = Relaxation::subtour(art).unwrap();
    assert_eq!(r.rows.len(), 10);
    let ones = QVector::constant(10, Rat::one());
    assert_eq!(r.min_value(inst, &ones, true).unwrap(), Rat::from_int(5));
    assert_eq!(r.min_value(inst, &ones, false).unwrap(), Rat::from_int(5));
    let all = Relaxation::all_nr_facets(art, &classes5()).unwrap();
    assert_eq!(all.rows, r.rows);
}

#[test]
fn metric_sampling() {
    let inst = art5().inst();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..50 {
        let c = sample_metric(inst, &mut rng);
        assert!(is_metric_cost(inst, &c));
        assert!(c
            .iter()
            .all(|v| v.is_positive() && *v <= Rat::from_int(1000)));
    }
    let mut bad = QVector::constant(10, Rat::one());
    bad[0] = Rat::from_int(5);
    assert!(!is_metric_cost(inst, &bad));
}

#[test]
fn exact_and_sampled_checks_agree() {
    let art = art5();
    let inst = art.inst();
    let subtours = inst.all_subtour_inequalities();
    for rows in [
        vec![],
        vec![subtours[0].clone()],
        subtours[..4].to_vec(),
        subtours.clone(),
    ] {
        let r = Relaxation::for_artifacts(art, rows).unwrap();
        let exact = parsimony_check_exact(inst, art.cycles(), &r).unwrap();
        let sampled = parsimony_check_sampled(inst, &r, 60, 5).unwrap();
        assert_eq!(exact.status, VerdictStatus::HoldsExact);
        assert_eq!(sampled.status, VerdictStatus::HoldsOnSamples);
        assert_eq!(sampled.sample_count, 60);
    }
}

#[test]
fn tours_plus_shortcuts_membership() {
    let art = art5();
    let inst = art.inst();
    let mut checker = ExactChecker::new(inst, art.cycles());
    for c in art.cycles() {
        assert!(checker.in_tours_plus_shortcuts(c));
    }
    // Every graphical vertex shortcuts down to a tour combination.
    for v in art.gtsp_vertices().iter().step_by(17) {
        assert!(checker.in_tours_plus_shortcuts(v));
    }
    assert!(!checker.in_tours_plus_shortcuts(&QVector::zeros(10)));
    assert!(!checker.in_tours_plus_shortcuts(&inst.point_z().scale(&Rat::new(1, 2))));
}

#[test]
fn fabricated_witnesses_are_rejected() {
    let art = art5();
    let inst = art.inst();
    let r = Relaxation::subtour(art).unwrap();
    let cost = QVector::constant(10, Rat::one());
    let w = GapWitness {
        cost,
        value_with_equations: Rat::from_int(5),
        value_with_inequalities: Rat::from_int(4),
        vertex: None,
    };
    assert!(!w.recheck(inst, &r).unwrap());
}

#[test]
fn component_condition_and_implication() {
    let art = art5();
    let classes = classes5();
    let ridge = ridge_graph(art.p_hull().unwrap()).with_classes(&classes);
    let empty = Relaxation::for_artifacts(art, vec![]).unwrap();
    let rows = row_facets(&empty, &classes).unwrap();
    assert!(rows.is_empty());
    let rep = component_condition(&ridge, &classes, &rows);
    assert!(rep.all_meet_nr);
    let keep_total: usize = rep.components.iter().map(|c| c.len()).sum();
    assert_eq!(keep_total, 10);
    let verdict = parsimony_check_exact(art.inst(), art.cycles(), &empty).unwrap();
    let rep = implication_check(&ridge, &classes, &empty, verdict).unwrap();
    assert!(rep.implication_holds);
    let failing = ParsimonyVerdict {
        status: VerdictStatus::Fails,
        witness: None,
        sample_count: 0,
        vertices_checked: 0,
    };
    let full = Relaxation::subtour(art).unwrap();
    let rep = implication_check(&ridge, &classes, &full, failing).unwrap();
    assert!(rep.implication_holds);
    assert!(rep.components.components.is_empty());
}

#[test]
fn writability_controls() {
    let art = art5();
    let inst = art.inst();
    let subtours = inst.all_subtour_inequalities();
    let deg = inst.degree_inequality(1).unwrap();
    let w = nr_writability_check(inst, &deg, &[]);
    assert!(w.writable);
    let s0 = &subtours[0];
    let w = nr_writability_check(inst, s0, std::slice::from_ref(s0));
    assert!(w.writable);
    assert_eq!(w.row_weights.unwrap(), QVector::from_ints(&[1]));
    let w = nr_writability_check(inst, s0, &subtours[1..2]);
    assert!(!w.writable && w.certificate.is_some());
    let r = Relaxation::subtour(art).unwrap();
    let rep = nr_writability_sweep(inst, &classes5(), &r);
    assert!(rep.vacuous && rep.non_nr_facets == 0);
}

#[test]
fn subset_enumeration() {
    let subsets: Vec<Vec<usize>> = all_subsets(3).collect();
    assert_eq!(subsets.len(), 8);
    assert_eq!(subsets[0], Vec::<usize>::new());
    assert_eq!(subsets[7], vec![0, 1, 2]);
}
