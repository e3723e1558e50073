mod support;

use std::collections::BTreeSet;

use proptest::prelude::*;
use tspoly::artifacts::Artifacts;
use tspoly::exactcore::{rank_of, Inequality, QVector, Rat};
use tspoly::polyhedra::{
    blocking_polyhedron, check_complex_axioms, conjugate_face, dd_convert, dd_convert_back, HRep,
    VRep,
};
use tspoly::polyhedra::{bounded_subcomplex, face_lattice_of, skeleton};

fn cube(d: usize) -> Vec<QVector> {
    (0..1u32 << d)
        .map(|m| QVector::from_ints(&(0..d).map(|i| (m >> i & 1) as i64).collect::<Vec<_>>()))
        .collect()
}

#[test]
fn cube_facets_and_lattice() {
    let (h, lat) = face_lattice_of(&VRep::polytope(cube(3))).unwrap();
    assert_eq!(h.inequalities.len(), 6);
    assert!(h.equations.is_empty());
    assert_eq!(lat.f_vector(), vec![8, 12, 6, 1]);
    assert_eq!(lat.euler_characteristic(|f| !f.is_empty()), 1);
    let sk = skeleton(&lat);
    assert_eq!(sk.edges.len(), 12);
    assert!(sk.is_connected());
    assert!(check_complex_axioms(&lat).is_ok());
    let fm = support::fourier_motzkin_facets(&cube(3), Clone::clone);
    assert_eq!(fm, h.inequalities.iter().cloned().collect::<BTreeSet<_>>());
}

#[test]
fn square_pyramid_lattice() {
    let mut pts = cube(2)
        .into_iter()
        .map(|p| p.concat(&QVector::zeros(1)))
        .collect::<Vec<_>>();
    pts.push(QVector::new(vec![
        Rat::new(1, 2),
        Rat::new(1, 2),
        Rat::one(),
    ]));
    let (h, lat) = face_lattice_of(&VRep::polytope(pts)).unwrap();
    assert_eq!(h.inequalities.len(), 5);
    assert_eq!(lat.f_vector(), vec![5, 8, 5, 1]);
}

#[test]
fn unbounded_orthant_corner() {
    // conv{(1,0),(0,1)} + R_+^2.
    let v = VRep::new(
        vec![QVector::from_ints(&[1, 0]), QVector::from_ints(&[0, 1])],
        vec![QVector::from_ints(&[1, 0]), QVector::from_ints(&[0, 1])],
    );
    let (h, lat) = face_lattice_of(&v).unwrap();
    let expect: BTreeSet<Inequality> = [
        Inequality::new(QVector::from_ints(&[1, 1]), Rat::one()),
        Inequality::new(QVector::from_ints(&[1, 0]), Rat::zero()),
        Inequality::new(QVector::from_ints(&[0, 1]), Rat::zero()),
    ]
    .into_iter()
    .collect();
    assert_eq!(
        h.inequalities.iter().cloned().collect::<BTreeSet<_>>(),
        expect
    );
    assert_eq!(bounded_subcomplex(&lat).f_vector(), vec![2, 1]);
    let back = dd_convert_back(&h).unwrap().canonical();
    assert_eq!(back, v.canonical());
}

#[test]
fn symmetric_polytope_matches_fourier_motzkin() {
    let art = Artifacts::for_n(5).unwrap();
    let inst = art.inst();
    let s = art.s_hull().unwrap();
    assert_eq!(s.dim(), 5);
    assert_eq!(s.hrep.inequalities.len(), 20);
    assert_eq!(s.lattice.f_vector(), vec![12, 60, 120, 90, 20, 1]);
    assert_eq!(s.lattice.euler_characteristic(|f| !f.is_empty()), 1);
    let fm = support::fourier_motzkin_facets(art.cycles(), |i| support::reduce_on_s(inst, i));
    let dd: BTreeSet<Inequality> = s
        .hrep
        .inequalities
        .iter()
        .map(|i| support::reduce_on_s(inst, i))
        .collect();
    assert_eq!(fm, dd);
    let expected: BTreeSet<Inequality> = (0..10)
        .map(|e| inst.nonneg_inequality(e).unwrap())
        .chain(inst.all_subtour_inequalities())
        .map(|i| support::reduce_on_s(inst, &i))
        .collect();
    assert_eq!(fm, expected);
}

#[test]
fn graphical_lattice_is_a_complex() {
    let art = Artifacts::for_n(5).unwrap();
    let p = art.p_hull().unwrap();
    assert_eq!(p.dim(), 10);
    assert_eq!(p.hrep.inequalities.len(), 25);
    let b = bounded_subcomplex(&p.lattice);
    assert!(check_complex_axioms(&b).is_ok());
    assert_eq!(b.euler_characteristic(|f| !f.is_empty()), 1);
    assert!(skeleton(&b).is_connected());
}

#[test]
fn blocker_of_graphical_polyhedron() {
    let art = Artifacts::for_n(5).unwrap();
    let inst = art.inst();
    let p = art.p_hull().unwrap();
    let b = art.blocker().unwrap();
    // Vertices of the blocker are the facets of P with positive rhs, scaled to rhs 1.
    let expect: BTreeSet<QVector> = p
        .hrep
        .inequalities
        .iter()
        .filter(|i| i.rhs().is_positive())
        .map(|i| i.lhs().scale(&i.rhs().recip()))
        .collect();
    assert_eq!(
        b.vrep.points.iter().cloned().collect::<BTreeSet<_>>(),
        expect
    );
    assert_eq!(expect.len(), 15);
    for u in 0..5 {
        assert!(b.lattice.vertex_index(&inst.delta(u).unwrap()).is_some());
    }
}

#[test]
fn conjugation_of_good_faces() {
    let art = Artifacts::for_n(5).unwrap();
    let inst = art.inst();
    let p = art.p_hull().unwrap();
    let b = art.blocker().unwrap();
    let lat = &p.lattice;
    let cycle_ids: Vec<usize> = art
        .cycles()
        .iter()
        .map(|c| lat.vertex_index(c).unwrap())
        .collect();
    let mut s_key = cycle_ids.clone();
    s_key.sort();
    let s_face = &lat.faces[lat.find(&s_key, &[]).expect("S is a face of P")];
    let conj = conjugate_face(lat, s_face, b).unwrap();
    let deltas: BTreeSet<QVector> = (0..5).map(|u| inst.delta(u).unwrap()).collect();
    assert_eq!(
        b.lattice
            .face_points(&conj)
            .into_iter()
            .collect::<BTreeSet<_>>(),
        deltas
    );
    assert_eq!(s_face.dim + conj.dim, 9);
    let nonneg = lat
        .faces
        .iter()
        .find(|f| f.dim == 9 && !f.rays.is_empty() && f.rays.len() == 9)
        .unwrap();
    assert!(conjugate_face(lat, nonneg, b).is_err());
    let mut good = 0;
    for f in lat
        .faces
        .iter()
        .filter(|f| f.is_bounded() && !f.is_empty() && f.dim >= 4)
    {
        let Ok(g) = conjugate_face(lat, f, b) else {
            continue;
        };
        good += 1;
        assert_eq!(f.dim + g.dim, 9, "{:?}", f.points);
        let back = tspoly::polyhedra::blocking::conjugate_back(lat, &g, b).unwrap();
        assert_eq!(back.points, f.points);
    }
    assert!(good > 0);
}

#[test]
fn symmetric_polar() {
    let art = Artifacts::for_n(5).unwrap();
    let inst = art.inst();
    let polar = art.polar().unwrap();
    let s = art.s_hull().unwrap();
    assert_eq!(polar.vrep.points.len(), 20);
    assert_eq!(polar.hrep.inequalities.len(), 12);
    for ineq in &s.hrep.inequalities {
        let y = polar.polar_point(inst, ineq);
        assert!(polar.lattice.vertex_index(&y).is_some());
        let face = polar.host_face(&y).unwrap();
        assert_eq!(face.dim, 0);
    }
    assert_eq!(polar.lattice.f_vector(), vec![20, 90, 120, 60, 12, 1]);
    let origin = QVector::zeros(5);
    assert_eq!(polar.host_face(&origin).unwrap().dim, 5);
}

fn zero_one_set(d: usize) -> impl Strategy<Value = Vec<QVector>> {
    prop::collection::btree_set(0u32..(1 << d), 1..(1usize << d)).prop_map(move |s| {
        s.into_iter()
            .map(|m| QVector::from_ints(&(0..d).map(|i| (m >> i & 1) as i64).collect::<Vec<_>>()))
            .collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn dd_round_trip_on_zero_one_polytopes(pts in zero_one_set(4)) {
        let v = VRep::polytope(pts.clone());
        let h = dd_convert(&v).unwrap();
        prop_assert!(pts.iter().all(|p| h.contains(p)));
        let back = dd_convert_back(&h).unwrap().canonical();
        prop_assert_eq!(back, v.canonical());
        let p0 = &pts[0];
        if rank_of(&pts.iter().map(|p| p.sub(p0)).collect::<Vec<_>>(), 4) == 4 {
            let fm = support::fourier_motzkin_facets(&pts, Clone::clone);
            prop_assert_eq!(fm, h.inequalities.iter().cloned().collect::<BTreeSet<_>>());
        }
    }

    #[test]
    fn meet_of_hreps_contains_only_common_points(a in zero_one_set(3), b in zero_one_set(3)) {
        let ha = dd_convert(&VRep::polytope(a.clone())).unwrap();
        let hb = dd_convert(&VRep::polytope(b.clone())).unwrap();
        let m: HRep = ha.meet(&hb);
        for p in cube(3) {
            prop_assert_eq!(m.contains(&p), ha.contains(&p) && hb.contains(&p));
        }
    }

    #[test]
    fn blocker_contains_scaled_facets(pts in zero_one_set(3)) {
        prop_assume!(pts.iter().all(|p| !p.is_zero()));
        let b = blocking_polyhedron(&VRep::polytope(pts.clone())).unwrap();
        for a in &b.vrep.points {
            prop_assert!(a.is_nonnegative());
            prop_assert!(pts.iter().all(|p| a.dot(p) >= Rat::one()));
        }
    }
}
