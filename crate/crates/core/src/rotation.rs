//! The projective maps between the TT part of `P^△` and `dl(N, S^△)`,
//! rotated inequalities, and exact checks of the rotation-complex
//! characterisation and of the combinatorial equivalence.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::artifacts::Artifacts;
use crate::exactcore::{rank_of, Inequality, QVector, Rat};
use crate::instances::Instance;
use crate::polyhedra::{Complex, Face};
use crate::ttgeom::{
    e_sets, fingerprint_cell_hrep, lambda, rooted_triangles, shortcut, theta, RootedTriangle,
    TTFingerprint,
};
use crate::{Error, Result};

fn in_l(inst: &Instance, a: &QVector) -> bool {
    inst.matrix_d().mul_vec(a).is_zero()
}

/// `π(a) = p(a)/(a·z − 1)`, defined off the hyperplane `a·z = 1`.
pub fn pi(inst: &Instance, a: &QVector) -> Result<QVector> {
    let denom = &a.dot(&inst.point_z()) - &Rat::one();
    if denom.is_zero() {
        return Err(Error::OutsideDomain(
            "a·z = 1: the point lies on the degree face".into(),
        ));
    }
    Ok(inst.project_l(a).scale(&denom.recip()))
}

/// `(γ(a), c(a)) = (−1 + a·z − 1·λ(a), a − Dᵀλ(a))` for `a ∈ L`.
pub fn gamma_c(inst: &Instance, a: &QVector) -> Result<(Rat, QVector)> {
    if !in_l(inst, a) {
        return Err(Error::OutsideDomain("γ and c are defined on L".into()));
    }
    let lam = lambda(inst, a);
    let gamma = &(&a.dot(&inst.point_z()) - &Rat::one()) - &lam.sum();
    Ok((gamma, a.sub(&inst.d_transpose(&lam))))
}

/// `φ(a) = c(a)/γ(a)`, requiring `γ(a) > 0`.
pub fn phi(inst: &Instance, a: &QVector) -> Result<QVector> {
    let (gamma, c) = gamma_c(inst, a)?;
    if !gamma.is_positive() {
        return Err(Error::OutsideDomain(format!("γ = {gamma} is not positive")));
    }
    Ok(c.scale(&gamma.recip()))
}

/// Host face of `S^△` (by vertex indices) and TT fingerprint of a point.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RotationCell {
    pub host: Vec<usize>,
    pub fingerprint: TTFingerprint,
}

/// The cell of a point of `|dl(N, S^△)|` given in chart coordinates.
pub fn rotation_cell(art: &Artifacts, y: &QVector) -> Result<RotationCell> {
    let polar = art.polar()?;
    let host = polar
        .host_face(y)
        .ok_or_else(|| Error::OutsideDomain("point is not in S^△".into()))?;
    let banned = art.nonneg_polar_vertices()?;
    if host.points.iter().any(|p| banned.contains(p)) {
        return Err(Error::OutsideDomain("point is not in |dl(N, S^△)|".into()));
    }
    let a = polar.chart.to_edge(y);
    Ok(RotationCell {
        host: host.points.clone(),
        fingerprint: e_sets(art.inst(), &a),
    })
}

/// One member of `𝔉(a)`: the face of `P` of the rotated inequality for `I`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RotatedFace {
    pub subset: Vec<usize>,
    pub inequality: Inequality,
    /// Index into the face lattice of `P`.
    pub face: usize,
    /// Shortcuts in the direction space of the face.
    pub feasible: BTreeSet<RootedTriangle>,
    /// `∪_{u ∈ I} {s_{u,e} : e ∈ E^u(a)}`.
    pub predicted: BTreeSet<RootedTriangle>,
}

/// `(θ(a)+q)·x ≥ −1 + a·z − 1·λ(a) + q·z` with `q = Σ_{u ∉ I} δ_u`.
pub fn rotated_inequality(inst: &Instance, a: &QVector, subset: &[usize]) -> Inequality {
    let lam = lambda(inst, a);
    let z = inst.point_z();
    let mut xi = QVector::zeros(inst.n());
    for u in (0..inst.n()).filter(|u| !subset.contains(u)) {
        xi[u] = Rat::one();
    }
    let q = inst.d_transpose(&xi);
    let rhs = &(&(&a.dot(&z) - &Rat::one()) - &lam.sum()) + &q.dot(&z);
    Inequality::new(theta(inst, a).add(&q), rhs)
}

/// Basis of the direction space of a face, for membership tests.
fn direction_basis(lattice: &Complex, f: &Face) -> Vec<QVector> {
    let pts = lattice.face_points(f);
    let Some(p0) = pts.first() else { return vec![] };
    let mut dirs: Vec<QVector> = pts[1..].iter().map(|p| p.sub(p0)).collect();
    dirs.extend(f.rays.iter().map(|&r| lattice.rays[r].clone()));
    let mut basis: Vec<QVector> = Vec::new();
    for d in dirs {
        basis.push(d);
        if rank_of(&basis, p0.len()) < basis.len() {
            basis.pop();
        }
    }
    basis
}

pub fn rotated_face(art: &Artifacts, a: &QVector, subset: &[usize]) -> Result<RotatedFace> {
    let inst = art.inst();
    let ineq = rotated_inequality(inst, a, subset);
    let hull = art.p_hull()?;
    if !hull.vrep.points.iter().all(|x| ineq.is_satisfied(x)) || !ineq.lhs().is_nonnegative() {
        return Err(Error::CheckFailed(format!(
            "rotated inequality for I = {subset:?} is not valid for P"
        )));
    }
    let face = art.p_face_of(&ineq)?;
    let f = &hull.lattice.faces[face];
    let basis = direction_basis(&hull.lattice, f);
    let d = inst.num_edges();
    let feasible: BTreeSet<RootedTriangle> = rooted_triangles(inst)
        .into_iter()
        .filter(|t| {
            let mut b = basis.clone();
            b.push(shortcut(inst, t));
            rank_of(&b, d) == basis.len()
        })
        .collect();
    let fp = e_sets(inst, a);
    let predicted = fp
        .triangles(inst)
        .into_iter()
        .filter(|t| subset.contains(&t.root))
        .collect();
    Ok(RotatedFace {
        subset: subset.to_vec(),
        inequality: ineq,
        face,
        feasible,
        predicted,
    })
}

/// `𝔉(a)` enumerated over all `I ⊆ V_n`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RotatedFaceFamily {
    pub base: QVector,
    pub members: Vec<RotatedFace>,
}

impl RotatedFaceFamily {
    pub fn distinct_faces(&self) -> usize {
        self.members
            .iter()
            .map(|m| m.face)
            .collect::<BTreeSet<_>>()
            .len()
    }

    pub fn shortcuts_match(&self) -> bool {
        self.members.iter().all(|m| m.feasible == m.predicted)
    }

    pub fn face_set(&self) -> BTreeSet<usize> {
        self.members.iter().map(|m| m.face).collect()
    }
}

pub fn rotated_family(art: &Artifacts, a: &QVector) -> Result<RotatedFaceFamily> {
    let n = art.inst().n();
    let mut members = Vec::with_capacity(1 << n);
    for mask in 0u32..(1 << n) {
        let subset: Vec<usize> = (0..n).filter(|u| mask >> u & 1 == 1).collect();
        members.push(rotated_face(art, a, &subset)?);
    }
    Ok(RotatedFaceFamily {
        base: a.clone(),
        members,
    })
}

/// A point of the relative interior of a face obtained from random positive
/// convex weights on its vertices.
pub fn random_relint_point(c: &Complex, f: &Face, rng: &mut impl Rng) -> QVector {
    let weights: Vec<Rat> = f
        .points
        .iter()
        .map(|_| Rat::from_int(rng.gen_range(1..=20)))
        .collect();
    let total: Rat = weights.iter().sum();
    let mut acc = QVector::zeros(c.ambient);
    for (&i, w) in f.points.iter().zip(&weights) {
        acc = acc.axpy(&(w / &total), &c.points[i]);
    }
    acc
}

/// Outcome of the rotation-complex characterisation check.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CharacterisationReport {
    pub faces: usize,
    pub f_vector: Vec<usize>,
    pub is_complex: bool,
    pub keys_injective: bool,
    pub keys_constant_on_relint: bool,
    pub cells_within_fan_cells: bool,
    pub hosts_in_deletion: bool,
    pub families_separate_cells: bool,
    pub random_samples_agree: bool,
    pub witnesses: Vec<String>,
}

impl CharacterisationReport {
    pub fn passed(&self) -> bool {
        self.is_complex
            && self.keys_injective
            && self.keys_constant_on_relint
            && self.cells_within_fan_cells
            && self.hosts_in_deletion
            && self.families_separate_cells
            && self.random_samples_agree
    }
}

/// Compares the faces of the common refinement with the partition of
/// `|dl(N, S^△)|` by (host face, fingerprint).
///
/// For each refinement face the key is read at its barycentre. The key is
/// constant on the relative interior exactly when every vertex lies in the
/// closed fan cell of the barycentre's fingerprint, which is tested exactly;
/// random interior points are a second route. The families `𝔉(a)` at
/// barycentres of maximal cells are compared as a third.
pub fn characterisation_check(
    art: &Artifacts,
    samples_per_face: usize,
    seed: u64,
) -> Result<CharacterisationReport> {
    let inst = art.inst();
    let polar = art.polar()?;
    let rc = art.rotation_complex()?;
    let dl = art.dl_complex()?;
    let mut witnesses = Vec::new();
    let is_complex = match crate::polyhedra::check_complex_axioms(rc) {
        Ok(()) => true,
        Err(e) => {
            witnesses.push(e);
            false
        }
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut keys: HashMap<RotationCell, usize> = HashMap::new();
    let mut keys_injective = true;
    let mut constant = true;
    let mut within = true;
    let mut hosts_ok = true;
    let mut samples_ok = true;
    for (k, f) in rc.faces.iter().enumerate().filter(|(_, f)| !f.is_empty()) {
        let y = rc.relint_point(f);
        let cell = match rotation_cell(art, &y) {
            Ok(c) => c,
            Err(e) => {
                hosts_ok = false;
                witnesses.push(format!("face {k}: {e}"));
                continue;
            }
        };
        if dl.find(&cell.host, &[]).is_none() {
            hosts_ok = false;
            witnesses.push(format!("face {k}: host {:?} not in dl(N, S^△)", cell.host));
        }
        let fan_cell = fingerprint_cell_hrep(inst, &polar.chart, &cell.fingerprint);
        if !rc.face_points(f).iter().all(|v| fan_cell.contains(v)) {
            within = false;
            constant = false;
            witnesses.push(format!("face {k}: vertices leave the closed fan cell"));
        }
        let host_face = polar
            .lattice
            .find(&cell.host, &[])
            .map(|i| &polar.lattice.faces[i]);
        if let Some(h) = host_face {
            let hpts = polar.lattice.face_points(h);
            if !rc.face_points(f).iter().all(|v| {
                polar
                    .hrep
                    .inequalities
                    .iter()
                    .all(|ineq| !hpts.iter().all(|p| ineq.is_tight(p)) || ineq.is_tight(v))
            }) {
                constant = false;
                witnesses.push(format!("face {k}: not inside its host face"));
            }
        }
        for _ in 0..samples_per_face {
            let s = random_relint_point(rc, f, &mut rng);
            match rotation_cell(art, &s) {
                Ok(c) if c == cell => {}
                _ => {
                    samples_ok = false;
                    witnesses.push(format!(
                        "face {k}: random interior point has a different key"
                    ));
                }
            }
        }
        if let Some(prev) = keys.insert(cell, k) {
            keys_injective = false;
            witnesses.push(format!("faces {prev} and {k} share a key"));
        }
    }

    let mut families: BTreeMap<BTreeSet<usize>, usize> = BTreeMap::new();
    let mut families_ok = true;
    for (k, f) in rc.faces.iter().enumerate().filter(|(_, f)| !f.is_empty()) {
        let a = polar.chart.to_edge(&rc.relint_point(f));
        let fam = rotated_family(art, &a)?;
        if let Some(prev) = families.insert(fam.face_set(), k) {
            families_ok = false;
            witnesses.push(format!("faces {prev} and {k} have equal rotated families"));
        }
    }

    Ok(CharacterisationReport {
        faces: rc.faces.len() - 1,
        f_vector: rc.f_vector(),
        is_complex,
        keys_injective,
        keys_constant_on_relint: constant,
        cells_within_fan_cells: within,
        hosts_in_deletion: hosts_ok,
        families_separate_cells: families_ok,
        random_samples_agree: samples_ok,
        witnesses,
    })
}

/// Outcome of the combinatorial-equivalence check between the TT part of
/// `P^△` and the rotation complex.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EquivalenceReport {
    pub tt_f_vector: Vec<usize>,
    pub rotation_f_vector: Vec<usize>,
    pub points_checked: usize,
    pub phi_pi_identity: bool,
    pub pi_phi_identity: bool,
    pub gamma_positive: bool,
    pub face_map_bijective: bool,
    pub inclusion_preserved: bool,
    pub vertices_to_vertices: bool,
    pub nr_vertices_to_polar_vertices: bool,
    pub witnesses: Vec<String>,
}

impl EquivalenceReport {
    pub fn passed(&self) -> bool {
        self.tt_f_vector == self.rotation_f_vector
            && self.phi_pi_identity
            && self.pi_phi_identity
            && self.gamma_positive
            && self.face_map_bijective
            && self.inclusion_preserved
            && self.vertices_to_vertices
    }
}

/// Vertices, edge midpoints and 2-face barycentres of a complex.
fn witness_points(c: &Complex) -> Vec<QVector> {
    c.faces
        .iter()
        .filter(|f| (0..=2).contains(&f.dim))
        .map(|f| c.relint_point(f))
        .collect()
}

pub fn verify_equivalence(art: &Artifacts) -> Result<EquivalenceReport> {
    let inst = art.inst();
    let n = inst.n();
    if !(5..=6).contains(&n) {
        return Err(Error::InvalidInstance(format!(
            "equivalence sweeps run for n in 5..=6, got {n}"
        )));
    }
    let polar = art.polar()?;
    let chart = &polar.chart;
    let tt = art.tt_part_of_blocker()?;
    let rc = art.rotation_complex()?;
    let mut witnesses = Vec::new();

    let mut phi_pi = true;
    let mut gamma_pos = true;
    let tt_points = witness_points(tt);
    for a in &tt_points {
        let b = pi(inst, a)?;
        match phi(inst, &b) {
            Ok(back) if &back == a => {}
            Ok(_) => {
                phi_pi = false;
                witnesses.push(format!("φ(π(a)) ≠ a at {a}"));
            }
            Err(e) => {
                phi_pi = false;
                gamma_pos = false;
                witnesses.push(format!("φ undefined at π({a}): {e}"));
            }
        }
    }
    let mut pi_phi = true;
    let rc_points = witness_points(rc);
    for y in &rc_points {
        let b = chart.to_edge(y);
        match phi(inst, &b) {
            Ok(a) => {
                if pi(inst, &a)? != b {
                    pi_phi = false;
                    witnesses.push(format!("π(φ(b)) ≠ b at {b}"));
                }
            }
            Err(e) => {
                gamma_pos = false;
                pi_phi = false;
                witnesses.push(format!("γ not positive at {b}: {e}"));
            }
        }
    }

    // Face map through keys of images of barycentres.
    let rc_keys: HashMap<RotationCell, usize> = rc
        .faces
        .iter()
        .enumerate()
        .filter(|(_, f)| !f.is_empty())
        .map(|(k, f)| Ok((rotation_cell(art, &rc.relint_point(f))?, k)))
        .collect::<Result<_>>()?;
    let rc_point_ids: HashMap<&QVector, usize> =
        rc.points.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let mut image: HashMap<usize, usize> = HashMap::new();
    let mut vertices_ok = true;
    let mut bijective = true;
    for (k, g) in tt.faces.iter().enumerate().filter(|(_, f)| !f.is_empty()) {
        let y = chart.from_edge(&pi(inst, &tt.relint_point(g))?);
        let key = rotation_cell(art, &y)?;
        let Some(&target) = rc_keys.get(&key) else {
            bijective = false;
            witnesses.push(format!(
                "image of TT face {k} is not a face of the rotation complex"
            ));
            continue;
        };
        let mut imgs: Vec<usize> = Vec::new();
        for a in tt.face_points(g) {
            let yv = chart.from_edge(&pi(inst, &a)?);
            match rc_point_ids.get(&yv) {
                Some(&i) => imgs.push(i),
                None => vertices_ok = false,
            }
        }
        imgs.sort();
        if imgs != rc.faces[target].points || rc.faces[target].dim != g.dim {
            vertices_ok = false;
            witnesses.push(format!(
                "TT face {k} and its image differ in vertices or dimension"
            ));
        }
        image.insert(k, target);
    }
    let targets: BTreeSet<usize> = image.values().copied().collect();
    if targets.len() != image.len() || targets.len() != rc.faces.len() - 1 {
        bijective = false;
        witnesses.push(format!(
            "face map hits {} of {} faces",
            targets.len(),
            rc.faces.len() - 1
        ));
    }
    let mut inclusion = true;
    for (&g1, &t1) in &image {
        for (&g2, &t2) in &image {
            let a = tt.faces[g1].is_subface_of(&tt.faces[g2]);
            let b = rc.faces[t1].is_subface_of(&rc.faces[t2]);
            if a != b {
                inclusion = false;
            }
        }
    }
    if !inclusion {
        witnesses.push("face map does not preserve inclusion".into());
    }

    // Vertices of the TT part that are normalised NR facets map to vertices
    // of S^△.
    let mut nr_ok = true;
    for a in tt.points.iter().filter(|a| {
        tt.faces
            .iter()
            .any(|f| f.dim == 0 && tt.points[f.points[0]] == **a)
    }) {
        let y = chart.from_edge(&pi(inst, a)?);
        if polar.lattice.vertex_index(&y).is_none() {
            nr_ok = false;
        }
    }

    Ok(EquivalenceReport {
        tt_f_vector: tt.f_vector(),
        rotation_f_vector: rc.f_vector(),
        points_checked: tt_points.len() + rc_points.len(),
        phi_pi_identity: phi_pi,
        pi_phi_identity: pi_phi,
        gamma_positive: gamma_pos,
        face_map_bijective: bijective,
        inclusion_preserved: inclusion,
        vertices_to_vertices: vertices_ok,
        nr_vertices_to_polar_vertices: nr_ok,
        witnesses,
    })
}

/// `𝔉(a)` at random points of `|dl(N, S^△)|`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FamilySweepReport {
    pub points: usize,
    pub expected_size: usize,
    pub sizes: Vec<usize>,
    pub shortcut_mismatches: Vec<QVector>,
}

impl FamilySweepReport {
    pub fn passed(&self) -> bool {
        self.sizes.iter().all(|&s| s == self.expected_size) && self.shortcut_mismatches.is_empty()
    }
}

pub fn family_sweep(art: &Artifacts, points: usize, seed: u64) -> Result<FamilySweepReport> {
    let polar = art.polar()?;
    let dl = art.dl_complex()?;
    let faces: Vec<&Face> = dl.faces.iter().filter(|f| !f.is_empty()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sizes = Vec::with_capacity(points);
    let mut shortcut_mismatches = Vec::new();
    for _ in 0..points {
        let f = faces[rng.gen_range(0..faces.len())];
        let a = polar.chart.to_edge(&random_relint_point(dl, f, &mut rng));
        let fam = rotated_family(art, &a)?;
        sizes.push(fam.distinct_faces());
        if !fam.shortcuts_match() {
            shortcut_mismatches.push(a);
        }
    }
    Ok(FamilySweepReport {
        points,
        expected_size: 1 << art.inst().n(),
        sizes,
        shortcut_mismatches,
    })
}
