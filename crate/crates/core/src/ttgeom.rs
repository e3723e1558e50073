//! Triangle slacks, metric and tight-triangular vectors, the normal form
//! `θ`, shortcut vectors, minimum-slack edge sets and the (flat) TT fan.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::exactcore::{Equation, Inequality, QVector, Rat};
use crate::instances::{Edge, Instance};
use crate::polyhedra::dd::cone_generators;
use crate::polyhedra::{face_lattice, Complex, Face, HRep, LinearChart, VRep};
use crate::{Error, Result};

/// A vertex `root` together with an edge `vw` not incident to it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RootedTriangle {
    pub root: usize,
    pub edge: Edge,
}

impl RootedTriangle {
    pub fn new(root: usize, v: usize, w: usize) -> Result<Self> {
        if root == v || root == w || v == w {
            return Err(Error::OutOfRange(format!(
                "{root},{v}{w} is not a rooted triangle"
            )));
        }
        Ok(RootedTriangle {
            root,
            edge: Edge::new(v, w),
        })
    }
}

impl std::fmt::Display for RootedTriangle {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{},{}", self.root + 1, self.edge)
    }
}

/// All rooted triangles, ordered by root and then by edge.
pub fn rooted_triangles(inst: &Instance) -> Vec<RootedTriangle> {
    let mut out = Vec::new();
    for u in 0..inst.n() {
        for e in inst.edges() {
            if !e.contains(u) {
                out.push(RootedTriangle { root: u, edge: *e });
            }
        }
    }
    out
}

/// `t_{u,vw}(a) = a_vu + a_uw − a_vw`.
pub fn triangle_slack(inst: &Instance, a: &QVector, t: &RootedTriangle) -> Rat {
    let Edge { lo: v, hi: w } = t.edge;
    let u = t.root;
    &(&a[inst.edge_index(v, u)] + &a[inst.edge_index(u, w)]) - &a[inst.edge_index(v, w)]
}

/// The edge-space vector `g` with `g·a = t_{u,vw}(a)`.
pub fn slack_functional(inst: &Instance, t: &RootedTriangle) -> QVector {
    shortcut(inst, t).neg()
}

/// `s_{u,vw} = χ^{vw} − χ^{vu} − χ^{uw}`.
pub fn shortcut(inst: &Instance, t: &RootedTriangle) -> QVector {
    let mut s = QVector::zeros(inst.num_edges());
    let Edge { lo: v, hi: w } = t.edge;
    s[inst.edge_index(v, w)] = Rat::one();
    s[inst.edge_index(v, t.root)] = -Rat::one();
    s[inst.edge_index(t.root, w)] = -Rat::one();
    s
}

pub fn is_metric(inst: &Instance, a: &QVector) -> bool {
    rooted_triangles(inst)
        .iter()
        .all(|t| !triangle_slack(inst, a, t).is_negative())
}

pub fn is_tt(inst: &Instance, a: &QVector) -> bool {
    is_metric(inst, a) && lambda(inst, a).is_zero()
}

/// `λ_u(a)`: the minimum slack over triangles rooted at `u`.
pub fn lambda(inst: &Instance, a: &QVector) -> QVector {
    let mut out: Vec<Option<Rat>> = vec![None; inst.n()];
    for t in rooted_triangles(inst) {
        let s = triangle_slack(inst, a, &t);
        let slot = &mut out[t.root];
        if slot.as_ref().is_none_or(|m| &s < m) {
            *slot = Some(s);
        }
    }
    out.into_iter()
        .map(|m| m.expect("n >= 3 gives every root a triangle"))
        .collect()
}

/// `θ(a) = a − Dᵀλ(a)`, the TT representative of `a + img Dᵀ`.
pub fn theta(inst: &Instance, a: &QVector) -> QVector {
    a.sub(&inst.d_transpose(&lambda(inst, a)))
}

/// `θ̃(α, a) = (α − 1·λ(a), θ(a))`.
pub fn theta_tilde(inst: &Instance, alpha: &Rat, a: &QVector) -> (Rat, QVector) {
    let lam = lambda(inst, a);
    (alpha - &lam.sum(), a.sub(&inst.d_transpose(&lam)))
}

/// TT normal form of an inequality `a·x ≥ α`, scaled to right-hand side 1
/// when that side is positive.
pub fn tt_normal_form(inst: &Instance, ineq: &Inequality) -> Inequality {
    let (alpha, a) = theta_tilde(inst, ineq.rhs(), ineq.lhs());
    Inequality::new(a, alpha)
}

/// For each root `u`, the sorted edge indices minimising the slack.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TTFingerprint(pub Vec<Vec<usize>>);

impl TTFingerprint {
    pub fn at(&self, u: usize) -> &[usize] {
        &self.0[u]
    }

    /// Triangles whose slack attains the root minimum.
    pub fn triangles(&self, inst: &Instance) -> Vec<RootedTriangle> {
        let mut out = Vec::new();
        for (u, es) in self.0.iter().enumerate() {
            for &e in es {
                out.push(RootedTriangle {
                    root: u,
                    edge: inst.edge(e),
                });
            }
        }
        out
    }
}

/// `(E^1(a), …, E^n(a))`.
pub fn e_sets(inst: &Instance, a: &QVector) -> TTFingerprint {
    let lam = lambda(inst, a);
    let mut sets = vec![Vec::new(); inst.n()];
    for t in rooted_triangles(inst) {
        if triangle_slack(inst, a, &t) == lam[t.root] {
            sets[t.root].push(inst.edge_index(t.edge.lo, t.edge.hi));
        }
    }
    for s in &mut sets {
        s.sort();
    }
    TTFingerprint(sets)
}

/// The metric cone `{a : t_{u,vw}(a) ≥ 0}` with its rays and face lattice.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MetricCone {
    pub triangles: Vec<RootedTriangle>,
    pub hrep: HRep,
    pub vrep: VRep,
    pub lattice: Complex,
}

impl MetricCone {
    pub fn new(inst: &Instance) -> Result<Self> {
        let triangles = rooted_triangles(inst);
        let rows: Vec<QVector> = triangles
            .iter()
            .map(|t| slack_functional(inst, t))
            .collect();
        let gens = cone_generators(&rows, &[], inst.num_edges());
        debug_assert!(gens.lineality.is_empty());
        let hrep = HRep::new(
            rows.into_iter()
                .map(|r| Inequality::new(r, Rat::zero()))
                .collect(),
            vec![],
        );
        let vrep = VRep::new(vec![QVector::zeros(inst.num_edges())], gens.rays);
        let lattice = face_lattice(&hrep, &vrep)?;
        Ok(MetricCone {
            triangles,
            hrep,
            vrep,
            lattice,
        })
    }

    /// Whether the triangles tight on the face meet every root.
    pub fn is_tt_face(&self, inst: &Instance, f: &Face) -> bool {
        !f.is_empty() && (0..inst.n()).all(|u| f.tight.iter().any(|&i| self.triangles[i].root == u))
    }

    pub fn tt_faces(&self, inst: &Instance) -> Vec<&Face> {
        self.lattice
            .faces
            .iter()
            .filter(|f| self.is_tt_face(inst, f))
            .collect()
    }
}

/// One cone of the TT fan, with its image in chart coordinates on `L`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TtCone {
    pub dim: i64,
    pub fingerprint: TTFingerprint,
    /// Generating rays in edge space (rays of the metric cone).
    pub rays: Vec<QVector>,
}

/// The TT fan and its orthogonal projection onto `L` (the flat TT fan).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TtFan {
    pub cones: Vec<TtCone>,
    /// The flat fan as a complex over chart coordinates: one apex point and
    /// the projected rays.
    pub flat: Complex,
}

impl TtFan {
    pub fn new(inst: &Instance, chart: &LinearChart, cone: &MetricCone) -> Self {
        let mut ray_ids: BTreeMap<QVector, usize> = BTreeMap::new();
        let mut flat_rays: Vec<QVector> = Vec::new();
        let mut cones = Vec::new();
        let mut faces = Vec::new();
        for f in cone.tt_faces(inst) {
            let rays: Vec<QVector> = f.rays.iter().map(|&i| cone.vrep.rays[i].clone()).collect();
            let mut ids: Vec<usize> = rays
                .iter()
                .map(|r| {
                    let y = chart.from_edge(&inst.project_l(r)).primitive();
                    *ray_ids.entry(y.clone()).or_insert_with(|| {
                        flat_rays.push(y);
                        flat_rays.len() - 1
                    })
                })
                .collect();
            ids.sort();
            let mut groups = vec![Vec::new(); inst.n()];
            for &i in &f.tight {
                let t = cone.triangles[i];
                groups[t.root].push(inst.edge_index(t.edge.lo, t.edge.hi));
            }
            for g in &mut groups {
                g.sort();
            }
            cones.push(TtCone {
                dim: f.dim,
                fingerprint: TTFingerprint(groups),
                rays,
            });
            faces.push(Face {
                dim: f.dim,
                points: vec![0],
                rays: ids,
                tight: vec![],
            });
        }
        faces.push(Face {
            dim: -1,
            points: vec![],
            rays: vec![],
            tight: vec![],
        });
        let flat = Complex::new(
            chart.dim(),
            vec![QVector::zeros(chart.dim())],
            flat_rays,
            faces,
        );
        TtFan { cones, flat }
    }

    pub fn cone_with(&self, fp: &TTFingerprint) -> Option<&TtCone> {
        self.cones.iter().find(|c| &c.fingerprint == fp)
    }
}

/// The flat TT fan cell containing `a ∈ L` in its relative interior.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TtFanCell {
    pub fingerprint: TTFingerprint,
    /// The TT representative `θ(a)` of the coset `a + L^⊥`.
    pub tt_point: QVector,
}

pub fn tt_fan_cell(inst: &Instance, a: &QVector) -> Result<TtFanCell> {
    if !inst.matrix_d().mul_vec(a).is_zero() {
        return Err(Error::OutsideDomain("point is not in L = ker D".into()));
    }
    Ok(TtFanCell {
        fingerprint: e_sets(inst, a),
        tt_point: theta(inst, a),
    })
}

/// Closure of the flat-fan cell with the given fingerprint, in chart
/// coordinates: slacks tie inside each `E^u` and are no smaller outside.
pub fn fingerprint_cell_hrep(inst: &Instance, chart: &LinearChart, fp: &TTFingerprint) -> HRep {
    let mut ineqs = Vec::new();
    let mut eqs = Vec::new();
    for u in 0..inst.n() {
        let set = fp.at(u);
        let Some(&first) = set.first() else { continue };
        let g0 = slack_functional(
            inst,
            &RootedTriangle {
                root: u,
                edge: inst.edge(first),
            },
        );
        for e in inst.edges() {
            if e.contains(u) {
                continue;
            }
            let idx = inst.edge_index(e.lo, e.hi);
            if idx == first {
                continue;
            }
            let g = slack_functional(inst, &RootedTriangle { root: u, edge: *e }).sub(&g0);
            let row = chart.pullback(&g);
            if set.contains(&idx) {
                eqs.push(Equation::new(row, Rat::zero()));
            } else {
                ineqs.push(Inequality::new(row, Rat::zero()));
            }
        }
    }
    HRep::new(ineqs, eqs).canonical()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn thirty_triangles_at_five() {
        let inst = Instance::new(5).unwrap();
        assert_eq!(rooted_triangles(&inst).len(), 30);
    }

    #[test]
    fn all_ones_is_metric_not_tt() {
        let inst = Instance::new(5).unwrap();
        let one = QVector::constant(10, Rat::one());
        assert!(is_metric(&inst, &one));
        assert!(!is_tt(&inst, &one));
        assert!(is_tt(&inst, &QVector::zeros(10)));
        assert_eq!(lambda(&inst, &one), QVector::constant(5, Rat::one()));
        assert!(theta(&inst, &one).is_zero());
        assert_eq!(
            theta_tilde(&inst, &Rat::from_int(5), &one),
            (Rat::zero(), QVector::zeros(10))
        );
    }

    #[test]
    fn bad_triangle_rejected() {
        assert!(RootedTriangle::new(0, 0, 1).is_err());
        assert!(RootedTriangle::new(0, 1, 1).is_err());
    }
}
