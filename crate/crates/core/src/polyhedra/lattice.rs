use std::collections::{BTreeSet, HashMap, HashSet};

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use super::rep::{dd_convert, HRep, VRep};
use crate::exactcore::{rank_of, QVector};
use crate::{Error, Result};

/// A face stored by the indices of the generators it contains.
///
/// `tight` lists the facets of the parent polyhedron containing the face;
/// it is empty for complexes that are not the face lattice of one
/// polyhedron.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Face {
    pub dim: i64,
    pub points: Vec<usize>,
    pub rays: Vec<usize>,
    pub tight: Vec<usize>,
}

impl Face {
    pub fn is_empty(&self) -> bool {
        self.dim < 0
    }

    pub fn is_bounded(&self) -> bool {
        self.rays.is_empty()
    }

    /// Generator containment; faces of a common complex are incident
    /// exactly when this holds.
    pub fn is_subface_of(&self, other: &Face) -> bool {
        is_sorted_subset(&self.points, &other.points) && is_sorted_subset(&self.rays, &other.rays)
    }

    pub fn meets(&self, other: &Face) -> bool {
        self.points
            .iter()
            .any(|p| other.points.binary_search(p).is_ok())
    }

    pub fn key(&self) -> (Vec<usize>, Vec<usize>) {
        (self.points.clone(), self.rays.clone())
    }
}

pub(crate) fn is_sorted_subset(a: &[usize], b: &[usize]) -> bool {
    let mut j = 0;
    for x in a {
        while j < b.len() && b[j] < *x {
            j += 1;
        }
        if j == b.len() || b[j] != *x {
            return false;
        }
        j += 1;
    }
    true
}

/// A finite polyhedral complex over a shared list of generators.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Complex {
    pub ambient: usize,
    pub points: Vec<QVector>,
    pub rays: Vec<QVector>,
    /// Sorted by dimension, then generators; always contains the empty face.
    pub faces: Vec<Face>,
}

impl Complex {
    pub fn new(
        ambient: usize,
        points: Vec<QVector>,
        rays: Vec<QVector>,
        mut faces: Vec<Face>,
    ) -> Self {
        faces.sort();
        faces.dedup_by(|a, b| a.points == b.points && a.rays == b.rays);
        Complex {
            ambient,
            points,
            rays,
            faces,
        }
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn dim(&self) -> i64 {
        self.faces.iter().map(|f| f.dim).max().unwrap_or(-1)
    }

    pub fn faces_of_dim(&self, d: i64) -> impl Iterator<Item = &Face> {
        self.faces.iter().filter(move |f| f.dim == d)
    }

    /// Number of faces of each dimension `0..=dim`.
    pub fn f_vector(&self) -> Vec<usize> {
        let top = self.dim();
        (0..=top).map(|d| self.faces_of_dim(d).count()).collect()
    }

    pub fn find(&self, points: &[usize], rays: &[usize]) -> Option<usize> {
        self.faces
            .iter()
            .position(|f| f.points == points && f.rays == rays)
    }

    /// Faces not strictly contained in another face.
    pub fn maximal_faces(&self) -> Vec<&Face> {
        self.faces
            .iter()
            .filter(|f| !f.is_empty())
            .filter(|f| {
                !self
                    .faces
                    .iter()
                    .any(|g| g.dim > f.dim && f.is_subface_of(g))
            })
            .collect()
    }

    /// Vertex positions of the face.
    pub fn face_points(&self, f: &Face) -> Vec<QVector> {
        f.points.iter().map(|&i| self.points[i].clone()).collect()
    }

    pub fn face_vrep(&self, f: &Face) -> VRep {
        VRep::new(
            self.face_points(f),
            f.rays.iter().map(|&i| self.rays[i].clone()).collect(),
        )
    }

    /// Barycentre of the face's vertices plus the sum of its rays: a point of
    /// the relative interior.
    pub fn relint_point(&self, f: &Face) -> QVector {
        let mut c = QVector::mean(&self.face_points(f));
        for &r in &f.rays {
            c = c.add(&self.rays[r]);
        }
        c
    }

    pub fn vertex_index(&self, x: &QVector) -> Option<usize> {
        self.points.iter().position(|p| p == x)
    }

    /// Euler characteristic over nonempty faces satisfying `keep`.
    pub fn euler_characteristic(&self, keep: impl Fn(&Face) -> bool) -> i64 {
        self.faces
            .iter()
            .filter(|f| !f.is_empty() && keep(f))
            .map(|f| if f.dim % 2 == 0 { 1 } else { -1 })
            .sum()
    }
}

/// Exact dimension of `conv(points) + cone(rays)`.
pub fn affine_dim(points: &[QVector], rays: &[QVector]) -> i64 {
    let Some(p0) = points.first() else { return -1 };
    let mut dirs: Vec<QVector> = points[1..].iter().map(|p| p.sub(p0)).collect();
    dirs.extend(rays.iter().cloned());
    rank_of(&dirs, p0.len()) as i64
}

/// Every face of the polyhedron described by both `h` and `v`.
///
/// Faces are closures of generator sets under intersection with facet
/// incidence sets; a set without points is the empty face.
pub fn face_lattice(h: &HRep, v: &VRep) -> Result<Complex> {
    let Some(d) = v.dim_ambient() else {
        return Err(Error::EmptyInput("face lattice of an empty polyhedron"));
    };
    for p in &v.points {
        if !h.contains(p) {
            return Err(Error::Inconsistent(format!(
                "point {p} violates the H-representation"
            )));
        }
    }
    for r in &v.rays {
        if !h.recedes(r) {
            return Err(Error::Inconsistent(format!(
                "ray {r} is not a recession direction"
            )));
        }
    }
    let np = v.points.len();
    let nr = v.rays.len();
    let ng = np + nr;
    // Incidence of facet i with generator j (points first, then rays).
    let mut incidence: Vec<FixedBitSet> = Vec::with_capacity(h.inequalities.len());
    for ineq in &h.inequalities {
        let mut s = FixedBitSet::with_capacity(ng);
        for (j, p) in v.points.iter().enumerate() {
            if ineq.is_tight(p) {
                s.insert(j);
            }
        }
        for (j, r) in v.rays.iter().enumerate() {
            if ineq.lhs().dot(r).is_zero() {
                s.insert(np + j);
            }
        }
        incidence.push(s);
    }
    let facet_count = incidence.len();
    let tight_of = |g: &FixedBitSet| -> Vec<usize> {
        (0..facet_count)
            .filter(|&i| g.is_subset(&incidence[i]))
            .collect()
    };

    // Enumerate closed sets on the smaller side of the incidence relation.
    let found: Vec<FixedBitSet> = if facet_count <= ng {
        closed_sets(&incidence, ng)
    } else {
        let mut by_generator: Vec<FixedBitSet> = (0..ng)
            .map(|_| FixedBitSet::with_capacity(facet_count))
            .collect();
        for (i, inc) in incidence.iter().enumerate() {
            for j in inc.ones() {
                by_generator[j].insert(i);
            }
        }
        closed_sets(&by_generator, facet_count)
            .into_iter()
            .map(|t| {
                let mut g = FixedBitSet::with_capacity(ng);
                for (j, fj) in by_generator.iter().enumerate() {
                    if t.is_subset(fj) {
                        g.insert(j);
                    }
                }
                g
            })
            .collect()
    };
    let found: Vec<FixedBitSet> = found
        .into_iter()
        .filter(|g| g.ones().next().is_some_and(|j| j < np))
        .collect();
    let mut faces: Vec<Face> = found
        .iter()
        .map(|g| {
            let points: Vec<usize> = g.ones().filter(|&j| j < np).collect();
            let rays: Vec<usize> = g.ones().filter(|&j| j >= np).map(|j| j - np).collect();
            let pts: Vec<QVector> = points.iter().map(|&i| v.points[i].clone()).collect();
            let rs: Vec<QVector> = rays.iter().map(|&i| v.rays[i].clone()).collect();
            Face {
                dim: affine_dim(&pts, &rs),
                points,
                rays,
                tight: tight_of(g),
            }
        })
        .collect();
    faces.push(Face {
        dim: -1,
        points: vec![],
        rays: vec![],
        tight: (0..facet_count).collect(),
    });
    Ok(Complex::new(d, v.points.clone(), v.rays.clone(), faces))
}

/// Face lattice from a V-representation alone.
pub fn face_lattice_of(v: &VRep) -> Result<(HRep, Complex)> {
    let h = dd_convert(v)?;
    let c = face_lattice(&h, v)?;
    Ok((h, c))
}

/// All sets `∩_{y ∈ Y'} rows[y]` for `Y' ⊆ Y`, including the full set, found
/// by repeated intersection with one row at a time followed by closure.
fn closed_sets(rows: &[FixedBitSet], width: usize) -> Vec<FixedBitSet> {
    let closure = |s: &FixedBitSet| -> FixedBitSet {
        let mut c = FixedBitSet::with_capacity(width);
        c.insert_range(..);
        for r in rows {
            if s.is_subset(r) {
                c.intersect_with(r);
            }
        }
        c
    };
    let mut full = FixedBitSet::with_capacity(width);
    full.insert_range(..);
    let mut seen: HashSet<FixedBitSet> = HashSet::new();
    seen.insert(full.clone());
    let mut stack = vec![full];
    let mut out = Vec::new();
    while let Some(g) = stack.pop() {
        let mut local: HashSet<FixedBitSet> = HashSet::new();
        for r in rows {
            if g.is_subset(r) {
                continue;
            }
            let mut next = g.clone();
            next.intersect_with(r);
            if local.insert(next.clone()) {
                let c = closure(&next);
                if seen.insert(c.clone()) {
                    stack.push(c);
                }
            }
        }
        out.push(g);
    }
    out
}

/// Faces without rays.
pub fn bounded_subcomplex(c: &Complex) -> Complex {
    let faces = c.faces.iter().filter(|f| f.is_bounded()).cloned().collect();
    Complex::new(c.ambient, c.points.clone(), c.rays.clone(), faces)
}

/// Faces disjoint from every face in `removed`.
pub fn deletion(c: &Complex, removed: &[Face]) -> Complex {
    let faces = c
        .faces
        .iter()
        .filter(|f| removed.iter().all(|g| !f.meets(g)))
        .cloned()
        .collect();
    Complex::new(c.ambient, c.points.clone(), c.rays.clone(), faces)
}

/// Vertices and edges of the complex, as point-index pairs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Skeleton {
    pub vertices: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
}

impl Skeleton {
    pub fn is_connected(&self) -> bool {
        let Some(&start) = self.vertices.first() else {
            return true;
        };
        let mut adj: HashMap<usize, Vec<usize>> = HashMap::new();
        for &(a, b) in &self.edges {
            adj.entry(a).or_default().push(b);
            adj.entry(b).or_default().push(a);
        }
        let mut seen = BTreeSet::from([start]);
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for &w in adj.get(&v).into_iter().flatten() {
                if seen.insert(w) {
                    stack.push(w);
                }
            }
        }
        seen.len() == self.vertices.len()
    }
}

/// The 1-skeleton: bounded edges only (faces of dimension 1 with two points).
pub fn skeleton(c: &Complex) -> Skeleton {
    let vertices = c.faces_of_dim(0).map(|f| f.points[0]).collect();
    let edges = c
        .faces_of_dim(1)
        .filter(|f| f.points.len() == 2 && f.rays.is_empty())
        .map(|f| (f.points[0], f.points[1]))
        .collect();
    Skeleton { vertices, edges }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactcore::Rat;

    fn square() -> VRep {
        VRep::polytope(vec![
            QVector::from_ints(&[0, 0]),
            QVector::from_ints(&[0, 1]),
            QVector::from_ints(&[1, 0]),
            QVector::from_ints(&[1, 1]),
        ])
    }

    #[test]
    fn segment_lattice() {
        let v = VRep::polytope(vec![QVector::from_ints(&[0]), QVector::from_ints(&[1])]);
        let (_, c) = face_lattice_of(&v).unwrap();
        assert_eq!(c.f_vector(), vec![2, 1]);
        assert_eq!(c.len(), 4);
    }

    #[test]
    fn square_skeleton_is_four_cycle() {
        let (_, c) = face_lattice_of(&square()).unwrap();
        let s = skeleton(&c);
        assert_eq!(s.vertices.len(), 4);
        assert_eq!(s.edges.len(), 4);
        assert!(s.is_connected());
        assert_eq!(c.euler_characteristic(|f| f.dim < 2), 0);
    }

    #[test]
    fn cone_bounded_part_is_apex() {
        let v = VRep::new(
            vec![QVector::zeros(2)],
            vec![QVector::from_ints(&[1, 0]), QVector::from_ints(&[1, 1])],
        );
        let (_, c) = face_lattice_of(&v).unwrap();
        let b = bounded_subcomplex(&c);
        assert_eq!(b.faces.iter().filter(|f| !f.is_empty()).count(), 1);
        assert_eq!(deletion(&c, &[]), c);
    }

    #[test]
    fn inconsistent_pair_rejected() {
        let h = dd_convert(&square()).unwrap();
        let v = VRep::polytope(vec![QVector::new(vec![Rat::from_int(2), Rat::zero()])]);
        assert!(face_lattice(&h, &v).is_err());
    }
}
