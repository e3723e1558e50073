//! Vertex and edge indexing of the complete graph `K_n` and the vectors and
//! inequality families defined on its edge space.
//!
//! Vertices are `0..n` internally; JSON output and `Display` use the labels
//! `1..=n`. Edges `{i, j}` with `i < j` are ordered lexicographically.

use std::collections::{BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use crate::exactcore::{Inequality, LinearProgram, LpStatus, QMatrix, QVector, Rat};
use crate::{Error, Result};

/// An undirected edge `{lo, hi}` with `lo < hi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Edge {
    pub lo: usize,
    pub hi: usize,
}

impl Edge {
    pub fn new(a: usize, b: usize) -> Self {
        assert_ne!(a, b, "loops are not edges");
        Edge {
            lo: a.min(b),
            hi: a.max(b),
        }
    }

    pub fn contains(&self, v: usize) -> bool {
        self.lo == v || self.hi == v
    }

    pub fn other(&self, v: usize) -> usize {
        if self.lo == v {
            self.hi
        } else {
            self.lo
        }
    }
}

impl std::fmt::Display for Edge {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}{}", self.lo + 1, self.hi + 1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    n: usize,
    edges: Vec<Edge>,
}

impl Instance {
    pub fn new(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidInstance(format!("need n >= 3, got {n}")));
        }
        let mut edges = Vec::with_capacity(n * (n - 1) / 2);
        for i in 0..n {
            for j in i + 1..n {
                edges.push(Edge { lo: i, hi: j });
            }
        }
        Ok(Instance { n, edges })
    }

    /// Rejects instances too small for facet-level statements about cycles.
    pub fn require_at_least(&self, min: usize) -> Result<()> {
        if self.n < min {
            return Err(Error::InvalidInstance(format!(
                "this operation needs n >= {min}, got {}",
                self.n
            )));
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, idx: usize) -> Edge {
        self.edges[idx]
    }

    /// Position of `{a, b}` in the lexicographic edge order.
    pub fn edge_index(&self, a: usize, b: usize) -> usize {
        assert!(a != b && a < self.n && b < self.n, "bad edge {a}-{b}");
        let (i, j) = (a.min(b), a.max(b));
        i * (2 * self.n - i - 1) / 2 + (j - i - 1)
    }

    pub fn dim_symmetric(&self) -> usize {
        self.num_edges() - self.n
    }

    fn check_vertex(&self, u: usize) -> Result<()> {
        if u >= self.n {
            return Err(Error::OutOfRange(format!(
                "vertex {u} not in 0..{}",
                self.n
            )));
        }
        Ok(())
    }

    pub fn edge_vector(&self, pairs: &[(usize, usize)]) -> QVector {
        let mut v = QVector::zeros(self.num_edges());
        for &(a, b) in pairs {
            let i = self.edge_index(a, b);
            v[i] = &v[i] + &Rat::one();
        }
        v
    }

    /// Incidence vectors of all Hamiltonian cycles, sorted lexicographically.
    pub fn hamiltonian_cycles(&self) -> Vec<QVector> {
        let n = self.n;
        let mut out = Vec::new();
        let mut perm: Vec<usize> = (1..n).collect();
        // Fix vertex 0 first; keep one of each pair of mirror orders.
        loop {
            if perm[0] < perm[n - 2] {
                let mut v = QVector::zeros(self.num_edges());
                let mut prev = 0;
                for &w in &perm {
                    v[self.edge_index(prev, w)] = Rat::one();
                    prev = w;
                }
                v[self.edge_index(prev, 0)] = Rat::one();
                out.push(v);
            }
            if !next_permutation(&mut perm) {
                break;
            }
        }
        out.sort();
        out
    }

    /// Vertex degrees of an edge-multiplicity vector.
    pub fn degrees(&self, x: &[u8]) -> Vec<u32> {
        let mut deg = vec![0u32; self.n];
        for (e, &m) in self.edges.iter().zip(x) {
            deg[e.lo] += m as u32;
            deg[e.hi] += m as u32;
        }
        deg
    }

    /// Whether the support of `x` is connected and spans all vertices.
    pub fn is_connected_support(&self, x: &[u8]) -> bool {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(p: &mut [usize], mut v: usize) -> usize {
            while p[v] != v {
                p[v] = p[p[v]];
                v = p[v];
            }
            v
        }
        let mut comps = self.n;
        for (e, &m) in self.edges.iter().zip(x) {
            if m > 0 {
                let (a, b) = (find(&mut parent, e.lo), find(&mut parent, e.hi));
                if a != b {
                    parent[a] = b;
                    comps -= 1;
                }
            }
        }
        comps == 1
    }

    pub fn is_eulerian_connected(&self, x: &[u8]) -> bool {
        self.degrees(x).iter().all(|d| d % 2 == 0) && self.is_connected_support(x)
    }

    /// All connected Eulerian multiplicity vectors with entries in `{0,1,2}`.
    pub fn eulerian_candidates(&self) -> Vec<Vec<u8>> {
        let m = self.num_edges();
        let mut x = vec![0u8; m];
        let mut out = Vec::new();
        loop {
            if self.is_eulerian_connected(&x) {
                out.push(x.clone());
            }
            let mut i = 0;
            while i < m && x[i] == 2 {
                x[i] = 0;
                i += 1;
            }
            if i == m {
                break;
            }
            x[i] += 1;
        }
        out
    }

    /// Vertices of the graphical TSP polyhedron, sorted lexicographically.
    ///
    /// Candidates dominated coordinatewise by another candidate are dropped
    /// first; the remaining ones are tested for extremality by an exact LP
    /// asking whether `x ∈ conv(others) + R_+^E`.
    pub fn gtsp_vertices(&self) -> Vec<QVector> {
        let cands = self.eulerian_candidates();
        let cycles = self.closed_walk_supports();
        let minimal: Vec<&Vec<u8>> = cands
            .iter()
            .filter(|x| !self.is_dominated(x, &cycles))
            .collect();
        let vecs: Vec<QVector> = minimal
            .iter()
            .map(|x| x.iter().map(|&m| Rat::from_int(m as i64)).collect())
            .collect();
        let mut out: Vec<QVector> = (0..vecs.len())
            .filter(|&i| {
                let others: Vec<&QVector> = vecs
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| *j != i)
                    .map(|(_, v)| v)
                    .collect();
                !in_conv_plus_orthant(&vecs[i], &others)
            })
            .map(|i| vecs[i].clone())
            .collect();
        out.sort();
        out
    }

    /// Multiplicity vectors of all simple cycles of `K_n` and of all doubled
    /// edges: every non-zero even-degree multigraph contains one of them.
    fn closed_walk_supports(&self) -> Vec<Vec<u8>> {
        let m = self.num_edges();
        let mut out = Vec::new();
        for e in 0..m {
            let mut v = vec![0u8; m];
            v[e] = 2;
            out.push(v);
        }
        for mask in 0u32..(1 << self.n) {
            let verts: Vec<usize> = (0..self.n).filter(|v| mask >> v & 1 == 1).collect();
            if verts.len() < 3 {
                continue;
            }
            let (first, rest) = (verts[0], &verts[1..]);
            let mut perm = rest.to_vec();
            loop {
                if perm[0] < perm[perm.len() - 1] {
                    let mut v = vec![0u8; m];
                    let mut prev = first;
                    for &w in &perm {
                        v[self.edge_index(prev, w)] = 1;
                        prev = w;
                    }
                    v[self.edge_index(prev, first)] = 1;
                    out.push(v);
                }
                if !next_permutation(&mut perm) {
                    break;
                }
            }
        }
        out
    }

    /// `x` dominates another candidate iff removing some cycle (or doubled
    /// edge) below `x` keeps the support connected.
    fn is_dominated(&self, x: &[u8], cycles: &[Vec<u8>]) -> bool {
        cycles.iter().any(|c| {
            if c.iter().zip(x).any(|(a, b)| a > b) {
                return false;
            }
            let y: Vec<u8> = x.iter().zip(c).map(|(a, b)| a - b).collect();
            self.is_connected_support(&y)
        })
    }

    /// `δ_u`: one half on every edge at `u`.
    pub fn delta(&self, u: usize) -> Result<QVector> {
        self.check_vertex(u)?;
        Ok(self.delta_unchecked(u))
    }

    fn delta_unchecked(&self, u: usize) -> QVector {
        self.edges
            .iter()
            .map(|e| {
                if e.contains(u) {
                    Rat::new(1, 2)
                } else {
                    Rat::zero()
                }
            })
            .collect()
    }

    /// The `n × |E|` matrix whose rows are the `δ_u`.
    pub fn matrix_d(&self) -> QMatrix {
        QMatrix::from_rows(
            (0..self.n).map(|u| self.delta_unchecked(u)).collect(),
            self.num_edges(),
        )
    }

    /// `Dᵀξ` for a vertex-space vector `ξ`.
    pub fn d_transpose(&self, xi: &QVector) -> QVector {
        assert_eq!(xi.len(), self.n);
        let half = Rat::new(1, 2);
        self.edges
            .iter()
            .map(|e| &(&xi[e.lo] + &xi[e.hi]) * &half)
            .collect()
    }

    /// The barycentre `2/(n-1)·1` of the cycle vectors.
    pub fn point_z(&self) -> QVector {
        QVector::constant(self.num_edges(), Rat::new(2, self.n as i64 - 1))
    }

    /// Orthogonal projection onto `L = ker D`.
    ///
    /// `DDᵀ = ((n-2)I + J)/4`, so `(DDᵀ)⁻¹y = 4/(n-2)·(y − (1·y)/(2n-2)·1)`.
    pub fn project_l(&self, a: &QVector) -> QVector {
        let n = self.n as i64;
        let da = self.matrix_d().mul_vec(a);
        let shift = &da.sum() / &Rat::from_int(2 * n - 2);
        let factor = Rat::new(4, n - 2);
        let xi: QVector = da.iter().map(|v| &(v - &shift) * &factor).collect();
        a.sub(&self.d_transpose(&xi))
    }

    /// `Σ_{|e ∩ S| = 1} x_e ≥ 2`.
    pub fn subtour_inequality(&self, set: &[usize]) -> Result<Inequality> {
        let s: BTreeSet<usize> = set.iter().copied().collect();
        if let Some(&bad) = s.iter().find(|&&v| v >= self.n) {
            return Err(Error::OutOfRange(format!(
                "vertex {bad} not in 0..{}",
                self.n
            )));
        }
        if s.len() < 2 || s.len() + 2 > self.n {
            return Err(Error::OutOfRange(format!(
                "subtour set size {} outside [2, n-2]",
                s.len()
            )));
        }
        Ok(Inequality::new(self.cut_vector(&s), Rat::from_int(2)))
    }

    pub fn cut_vector(&self, s: &BTreeSet<usize>) -> QVector {
        self.edges
            .iter()
            .map(|e| {
                if s.contains(&e.lo) != s.contains(&e.hi) {
                    Rat::one()
                } else {
                    Rat::zero()
                }
            })
            .collect()
    }

    /// All distinct subtour inequalities, one per cut, in canonical order.
    pub fn all_subtour_inequalities(&self) -> Vec<Inequality> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for mask in 0u64..(1 << self.n) {
            let set: Vec<usize> = (0..self.n).filter(|v| mask >> v & 1 == 1).collect();
            if set.len() < 2 || set.len() + 2 > self.n {
                continue;
            }
            let ineq = self.subtour_inequality(&set).expect("size checked");
            if seen.insert(ineq.clone()) {
                out.push(ineq);
            }
        }
        out.sort();
        out
    }

    /// `δ_u·x ≥ 1`.
    pub fn degree_inequality(&self, u: usize) -> Result<Inequality> {
        Ok(Inequality::new(self.delta(u)?, Rat::one()))
    }

    /// `x_e ≥ 0`.
    pub fn nonneg_inequality(&self, e: usize) -> Result<Inequality> {
        if e >= self.num_edges() {
            return Err(Error::OutOfRange(format!(
                "edge index {e} not in 0..{}",
                self.num_edges()
            )));
        }
        Ok(Inequality::new(
            QVector::unit(self.num_edges(), e),
            Rat::zero(),
        ))
    }

    /// Applies a vertex permutation to an edge-space vector.
    pub fn permute_edges(&self, x: &QVector, perm: &[usize]) -> QVector {
        let mut out = QVector::zeros(self.num_edges());
        for (i, e) in self.edges.iter().enumerate() {
            out[self.edge_index(perm[e.lo], perm[e.hi])] = x[i].clone();
        }
        out
    }

    pub fn export(&self, vectors: &[QVector]) -> InstanceExport {
        InstanceExport {
            n: self.n,
            edges: self.edges.iter().map(|e| [e.lo + 1, e.hi + 1]).collect(),
            vectors: vectors.to_vec(),
        }
    }
}

/// JSON layout `{"n", "edges", "vectors"}` with 1-based edge labels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceExport {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    pub vectors: Vec<QVector>,
}

/// Whether `x ∈ conv(points) + R_+^d`, decided by an exact LP.
pub fn in_conv_plus_orthant(x: &QVector, points: &[&QVector]) -> bool {
    if points.is_empty() {
        return false;
    }
    let d = x.len();
    // Variables: convex weights λ ≥ 0. Constraint Σλ_i p_i ≤ x, Σλ = 1.
    let k = points.len();
    let mut lp = LinearProgram::new(QVector::zeros(k)).all_nonneg();
    for coord in 0..d {
        let row: QVector = points.iter().map(|p| -&p[coord]).collect();
        lp = lp.ge(row, -&x[coord]);
    }
    lp = lp.eq(QVector::constant(k, Rat::one()), Rat::one());
    lp.solve().status == LpStatus::Optimal
}

pub fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_index_is_lexicographic() {
        let inst = Instance::new(6).unwrap();
        for (k, e) in inst.edges().iter().enumerate() {
            assert_eq!(inst.edge_index(e.lo, e.hi), k);
            assert_eq!(inst.edge_index(e.hi, e.lo), k);
        }
    }

    #[test]
    fn cycle_counts() {
        assert_eq!(Instance::new(3).unwrap().hamiltonian_cycles().len(), 1);
        assert_eq!(Instance::new(4).unwrap().hamiltonian_cycles().len(), 3);
        assert_eq!(Instance::new(5).unwrap().hamiltonian_cycles().len(), 12);
    }

    #[test]
    fn projection_formula_matches_generic() {
        let inst = Instance::new(5).unwrap();
        let a: QVector = (0..10).map(|i| Rat::new(i * i - 3, 7)).collect();
        assert_eq!(inst.project_l(&a), inst.matrix_d().project_onto_kernel(&a));
    }

    #[test]
    fn rejects_small_n() {
        assert!(Instance::new(2).is_err());
        let inst = Instance::new(5).unwrap();
        assert!(inst.subtour_inequality(&[0]).is_err());
        assert!(inst.subtour_inequality(&[0, 1, 2, 3]).is_err());
        assert!(inst.delta(5).is_err());
    }

    #[test]
    fn gtsp_small() {
        let inst = Instance::new(5).unwrap();
        let t = std::time::Instant::now();
        let v = inst.gtsp_vertices();
        eprintln!("P_5 vertices: {} in {:?}", v.len(), t.elapsed());
        for c in inst.hamiltonian_cycles() {
            assert!(v.contains(&c));
        }
    }
}
