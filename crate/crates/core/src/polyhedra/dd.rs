//! Double description method for polyhedral cones.
//!
//! Computes generators of `{y : A y ≥ 0, E y = 0}`: a lineality basis plus
//! one primitive integer vector per extreme ray of the pointed part. Rows of
//! `A` are inserted in the order given; the adjacency test is combinatorial.

use fixedbitset::FixedBitSet;

use crate::exactcore::{rank_of, QMatrix, QVector, Rat};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeGenerators {
    /// Extreme rays of the cone intersected with the orthogonal complement
    /// of its lineality space, primitive and sorted.
    pub rays: Vec<QVector>,
    pub lineality: Vec<QVector>,
}

struct Ray {
    v: QVector,
    zeros: FixedBitSet,
}

/// Generators of `{y ∈ Q^d : ineqs·y ≥ 0, eqs·y = 0}`.
pub fn cone_generators(ineqs: &[QVector], eqs: &[QVector], d: usize) -> ConeGenerators {
    let m = ineqs.len();
    let mut all: Vec<QVector> = eqs.to_vec();
    all.extend_from_slice(ineqs);
    let lineality = QMatrix::from_rows(all, d).kernel_basis().into_rows();

    // Pick inequality rows independent modulo the equations.
    let eq_rank = rank_of(eqs, d);
    let mut basis_rows: Vec<QVector> = eqs.to_vec();
    let mut chosen: Vec<usize> = Vec::new();
    let mut rank = eq_rank;
    for (i, a) in ineqs.iter().enumerate() {
        basis_rows.push(a.clone());
        let r = rank_of(&basis_rows, d);
        if r > rank {
            rank = r;
            chosen.push(i);
        } else {
            basis_rows.pop();
        }
    }
    let pointed_dim = chosen.len();
    if pointed_dim == 0 {
        return ConeGenerators {
            rays: Vec::new(),
            lineality,
        };
    }

    // Independent equation rows, then chosen inequalities, then lineality:
    // together a basis of Q^d, so the matrix is invertible.
    let mut eq_indep: Vec<QVector> = Vec::new();
    for e in eqs {
        eq_indep.push(e.clone());
        if rank_of(&eq_indep, d) < eq_indep.len() {
            eq_indep.pop();
        }
    }
    let mut square: Vec<QVector> = chosen.iter().map(|&i| ineqs[i].clone()).collect();
    square.extend(eq_indep.iter().cloned());
    square.extend(lineality.iter().cloned());
    let inv = QMatrix::from_rows(square, d)
        .inverse()
        .expect("basis rows are independent");

    let mut processed = FixedBitSet::with_capacity(m);
    for &i in &chosen {
        processed.insert(i);
    }
    let mut rays: Vec<Ray> = (0..pointed_dim)
        .map(|k| {
            let v: QVector = (0..d)
                .map(|r| inv.get(r, k).clone())
                .collect::<QVector>()
                .primitive();
            let mut zeros = FixedBitSet::with_capacity(m);
            for (kk, &i) in chosen.iter().enumerate() {
                if kk != k {
                    zeros.insert(i);
                }
            }
            Ray { v, zeros }
        })
        .collect();

    for (i, a) in ineqs.iter().enumerate() {
        if processed.contains(i) {
            continue;
        }
        processed.insert(i);
        let vals: Vec<Rat> = rays.iter().map(|r| a.dot(&r.v)).collect();
        if vals.iter().all(|v| !v.is_negative()) {
            for (r, v) in rays.iter_mut().zip(&vals) {
                if v.is_zero() {
                    r.zeros.insert(i);
                }
            }
            continue;
        }
        let pos: Vec<usize> = (0..rays.len()).filter(|&k| vals[k].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&k| vals[k].is_negative()).collect();
        let mut new_rays: Vec<Ray> = Vec::new();
        for &p in &pos {
            for &q in &neg {
                let mut common = rays[p].zeros.clone();
                common.intersect_with(&rays[q].zeros);
                if common.count_ones(..) + 2 < pointed_dim {
                    continue;
                }
                let adjacent = rays
                    .iter()
                    .enumerate()
                    .all(|(k, r)| k == p || k == q || !common.is_subset(&r.zeros));
                if !adjacent {
                    continue;
                }
                let v = rays[q]
                    .v
                    .scale(&vals[p])
                    .sub(&rays[p].v.scale(&vals[q]))
                    .primitive();
                let mut zeros = common;
                zeros.insert(i);
                new_rays.push(Ray { v, zeros });
            }
        }
        let mut kept: Vec<Ray> = Vec::with_capacity(rays.len() + new_rays.len());
        for (k, mut r) in rays.into_iter().enumerate() {
            if vals[k].is_negative() {
                continue;
            }
            if vals[k].is_zero() {
                r.zeros.insert(i);
            }
            kept.push(r);
        }
        kept.extend(new_rays);
        rays = kept;
    }

    let mut out: Vec<QVector> = rays.into_iter().map(|r| r.v).collect();
    out.sort();
    out.dedup();
    ConeGenerators {
        rays: out,
        lineality,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orthant_rays() {
        let rows: Vec<QVector> = (0..3).map(|i| QVector::unit(3, i)).collect();
        let g = cone_generators(&rows, &[], 3);
        assert_eq!(g.rays.len(), 3);
        assert!(g.lineality.is_empty());
    }

    #[test]
    fn cone_over_square() {
        // y = (x1, x2, t): 0 ≤ x_i ≤ t.
        let rows = vec![
            QVector::from_ints(&[1, 0, 0]),
            QVector::from_ints(&[0, 1, 0]),
            QVector::from_ints(&[-1, 0, 1]),
            QVector::from_ints(&[0, -1, 1]),
        ];
        let g = cone_generators(&rows, &[], 3);
        assert_eq!(g.rays.len(), 4);
    }

    #[test]
    fn half_space_has_lineality() {
        let g = cone_generators(&[QVector::from_ints(&[1, 0, 0])], &[], 3);
        assert_eq!(g.rays, vec![QVector::from_ints(&[1, 0, 0])]);
        assert_eq!(g.lineality.len(), 2);
    }

    #[test]
    fn with_equation() {
        // x ≥ 0, y ≥ 0, z ≥ 0, x + y − z = 0.
        let rows: Vec<QVector> = (0..3).map(|i| QVector::unit(3, i)).collect();
        let g = cone_generators(&rows, &[QVector::from_ints(&[1, 1, -1])], 3);
        assert_eq!(
            g.rays,
            vec![
                QVector::from_ints(&[0, 1, 1]),
                QVector::from_ints(&[1, 0, 1])
            ]
        );
    }
}
