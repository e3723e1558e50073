//! Test-side oracles, written independently of the library's algorithms.
#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::BTreeSet;

use tspoly::exactcore::{rank_of, Inequality, QMatrix, QVector, Rat};
use tspoly::instances::Instance;

/// `(n-1)!/2`.
pub fn tour_count(n: usize) -> usize {
    (1..n).product::<usize>() / 2
}

/// Tours by explicit permutation enumeration with vertex 0 fixed first
/// and the second vertex smaller than the last one.
pub fn tours_by_permutation(inst: &Instance) -> BTreeSet<QVector> {
    let n = inst.n();
    let mut rest: Vec<usize> = (1..n).collect();
    let mut out = BTreeSet::new();
    permute(&mut rest, 0, &mut |p| {
        if p[0] < p[p.len() - 1] {
            let mut x = vec![0i64; inst.num_edges()];
            let mut prev = 0;
            for &v in p.iter().chain(std::iter::once(&0)) {
                x[inst.edge_index(prev, v)] += 1;
                prev = v;
            }
            out.insert(QVector::from_ints(&x));
        }
    });
    out
}

fn permute(v: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == v.len() {
        f(v);
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permute(v, k + 1, f);
        v.swap(k, i);
    }
}

/// All `x ∈ {0,..,cap}^E` whose support is connected and spanning with even
/// degrees, by plain enumeration and depth-first search.
pub fn eulerian_brute_force(inst: &Instance, cap: i64) -> Vec<QVector> {
    let n = inst.n();
    let m = inst.num_edges();
    let mut out = Vec::new();
    let mut x = vec![0i64; m];
    loop {
        let mut deg = vec![0i64; n];
        for (i, e) in inst.edges().iter().enumerate() {
            deg[e.lo] += x[i];
            deg[e.hi] += x[i];
        }
        if deg.iter().all(|d| *d > 0 && d % 2 == 0) {
            let mut seen = vec![false; n];
            let mut stack = vec![0];
            seen[0] = true;
            while let Some(v) = stack.pop() {
                for (i, e) in inst.edges().iter().enumerate() {
                    if x[i] > 0 && e.contains(v) {
                        let w = e.other(v);
                        if !seen[w] {
                            seen[w] = true;
                            stack.push(w);
                        }
                    }
                }
            }
            if seen.iter().all(|s| *s) {
                out.push(QVector::from_ints(&x));
            }
        }
        let mut i = 0;
        while i < m && x[i] == cap {
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

/// Facets of `conv(points)` by Fourier–Motzkin elimination of the convex
/// multipliers, with Chernikov's rule and a final rank filter.
///
/// Returned inequalities are reduced with `reduce` (e.g. a projection onto the
/// direction space) so that both sides can be compared as sets.
pub fn fourier_motzkin_facets(
    points: &[QVector],
    reduce: impl Fn(&Inequality) -> Inequality,
) -> BTreeSet<Inequality> {
    let d = points[0].len();
    let k = points.len();
    // Rows of `M λ = (x, 1)`, written as affine maps of x: columns x (d) then constant.
    let mut rows: Vec<(Vec<Rat>, Vec<Rat>)> = Vec::new();
    for i in 0..d {
        let lam: Vec<Rat> = points.iter().map(|p| p[i].clone()).collect();
        let mut rhs = vec![Rat::zero(); d + 1];
        rhs[i] = Rat::one();
        rows.push((lam, rhs));
    }
    rows.push((vec![Rat::one(); k], {
        let mut r = vec![Rat::zero(); d + 1];
        r[d] = Rat::one();
        r
    }));
    // Gauss-Jordan on the λ-columns.
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut r = 0;
    for c in 0..k {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i].0[c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r].0[c].recip();
        let (l, h) = (&rows[r].0, &rows[r].1);
        let pivot = (
            l.iter().map(|v| v * &inv).collect::<Vec<_>>(),
            h.iter().map(|v| v * &inv).collect::<Vec<_>>(),
        );
        rows[r] = pivot.clone();
        for i in 0..rows.len() {
            if i != r && !rows[i].0[c].is_zero() {
                let f = rows[i].0[c].clone();
                for j in 0..k {
                    rows[i].0[j] = &rows[i].0[j] - &(&f * &pivot.0[j]);
                }
                for j in 0..=d {
                    rows[i].1[j] = &rows[i].1[j] - &(&f * &pivot.1[j]);
                }
            }
        }
        pivots.push((r, c));
        r += 1;
    }
    let free: Vec<usize> = (0..k)
        .filter(|c| pivots.iter().all(|&(_, pc)| pc != *c))
        .collect();
    // Inequalities g·(x,1) + h·λ_free ≥ 0 with history sets.
    type Row = (Vec<Rat>, Vec<Rat>, BTreeSet<usize>);
    let mut ineqs: Vec<Row> = Vec::new();
    for &(pr, pc) in &pivots {
        // λ_pc = rhs(x) − Σ_free coef λ_f ≥ 0
        let h: Vec<Rat> = free.iter().map(|&f| -&rows[pr].0[f]).collect();
        ineqs.push((rows[pr].1.clone(), h, BTreeSet::from([pc])));
    }
    for (t, &f) in free.iter().enumerate() {
        let mut h = vec![Rat::zero(); free.len()];
        h[t] = Rat::one();
        ineqs.push((vec![Rat::zero(); d + 1], h, BTreeSet::from([f])));
    }
    for t in 0..free.len() {
        let (pos, rest): (Vec<Row>, Vec<Row>) =
            ineqs.into_iter().partition(|r| r.1[t].is_positive());
        let (neg, zero): (Vec<Row>, Vec<Row>) =
            rest.into_iter().partition(|r| r.1[t].is_negative());
        let mut next = zero;
        for p in &pos {
            for q in &neg {
                let hist: BTreeSet<usize> = p.2.union(&q.2).copied().collect();
                if hist.len() > t + 2 {
                    continue;
                }
                let (a, b) = (-&q.1[t], p.1[t].clone());
                let g =
                    p.0.iter()
                        .zip(&q.0)
                        .map(|(u, v)| &(u * &a) + &(v * &b))
                        .collect();
                let h =
                    p.1.iter()
                        .zip(&q.1)
                        .map(|(u, v)| &(u * &a) + &(v * &b))
                        .collect();
                next.push((g, h, hist));
            }
        }
        ineqs = next;
    }
    let mut out = BTreeSet::new();
    let dim_rank = {
        let p0 = &points[0];
        rank_of(&points.iter().map(|p| p.sub(p0)).collect::<Vec<_>>(), d)
    };
    for (g, _, _) in ineqs {
        let a = QVector::new(g[..d].to_vec());
        if a.is_zero() {
            continue;
        }
        let ineq = Inequality::new(a, -&g[d]);
        let tight: Vec<&QVector> = points.iter().filter(|p| ineq.is_tight(p)).collect();
        if tight.is_empty() || tight.len() == points.len() {
            continue;
        }
        let t0 = tight[0];
        let r = rank_of(&tight.iter().map(|p| p.sub(t0)).collect::<Vec<_>>(), d);
        if r + 1 == dim_rank {
            out.insert(reduce(&ineq));
        }
    }
    out
}

/// Projects an inequality's normal onto the direction space of `S_n` (which
/// is `L`) and adjusts the right-hand side on `z`.
pub fn reduce_on_s(inst: &Instance, ineq: &Inequality) -> Inequality {
    let a = ineq.lhs();
    let pa = inst.project_l(a);
    let shift = a.sub(&pa).dot(&inst.point_z());
    Inequality::new(pa, ineq.rhs() - &shift)
}

pub fn mean(points: &[QVector]) -> QVector {
    QVector::mean(points)
}

pub fn matrix(rows: &[QVector]) -> QMatrix {
    QMatrix::from_rows(rows.to_vec(), rows[0].len())
}

pub fn half_cut(inst: &Instance, set: &[usize]) -> QVector {
    inst.cut_vector(&set.iter().copied().collect())
        .scale(&Rat::new(1, 2))
}
