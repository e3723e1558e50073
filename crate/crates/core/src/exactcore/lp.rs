//! Exact two-phase primal simplex with Bland's rule.
//!
//! Problems are stated as `minimize c·x` subject to `A x ≥ b`, `E x = f`, with
//! each variable either free or non-negative. Every result carries an exact
//! certificate that [`LpResult::verify`] re-checks in rational arithmetic:
//! an optimal dual, a Farkas vector for infeasibility, or an improving ray.

use serde::{Deserialize, Serialize};

use super::{Inequality, QMatrix, QVector, Rat};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum VarSign {
    Free,
    NonNeg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

/// `minimize objective·x` over `ineq rows (a·x ≥ b)`, `eq rows (a·x = b)`.
#[derive(Debug, Clone)]
pub struct LinearProgram {
    pub objective: QVector,
    pub inequalities: Vec<(QVector, Rat)>,
    pub equations: Vec<(QVector, Rat)>,
    pub signs: Vec<VarSign>,
}

/// Outcome of [`LinearProgram::solve`].
///
/// `dual` lists one multiplier per inequality followed by one per equation.
/// For an optimal result it is an optimal dual solution; for an infeasible
/// one it is a Farkas certificate `y` with `y_ineq ≥ 0`, `yᵀ[A;E]` vanishing
/// on free and non-positive on non-negative variables, and `yᵀ[b;f] > 0`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LpResult {
    pub status: LpStatus,
    pub value: Option<Rat>,
    pub primal: QVector,
    pub dual: QVector,
    pub ray: Option<QVector>,
}

impl LinearProgram {
    pub fn new(objective: QVector) -> Self {
        let n = objective.len();
        LinearProgram {
            objective,
            inequalities: Vec::new(),
            equations: Vec::new(),
            signs: vec![VarSign::Free; n],
        }
    }

    pub fn with_signs(mut self, signs: Vec<VarSign>) -> Self {
        assert_eq!(signs.len(), self.objective.len());
        self.signs = signs;
        self
    }

    pub fn all_nonneg(mut self) -> Self {
        self.signs = vec![VarSign::NonNeg; self.objective.len()];
        self
    }

    pub fn ge(mut self, a: QVector, b: Rat) -> Self {
        assert_eq!(a.len(), self.objective.len());
        self.inequalities.push((a, b));
        self
    }

    pub fn eq(mut self, a: QVector, b: Rat) -> Self {
        assert_eq!(a.len(), self.objective.len());
        self.equations.push((a, b));
        self
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    fn rows(&self) -> impl Iterator<Item = &(QVector, Rat)> {
        self.inequalities.iter().chain(self.equations.iter())
    }

    pub fn is_feasible_point(&self, x: &QVector) -> bool {
        x.len() == self.num_vars()
            && self
                .signs
                .iter()
                .zip(x.iter())
                .all(|(s, v)| *s == VarSign::Free || !v.is_negative())
            && self.inequalities.iter().all(|(a, b)| &a.dot(x) >= b)
            && self.equations.iter().all(|(a, b)| &a.dot(x) == b)
    }

    /// `[A;E]ᵀ y`.
    fn transpose_combination(&self, y: &QVector) -> QVector {
        let mut acc = QVector::zeros(self.num_vars());
        for ((a, _), k) in self.rows().zip(y.iter()) {
            if !k.is_zero() {
                acc = acc.axpy(k, a);
            }
        }
        acc
    }

    fn rhs_combination(&self, y: &QVector) -> Rat {
        self.rows().zip(y.iter()).map(|((_, b), k)| b * k).sum()
    }

    pub fn solve(&self) -> LpResult {
        Tableau::build(self).run(self)
    }
}

impl LpResult {
    /// Re-checks the attached certificate exactly.
    pub fn verify(&self, lp: &LinearProgram) -> bool {
        let m_ineq = lp.inequalities.len();
        match self.status {
            LpStatus::Optimal => {
                let Some(value) = &self.value else {
                    return false;
                };
                if !lp.is_feasible_point(&self.primal) || &lp.objective.dot(&self.primal) != value {
                    return false;
                }
                let y = &self.dual;
                if y.len() != m_ineq + lp.equations.len()
                    || y.iter().take(m_ineq).any(Rat::is_negative)
                {
                    return false;
                }
                let reduced = lp.objective.sub(&lp.transpose_combination(y));
                let dual_feasible = lp.signs.iter().zip(reduced.iter()).all(|(s, r)| match s {
                    VarSign::Free => r.is_zero(),
                    VarSign::NonNeg => !r.is_negative(),
                });
                dual_feasible && &lp.rhs_combination(y) == value
            }
            LpStatus::Infeasible => {
                let y = &self.dual;
                if y.len() != m_ineq + lp.equations.len()
                    || y.iter().take(m_ineq).any(Rat::is_negative)
                {
                    return false;
                }
                let comb = lp.transpose_combination(y);
                let ok = lp.signs.iter().zip(comb.iter()).all(|(s, r)| match s {
                    VarSign::Free => r.is_zero(),
                    VarSign::NonNeg => !r.is_positive(),
                });
                ok && lp.rhs_combination(y).is_positive()
            }
            LpStatus::Unbounded => {
                let Some(d) = &self.ray else { return false };
                lp.is_feasible_point(&self.primal)
                    && lp
                        .signs
                        .iter()
                        .zip(d.iter())
                        .all(|(s, v)| *s == VarSign::Free || !v.is_negative())
                    && lp.inequalities.iter().all(|(a, _)| !a.dot(d).is_negative())
                    && lp.equations.iter().all(|(a, _)| a.dot(d).is_zero())
                    && lp.objective.dot(d).is_negative()
            }
        }
    }
}

/// `minimize c·x` over free `x` with `ineqs` and `eqs`.
pub fn lp_solve(c: &QVector, ineqs: &[Inequality], eqs: &[(QVector, Rat)]) -> LpResult {
    let mut lp = LinearProgram::new(c.clone());
    for i in ineqs {
        lp = lp.ge(i.lhs().clone(), i.rhs().clone());
    }
    for (a, b) in eqs {
        lp = lp.eq(a.clone(), b.clone());
    }
    lp.solve()
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum ColKind {
    /// Original variable `var` with coefficient sign `+1` / `-1`.
    Structural {
        var: usize,
        negated: bool,
    },
    Surplus,
    Artificial,
}

struct Tableau {
    kinds: Vec<ColKind>,
    /// σ-scaled original constraint matrix, kept for dual recovery.
    original: Vec<Vec<Rat>>,
    sigma: Vec<bool>,
    t: Vec<Vec<Rat>>,
    rhs: Vec<Rat>,
    basis: Vec<usize>,
    /// Original row index of each live tableau row.
    row_ids: Vec<usize>,
}

impl Tableau {
    fn build(lp: &LinearProgram) -> Self {
        let m_ineq = lp.inequalities.len();
        let mut kinds = Vec::new();
        for (var, s) in lp.signs.iter().enumerate() {
            kinds.push(ColKind::Structural {
                var,
                negated: false,
            });
            if *s == VarSign::Free {
                kinds.push(ColKind::Structural { var, negated: true });
            }
        }
        let n_struct = kinds.len();
        kinds.extend(std::iter::repeat_n(ColKind::Surplus, m_ineq));
        let rows: Vec<&(QVector, Rat)> = lp.rows().collect();
        let m = rows.len();

        let mut original = Vec::with_capacity(m);
        let mut sigma = Vec::with_capacity(m);
        let mut rhs = Vec::with_capacity(m);
        for (i, (a, b)) in rows.iter().enumerate() {
            let flip = b.is_negative();
            let mut row = Vec::with_capacity(kinds.len());
            for k in &kinds[..n_struct] {
                if let ColKind::Structural { var, negated } = *k {
                    let v = if negated { -&a[var] } else { a[var].clone() };
                    row.push(if flip { -v } else { v });
                }
            }
            for s in 0..m_ineq {
                let v = if s == i { -Rat::one() } else { Rat::zero() };
                row.push(if flip { -v } else { v });
            }
            original.push(row);
            sigma.push(flip);
            rhs.push(if flip { -b } else { b.clone() });
        }

        let mut t = original.clone();
        let mut basis = vec![usize::MAX; m];
        for i in 0..m {
            if i < m_ineq && sigma[i] {
                basis[i] = n_struct + i;
            }
        }
        for i in 0..m {
            if basis[i] == usize::MAX {
                let col = kinds.len();
                kinds.push(ColKind::Artificial);
                for (r, row) in t.iter_mut().enumerate() {
                    row.push(if r == i { Rat::one() } else { Rat::zero() });
                }
                basis[i] = col;
            }
        }
        let ncols = kinds.len();
        for row in &mut original {
            row.resize(ncols, Rat::zero());
        }
        for (i, &b) in basis.iter().enumerate() {
            if kinds[b] == ColKind::Artificial {
                original[i][b] = Rat::one();
            }
        }
        Tableau {
            kinds,
            original,
            sigma,
            t,
            rhs,
            basis,
            row_ids: (0..m).collect(),
        }
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.t[r][c].recip();
        if !inv.is_one() {
            for v in self.t[r].iter_mut() {
                if !v.is_zero() {
                    *v = &*v * &inv;
                }
            }
            self.rhs[r] = &self.rhs[r] * &inv;
        }
        let prow = self.t[r].clone();
        let prhs = self.rhs[r].clone();
        for i in 0..self.t.len() {
            if i == r || self.t[i][c].is_zero() {
                continue;
            }
            let f = self.t[i][c].clone();
            let row = &mut self.t[i];
            for (j, pv) in prow.iter().enumerate() {
                if !pv.is_zero() {
                    row[j] = &row[j] - &(&f * pv);
                }
            }
            self.rhs[i] = &self.rhs[i] - &(&f * &prhs);
        }
        self.basis[r] = c;
    }

    fn reduced_costs(&self, cost: &[Rat]) -> Vec<Rat> {
        let mut d = cost.to_vec();
        for (i, &b) in self.basis.iter().enumerate() {
            let cb = &cost[b];
            if cb.is_zero() {
                continue;
            }
            for (j, v) in self.t[i].iter().enumerate() {
                if !v.is_zero() {
                    d[j] = &d[j] - &(cb * v);
                }
            }
        }
        d
    }

    /// Runs simplex iterations; returns the unbounded entering column if any.
    fn iterate(&mut self, cost: &[Rat], allowed: &dyn Fn(usize) -> bool) -> Option<usize> {
        loop {
            let d = self.reduced_costs(cost);
            let enter = (0..d.len()).find(|&j| allowed(j) && d[j].is_negative())?;
            let mut best: Option<(usize, Rat)> = None;
            for i in 0..self.t.len() {
                if !self.t[i][enter].is_positive() {
                    continue;
                }
                let ratio = &self.rhs[i] / &self.t[i][enter];
                best = match best {
                    None => Some((i, ratio)),
                    Some((bi, br)) => {
                        if ratio < br || (ratio == br && self.basis[i] < self.basis[bi]) {
                            Some((i, ratio))
                        } else {
                            Some((bi, br))
                        }
                    }
                };
            }
            match best {
                None => return Some(enter),
                Some((leave, _)) => self.pivot(leave, enter),
            }
        }
    }

    /// Multipliers `π` with `Bᵀπ = c_B` on live rows, scattered to original
    /// row indices with the σ sign undone.
    fn duals(&self, cost: &[Rat], total_rows: usize) -> QVector {
        let live = self.row_ids.len();
        let mut y = QVector::zeros(total_rows);
        if live == 0 {
            return y;
        }
        let rows: Vec<QVector> = self
            .basis
            .iter()
            .map(|&b| {
                self.row_ids
                    .iter()
                    .map(|&r| self.original[r][b].clone())
                    .collect()
            })
            .collect();
        let bt = QMatrix::from_rows(rows, live);
        let cb: QVector = self.basis.iter().map(|&b| cost[b].clone()).collect();
        let pi = bt.solve(&cb).expect("basis matrix is nonsingular");
        for (k, &r) in self.row_ids.iter().enumerate() {
            y[r] = if self.sigma[r] {
                -&pi[k]
            } else {
                pi[k].clone()
            };
        }
        y
    }

    fn column_values(&self) -> Vec<Rat> {
        let mut vals = vec![Rat::zero(); self.kinds.len()];
        for (i, &b) in self.basis.iter().enumerate() {
            vals[b] = self.rhs[i].clone();
        }
        vals
    }

    fn to_primal(&self, col_vals: &[Rat], nvars: usize) -> QVector {
        let mut x = QVector::zeros(nvars);
        for (j, k) in self.kinds.iter().enumerate() {
            if let ColKind::Structural { var, negated } = *k {
                if !col_vals[j].is_zero() {
                    x[var] = if negated {
                        &x[var] - &col_vals[j]
                    } else {
                        &x[var] + &col_vals[j]
                    };
                }
            }
        }
        x
    }

    fn run(mut self, lp: &LinearProgram) -> LpResult {
        let nvars = lp.num_vars();
        let total_rows = self.t.len();
        let phase1: Vec<Rat> = self
            .kinds
            .iter()
            .map(|k| {
                if *k == ColKind::Artificial {
                    Rat::one()
                } else {
                    Rat::zero()
                }
            })
            .collect();
        let has_artificial = self.kinds.contains(&ColKind::Artificial);
        if has_artificial {
            let unbounded = self.iterate(&phase1, &|_| true);
            debug_assert!(unbounded.is_none(), "phase one is bounded below");
            let infeas: Rat = self
                .basis
                .iter()
                .zip(&self.rhs)
                .filter(|(b, _)| self.kinds[**b] == ColKind::Artificial)
                .map(|(_, v)| v.clone())
                .sum();
            if infeas.is_positive() {
                let dual = self.duals(&phase1, total_rows);
                return LpResult {
                    status: LpStatus::Infeasible,
                    value: None,
                    primal: QVector::zeros(nvars),
                    dual,
                    ray: None,
                };
            }
            self.drive_out_artificials();
        }

        let cost: Vec<Rat> = self
            .kinds
            .iter()
            .map(|k| match *k {
                ColKind::Structural { var, negated } => {
                    if negated {
                        -&lp.objective[var]
                    } else {
                        lp.objective[var].clone()
                    }
                }
                _ => Rat::zero(),
            })
            .collect();
        let kinds = self.kinds.clone();
        let allowed = move |j: usize| kinds[j] != ColKind::Artificial;
        if let Some(enter) = self.iterate(&cost, &allowed) {
            let vals = self.column_values();
            let primal = self.to_primal(&vals, nvars);
            let mut dir = vec![Rat::zero(); self.kinds.len()];
            dir[enter] = Rat::one();
            for (i, &b) in self.basis.iter().enumerate() {
                dir[b] = -&self.t[i][enter];
            }
            let ray = self.to_primal(&dir, nvars);
            return LpResult {
                status: LpStatus::Unbounded,
                value: None,
                primal,
                dual: QVector::zeros(0),
                ray: Some(ray),
            };
        }
        let vals = self.column_values();
        let primal = self.to_primal(&vals, nvars);
        let value = lp.objective.dot(&primal);
        let dual = self.duals(&cost, total_rows);
        LpResult {
            status: LpStatus::Optimal,
            value: Some(value),
            primal,
            dual,
            ray: None,
        }
    }

    fn drive_out_artificials(&mut self) {
        let mut i = 0;
        while i < self.t.len() {
            if self.kinds[self.basis[i]] != ColKind::Artificial {
                i += 1;
                continue;
            }
            let col = (0..self.kinds.len())
                .find(|&j| self.kinds[j] != ColKind::Artificial && !self.t[i][j].is_zero());
            match col {
                Some(j) => {
                    self.pivot(i, j);
                    i += 1;
                }
                None => {
                    // Redundant row.
                    self.t.remove(i);
                    self.rhs.remove(i);
                    self.basis.remove(i);
                    self.row_ids.remove(i);
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: &[i64]) -> QVector {
        QVector::from_ints(v)
    }

    #[test]
    fn single_lower_bound() {
        let lp = LinearProgram::new(q(&[1])).ge(q(&[1]), Rat::from_int(3));
        let r = lp.solve();
        assert_eq!(r.status, LpStatus::Optimal);
        assert_eq!(r.value, Some(Rat::from_int(3)));
        assert!(r.verify(&lp));
    }

    #[test]
    fn infeasible_has_farkas() {
        let lp = LinearProgram::new(q(&[0, 0]))
            .ge(q(&[1, 1]), Rat::from_int(2))
            .ge(q(&[-1, -1]), Rat::from_int(-1));
        let r = lp.solve();
        assert_eq!(r.status, LpStatus::Infeasible);
        assert!(r.verify(&lp));
    }

    #[test]
    fn unbounded_has_ray() {
        let lp = LinearProgram::new(q(&[-1, 0])).ge(q(&[0, 1]), Rat::zero());
        let r = lp.solve();
        assert_eq!(r.status, LpStatus::Unbounded);
        assert!(r.verify(&lp));
        let lp = LinearProgram::new(q(&[1]));
        assert_eq!(lp.solve().status, LpStatus::Unbounded);
    }

    #[test]
    fn equations_and_redundant_rows() {
        // x + y = 1 twice, x - y = 0, minimise x: unique point (1/2, 1/2).
        let lp = LinearProgram::new(q(&[1, 0]))
            .eq(q(&[1, 1]), Rat::one())
            .eq(q(&[2, 2]), Rat::from_int(2))
            .eq(q(&[1, -1]), Rat::zero())
            .all_nonneg();
        let r = lp.solve();
        assert_eq!(r.status, LpStatus::Optimal);
        assert_eq!(r.value, Some(Rat::new(1, 2)));
        assert!(r.verify(&lp));
    }

    #[test]
    fn degenerate_cycling_example() {
        // Beale's classic cycling instance; Bland's rule must terminate.
        let c = QVector::new(vec![
            Rat::new(-3, 4),
            Rat::from_int(150),
            Rat::new(-1, 50),
            Rat::from_int(6),
        ]);
        let lp = LinearProgram::new(c)
            .ge(
                QVector::new(vec![
                    Rat::new(-1, 4),
                    Rat::from_int(60),
                    Rat::new(1, 25),
                    Rat::from_int(-9),
                ]),
                Rat::zero(),
            )
            .ge(
                QVector::new(vec![
                    Rat::new(-1, 2),
                    Rat::from_int(90),
                    Rat::new(1, 50),
                    Rat::from_int(-3),
                ]),
                Rat::zero(),
            )
            .ge(q(&[0, 0, -1, 0]), Rat::from_int(-1))
            .all_nonneg();
        let r = lp.solve();
        assert_eq!(r.status, LpStatus::Optimal);
        assert_eq!(r.value, Some(Rat::new(-1, 20)));
        assert!(r.verify(&lp));
    }
}
