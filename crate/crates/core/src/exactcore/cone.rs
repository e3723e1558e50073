use super::lp::{LinearProgram, LpStatus};
use super::QVector;

/// Result of a cone-membership query.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConeMembership {
    /// Non-negative coefficients `t` with `point = Σ t_i g_i`.
    Inside(QVector),
    /// A vector `y` with `y·g_i ≥ 0` for all generators and `y·point < 0`.
    Outside(QVector),
}

impl ConeMembership {
    pub fn is_inside(&self) -> bool {
        matches!(self, ConeMembership::Inside(_))
    }

    /// Checks the attached certificate exactly.
    pub fn verify(&self, point: &QVector, generators: &[QVector]) -> bool {
        match self {
            ConeMembership::Inside(t) => {
                if t.len() != generators.len() || !t.is_nonnegative() {
                    return false;
                }
                let mut acc = QVector::zeros(point.len());
                for (g, k) in generators.iter().zip(t.iter()) {
                    acc = acc.axpy(k, g);
                }
                &acc == point
            }
            ConeMembership::Outside(y) => {
                generators.iter().all(|g| !y.dot(g).is_negative()) && y.dot(point).is_negative()
            }
        }
    }
}

/// Decides whether `point` lies in the cone spanned by `generators`.
pub fn in_cone(point: &QVector, generators: &[QVector]) -> ConeMembership {
    let d = point.len();
    let k = generators.len();
    if point.is_zero() {
        return ConeMembership::Inside(QVector::zeros(k));
    }
    let mut lp = LinearProgram::new(QVector::zeros(k)).all_nonneg();
    for coord in 0..d {
        let row: QVector = generators.iter().map(|g| g[coord].clone()).collect();
        lp = lp.eq(row, point[coord].clone());
    }
    let res = lp.solve();
    match res.status {
        LpStatus::Optimal => ConeMembership::Inside(res.primal),
        LpStatus::Infeasible => ConeMembership::Outside(res.dual.neg()),
        LpStatus::Unbounded => unreachable!("zero objective is bounded"),
    }
}

/// `Σ t_i g_i`.
pub fn combine(coeffs: &QVector, generators: &[QVector], dim: usize) -> QVector {
    let mut acc = QVector::zeros(dim);
    for (g, k) in generators.iter().zip(coeffs.iter()) {
        if !k.is_zero() {
            acc = acc.axpy(k, g);
        }
    }
    acc
}
