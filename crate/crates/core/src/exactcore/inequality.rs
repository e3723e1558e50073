use std::fmt;

use serde::{Deserialize, Serialize};

use super::vector::primitive_scale;
use super::{QVector, Rat};

/// The linear inequality `a·x ≥ rhs`, stored in primitive integer form.
///
/// Normalisation multiplies `(a, rhs)` by a positive factor only, so the
/// orientation is never changed. Two inequalities compare equal exactly when
/// one is a positive multiple of the other.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Inequality {
    a: QVector,
    rhs: Rat,
}

impl Inequality {
    pub fn new(a: QVector, rhs: Rat) -> Self {
        let mut all = a.entries().to_vec();
        all.push(rhs.clone());
        match primitive_scale(&all) {
            Some(s) => Inequality {
                a: a.scale(&s),
                rhs: &rhs * &s,
            },
            None => Inequality { a, rhs },
        }
    }

    pub fn lhs(&self) -> &QVector {
        &self.a
    }

    pub fn rhs(&self) -> &Rat {
        &self.rhs
    }

    pub fn dim(&self) -> usize {
        self.a.len()
    }

    /// `a·x − rhs`.
    pub fn slack(&self, x: &QVector) -> Rat {
        &self.a.dot(x) - &self.rhs
    }

    pub fn is_satisfied(&self, x: &QVector) -> bool {
        !self.slack(x).is_negative()
    }

    pub fn is_tight(&self, x: &QVector) -> bool {
        self.slack(x).is_zero()
    }

    /// Rescaled so that the right-hand side is 1; `None` unless `rhs > 0`.
    pub fn unit_rhs_lhs(&self) -> Option<QVector> {
        if self.rhs.is_positive() {
            Some(self.a.scale(&self.rhs.recip()))
        } else {
            None
        }
    }
}

impl fmt::Debug for Inequality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}·x ≥ {}", self.a, self.rhs)
    }
}

/// The linear equation `a·x = rhs`, primitive with first nonzero entry of
/// `(a, rhs)` positive.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Equation {
    a: QVector,
    rhs: Rat,
}

impl Equation {
    pub fn new(a: QVector, rhs: Rat) -> Self {
        let mut all = a.entries().to_vec();
        all.push(rhs);
        let c = QVector::new(all).canonical().into_entries();
        let (rhs, a) = (
            c[c.len() - 1].clone(),
            QVector::new(c[..c.len() - 1].to_vec()),
        );
        Equation { a, rhs }
    }

    pub fn lhs(&self) -> &QVector {
        &self.a
    }

    pub fn rhs(&self) -> &Rat {
        &self.rhs
    }

    pub fn residual(&self, x: &QVector) -> Rat {
        &self.a.dot(x) - &self.rhs
    }

    pub fn is_satisfied(&self, x: &QVector) -> bool {
        self.residual(x).is_zero()
    }
}

impl fmt::Debug for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}·x = {}", self.a, self.rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalisation_is_positive_scaling() {
        let a = Inequality::new(
            QVector::new(vec![Rat::new(1, 2), Rat::new(1, 2)]),
            Rat::one(),
        );
        assert_eq!(a.lhs(), &QVector::from_ints(&[1, 1]));
        assert_eq!(a.rhs(), &Rat::from_int(2));
        let b = Inequality::new(QVector::from_ints(&[-2, 0]), Rat::from_int(-4));
        assert_eq!(b.lhs(), &QVector::from_ints(&[-1, 0]));
        assert_eq!(b.rhs(), &Rat::from_int(-2));
        assert_eq!(
            a.unit_rhs_lhs().unwrap(),
            QVector::new(vec![Rat::new(1, 2), Rat::new(1, 2)])
        );
    }

    #[test]
    fn equation_sign_fixed() {
        let e = Equation::new(QVector::from_ints(&[0, -2]), Rat::from_int(-4));
        assert_eq!(e.lhs(), &QVector::from_ints(&[0, 1]));
        assert_eq!(e.rhs(), &Rat::from_int(2));
    }
}
