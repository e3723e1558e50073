use std::fmt;
use std::ops::{Index, IndexMut};

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::Rat;

/// A dense vector of exact rationals.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct QVector(Vec<Rat>);

impl QVector {
    pub fn new(entries: Vec<Rat>) -> Self {
        QVector(entries)
    }

    pub fn zeros(len: usize) -> Self {
        QVector(vec![Rat::zero(); len])
    }

    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zeros(len);
        v.0[i] = Rat::one();
        v
    }

    pub fn constant(len: usize, value: Rat) -> Self {
        QVector(vec![value; len])
    }

    pub fn from_ints(values: &[i64]) -> Self {
        QVector(values.iter().map(|&v| Rat::from_int(v)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[Rat] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<Rat> {
        self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Rat> {
        self.0.iter()
    }

    pub fn dot(&self, other: &QVector) -> Rat {
        assert_eq!(self.len(), other.len(), "dot product of mismatched vectors");
        let mut acc = Rat::zero();
        for (a, b) in self.0.iter().zip(&other.0) {
            if !a.is_zero() && !b.is_zero() {
                acc += a * b;
            }
        }
        acc
    }

    pub fn add(&self, other: &QVector) -> QVector {
        assert_eq!(self.len(), other.len());
        QVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &QVector) -> QVector {
        assert_eq!(self.len(), other.len());
        QVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: &Rat) -> QVector {
        QVector(self.0.iter().map(|a| a * k).collect())
    }

    pub fn neg(&self) -> QVector {
        QVector(self.0.iter().map(|a| -a).collect())
    }

    /// `self + k * other`.
    pub fn axpy(&self, k: &Rat, other: &QVector) -> QVector {
        assert_eq!(self.len(), other.len());
        if k.is_zero() {
            return self.clone();
        }
        QVector(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| if b.is_zero() { a.clone() } else { a + &(k * b) })
                .collect(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Rat::is_zero)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|a| !a.is_negative())
    }

    pub fn sum(&self) -> Rat {
        self.0.iter().sum()
    }

    pub fn push(&mut self, v: Rat) {
        self.0.push(v);
    }

    pub fn concat(&self, other: &QVector) -> QVector {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        QVector(v)
    }

    /// Smallest positive multiple with coprime integer entries.
    ///
    /// Direction and sign are preserved; the zero vector maps to itself.
    pub fn primitive(&self) -> QVector {
        let Some(scale) = primitive_scale(&self.0) else {
            return self.clone();
        };
        QVector(self.0.iter().map(|a| a * &scale).collect())
    }

    /// Primitive integer form with the first nonzero entry positive.
    pub fn canonical(&self) -> QVector {
        let p = self.primitive();
        match p.0.iter().find(|a| !a.is_zero()) {
            Some(first) if first.is_negative() => p.neg(),
            _ => p,
        }
    }

    /// Mean of a nonempty list of vectors.
    pub fn mean(vectors: &[QVector]) -> QVector {
        assert!(!vectors.is_empty(), "mean of no vectors");
        let mut acc = QVector::zeros(vectors[0].len());
        for v in vectors {
            acc = acc.add(v);
        }
        acc.scale(&Rat::from(vectors.len()).recip())
    }
}

/// Positive factor turning `entries` into coprime integers, `None` for zero.
pub(crate) fn primitive_scale(entries: &[Rat]) -> Option<Rat> {
    let mut lcm = Rat::one();
    let mut any = false;
    for a in entries {
        if !a.is_zero() {
            any = true;
            lcm = lcm.lcm_int(&a.denom_rat());
        }
    }
    if !any {
        return None;
    }
    let mut g = Rat::zero();
    for a in entries {
        if !a.is_zero() {
            g = g.gcd_int(&(a * &lcm).numer_rat());
        }
    }
    Some(&lcm / &g)
}

impl Index<usize> for QVector {
    type Output = Rat;
    fn index(&self, i: usize) -> &Rat {
        &self.0[i]
    }
}

impl IndexMut<usize> for QVector {
    fn index_mut(&mut self, i: usize) -> &mut Rat {
        &mut self.0[i]
    }
}

impl FromIterator<Rat> for QVector {
    fn from_iter<I: IntoIterator<Item = Rat>>(iter: I) -> Self {
        QVector(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a QVector {
    type Item = &'a Rat;
    type IntoIter = std::slice::Iter<'a, Rat>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl fmt::Debug for QVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for QVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// JSON form of a rational: `[num, den]`, integers as JSON numbers when they
/// fit in `i64`, decimal strings otherwise.
#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum JsonInt {
    Num(i64),
    Str(String),
}

impl JsonInt {
    fn from_big(v: num_bigint::BigInt) -> Self {
        use num_traits::ToPrimitive;
        match v.to_i64() {
            Some(i) => JsonInt::Num(i),
            None => JsonInt::Str(v.to_string()),
        }
    }

    fn to_big<E: serde::de::Error>(&self) -> Result<num_bigint::BigInt, E> {
        match self {
            JsonInt::Num(i) => Ok((*i).into()),
            JsonInt::Str(s) => s
                .parse()
                .map_err(|_| E::custom(format!("bad integer `{s}`"))),
        }
    }
}

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let pair = match self.to_i64_pair() {
            Some((n, d)) => [JsonInt::Num(n), JsonInt::Num(d)],
            None => [
                JsonInt::from_big(self.numer()),
                JsonInt::from_big(self.denom()),
            ],
        };
        pair.serialize(serializer)
    }
}

/// Accepted input forms: `[num, den]`, a bare integer, or a `"p/q"` string.
#[derive(Deserialize)]
#[serde(untagged)]
enum RatInput {
    Pair([JsonInt; 2]),
    Int(i64),
    Text(String),
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        match RatInput::deserialize(deserializer)? {
            RatInput::Pair([n, d]) => {
                let (n, d) = (n.to_big::<D::Error>()?, d.to_big::<D::Error>()?);
                if num_traits::Zero::is_zero(&d) {
                    return Err(D::Error::custom("zero denominator"));
                }
                Ok(Rat::from_bigints(n, d))
            }
            RatInput::Int(i) => Ok(Rat::from_int(i)),
            RatInput::Text(s) => s.parse().map_err(D::Error::custom),
        }
    }
}

impl Serialize for QVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.0.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for QVector {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        Ok(QVector(Vec::<Rat>::deserialize(deserializer)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primitive_keeps_sign() {
        let v = QVector::new(vec![Rat::new(-1, 2), Rat::new(1, 3), Rat::zero()]);
        assert_eq!(v.primitive(), QVector::from_ints(&[-3, 2, 0]));
        assert_eq!(v.canonical(), QVector::from_ints(&[3, -2, 0]));
        assert_eq!(QVector::zeros(3).primitive(), QVector::zeros(3));
    }

    #[test]
    fn rationals_parse_from_several_json_forms() {
        let v: QVector = serde_json::from_str(r#"[[1,2], 3, "-5/4", "7"]"#).unwrap();
        assert_eq!(
            v,
            QVector::new(vec![
                Rat::new(1, 2),
                Rat::from_int(3),
                Rat::new(-5, 4),
                Rat::from_int(7)
            ])
        );
        assert!(serde_json::from_str::<Rat>("[1,0]").is_err());
        assert_eq!(serde_json::to_string(&Rat::new(-2, 6)).unwrap(), "[-1,3]");
    }

    #[test]
    fn json_pairs() {
        let v = QVector::new(vec![Rat::new(1, 2), Rat::from_int(-3)]);
        let s = serde_json::to_string(&v).unwrap();
        assert_eq!(s, "[[1,2],[-3,1]]");
        let back: QVector = serde_json::from_str(&s).unwrap();
        assert_eq!(back, v);
        let big = Rat::from_int(i64::MAX) * Rat::from_int(10);
        let s = serde_json::to_string(&big).unwrap();
        assert_eq!(serde_json::from_str::<Rat>(&s).unwrap(), big);
    }
}
