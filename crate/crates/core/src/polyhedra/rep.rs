use serde::{Deserialize, Serialize};

use super::dd::cone_generators;
use crate::exactcore::{Equation, Inequality, QMatrix, QVector, Rat};
use crate::{Error, Result};

/// `conv(points) + cone(rays)`.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct VRep {
    pub points: Vec<QVector>,
    pub rays: Vec<QVector>,
}

/// `{x : a_i·x ≥ b_i, e_j·x = f_j}`.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct HRep {
    pub inequalities: Vec<Inequality>,
    pub equations: Vec<Equation>,
}

impl VRep {
    pub fn new(points: Vec<QVector>, rays: Vec<QVector>) -> Self {
        VRep { points, rays }
    }

    pub fn polytope(points: Vec<QVector>) -> Self {
        VRep {
            points,
            rays: Vec::new(),
        }
    }

    pub fn dim_ambient(&self) -> Option<usize> {
        self.points.first().or(self.rays.first()).map(QVector::len)
    }

    /// Sorted, deduplicated, rays made primitive; zero rays dropped.
    pub fn canonical(&self) -> VRep {
        let mut points = self.points.clone();
        points.sort();
        points.dedup();
        let mut rays: Vec<QVector> = self
            .rays
            .iter()
            .filter(|r| !r.is_zero())
            .map(QVector::primitive)
            .collect();
        rays.sort();
        rays.dedup();
        VRep { points, rays }
    }

    pub fn is_bounded(&self) -> bool {
        self.rays.is_empty()
    }
}

impl HRep {
    pub fn new(inequalities: Vec<Inequality>, equations: Vec<Equation>) -> Self {
        HRep {
            inequalities,
            equations,
        }
    }

    pub fn contains(&self, x: &QVector) -> bool {
        self.inequalities.iter().all(|i| i.is_satisfied(x))
            && self.equations.iter().all(|e| e.is_satisfied(x))
    }

    /// Whether `r` is a recession direction.
    pub fn recedes(&self, r: &QVector) -> bool {
        self.inequalities
            .iter()
            .all(|i| !i.lhs().dot(r).is_negative())
            && self.equations.iter().all(|e| e.lhs().dot(r).is_zero())
    }

    pub fn canonical(&self) -> HRep {
        let mut inequalities = self.inequalities.clone();
        inequalities.sort();
        inequalities.dedup();
        let mut equations = self.equations.clone();
        equations.sort();
        equations.dedup();
        HRep {
            inequalities,
            equations,
        }
    }

    /// Intersection of two H-representations in the same space.
    pub fn meet(&self, other: &HRep) -> HRep {
        let mut inequalities = self.inequalities.clone();
        inequalities.extend(other.inequalities.iter().cloned());
        let mut equations = self.equations.clone();
        equations.extend(other.equations.iter().cloned());
        HRep {
            inequalities,
            equations,
        }
    }
}

/// Rewrites `a·x ≥ β` modulo the equations so that `a` is orthogonal to
/// every equation normal; the result is the same inequality on the affine
/// hull and is a canonical representative of its class.
pub fn reduce_modulo_equations(ineq: &Inequality, eqs: &[Equation]) -> Inequality {
    if eqs.is_empty() {
        return ineq.clone();
    }
    let d = ineq.dim();
    let normals = QMatrix::from_rows(eqs.iter().map(|e| e.lhs().clone()).collect(), d);
    let gram = normals.mul(&normals.transpose());
    let coef = gram
        .solve(&normals.mul_vec(ineq.lhs()))
        .expect("Gram system is consistent");
    let a = ineq.lhs().sub(&normals.tmul_vec(&coef));
    let shift: Rat = eqs.iter().zip(coef.iter()).map(|(e, c)| e.rhs() * c).sum();
    Inequality::new(a, ineq.rhs() - &shift)
}

/// Independent equations spanning the same affine subspace, in canonical
/// reduced form.
pub fn independent_equations(eqs: &[Equation], d: usize) -> Vec<Equation> {
    if eqs.is_empty() {
        return Vec::new();
    }
    let rows: Vec<QVector> = eqs
        .iter()
        .map(|e| e.lhs().concat(&QVector::new(vec![e.rhs().clone()])))
        .collect();
    let (r, pivots) = QMatrix::from_rows(rows, d + 1).rref();
    let mut out: Vec<Equation> = (0..pivots.len())
        .map(|i| {
            let row = r.row(i);
            Equation::new(QVector::new(row.entries()[..d].to_vec()), row[d].clone())
        })
        .collect();
    out.sort();
    out
}

/// Facet description of `conv(points) + cone(rays)`.
///
/// Rows are (a, β) with `a·p − β ≥ 0` on points and `a·r ≥ 0` on rays; the
/// lineality of that cone gives the equations of the affine hull and its
/// extreme rays the facets. The output is irredundant and canonical.
pub fn dd_convert(v: &VRep) -> Result<HRep> {
    let Some(d) = v.dim_ambient() else {
        return Err(Error::EmptyInput("V-representation without generators"));
    };
    if v.points.is_empty() {
        return Err(Error::EmptyInput("V-representation without points"));
    }
    let mut rows = Vec::with_capacity(v.points.len() + v.rays.len());
    for p in &v.points {
        let mut r = p.clone();
        r.push(-Rat::one());
        rows.push(r);
    }
    for ray in &v.rays {
        let mut r = ray.clone();
        r.push(Rat::zero());
        rows.push(r);
    }
    rows.sort();
    rows.dedup();
    let gens = cone_generators(&rows, &[], d + 1);
    let split = |y: &QVector| (QVector::new(y.entries()[..d].to_vec()), y[d].clone());
    let raw_eqs: Vec<Equation> = gens
        .lineality
        .iter()
        .map(|y| {
            let (a, b) = split(y);
            Equation::new(a, b)
        })
        .collect();
    let equations = independent_equations(&raw_eqs, d);
    let mut inequalities: Vec<Inequality> = gens
        .rays
        .iter()
        .map(|y| {
            let (a, b) = split(y);
            reduce_modulo_equations(&Inequality::new(a, b), &equations)
        })
        .filter(|i| !i.lhs().is_zero())
        .collect();
    inequalities.sort();
    inequalities.dedup();
    Ok(HRep {
        inequalities,
        equations,
    })
}

/// Vertices and extreme rays of an H-described polyhedron.
///
/// Homogenises with a variable `t ≥ 0`; extreme rays with `t > 0` give
/// vertices. An empty polyhedron yields an empty V-representation.
pub fn dd_convert_back(h: &HRep) -> Result<VRep> {
    let Some(d) = h
        .inequalities
        .first()
        .map(Inequality::dim)
        .or(h.equations.first().map(|e| e.lhs().len()))
    else {
        return Err(Error::EmptyInput("H-representation without rows"));
    };
    dd_convert_back_in(h, d)
}

/// As [`dd_convert_back`], with the ambient dimension given explicitly.
pub fn dd_convert_back_in(h: &HRep, d: usize) -> Result<VRep> {
    let mut rows: Vec<QVector> = h
        .inequalities
        .iter()
        .map(|i| {
            let mut r = i.lhs().clone();
            r.push(-i.rhs());
            r
        })
        .collect();
    rows.sort();
    rows.dedup();
    rows.push(QVector::unit(d + 1, d));
    let eqs: Vec<QVector> = h
        .equations
        .iter()
        .map(|e| {
            let mut r = e.lhs().clone();
            r.push(-e.rhs());
            r
        })
        .collect();
    let gens = cone_generators(&rows, &eqs, d + 1);
    if !gens.lineality.is_empty() {
        return Err(Error::NotPointed);
    }
    let mut points = Vec::new();
    let mut rays = Vec::new();
    for y in &gens.rays {
        let t = &y[d];
        let x = QVector::new(y.entries()[..d].to_vec());
        if t.is_positive() {
            points.push(x.scale(&t.recip()));
        } else {
            rays.push(x.primitive());
        }
    }
    if points.is_empty() {
        return Ok(VRep::default());
    }
    Ok(VRep { points, rays }.canonical())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cube_points(d: usize) -> Vec<QVector> {
        (0..1u32 << d)
            .map(|m| (0..d).map(|i| Rat::from_int((m >> i & 1) as i64)).collect())
            .collect()
    }

    #[test]
    fn cube_facets() {
        let h = dd_convert(&VRep::polytope(cube_points(3))).unwrap();
        assert_eq!(h.inequalities.len(), 6);
        assert!(h.equations.is_empty());
        let v = dd_convert_back(&h).unwrap();
        assert_eq!(v, VRep::polytope(cube_points(3)).canonical());
    }

    #[test]
    fn unbounded_round_trip() {
        let v = VRep::new(
            vec![QVector::from_ints(&[1, 0]), QVector::from_ints(&[0, 1])],
            vec![QVector::from_ints(&[1, 0]), QVector::from_ints(&[0, 1])],
        );
        let h = dd_convert(&v).unwrap();
        assert_eq!(h.inequalities.len(), 3);
        assert_eq!(dd_convert_back(&h).unwrap(), v.canonical());
    }

    #[test]
    fn segment_in_plane() {
        let v = VRep::polytope(vec![
            QVector::from_ints(&[0, 0]),
            QVector::from_ints(&[2, 2]),
        ]);
        let h = dd_convert(&v).unwrap();
        assert_eq!(h.equations.len(), 1);
        assert_eq!(h.inequalities.len(), 2);
        assert_eq!(dd_convert_back(&h).unwrap(), v.canonical());
    }

    #[test]
    fn empty_inputs() {
        assert!(dd_convert(&VRep::default()).is_err());
        let h = HRep::new(
            vec![
                Inequality::new(QVector::from_ints(&[1]), Rat::from_int(1)),
                Inequality::new(QVector::from_ints(&[-1]), Rat::from_int(0)),
            ],
            vec![],
        );
        assert!(dd_convert_back(&h).unwrap().points.is_empty());
    }
}
