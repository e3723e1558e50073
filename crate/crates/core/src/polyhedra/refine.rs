use std::collections::HashMap;

use super::lattice::{face_lattice_of, Complex, Face};
use super::rep::{dd_convert, dd_convert_back_in, HRep, VRep};
use crate::exactcore::QVector;
use crate::{Error, Result};

/// Registry assigning stable indices to generator vectors.
#[derive(Default)]
struct Registry {
    index: HashMap<QVector, usize>,
    items: Vec<QVector>,
}

impl Registry {
    fn id(&mut self, v: &QVector) -> usize {
        if let Some(&i) = self.index.get(v) {
            return i;
        }
        self.items.push(v.clone());
        self.index.insert(v.clone(), self.items.len() - 1);
        self.items.len() - 1
    }
}

/// Cells given by H-representations; used when one side is a fan whose
/// cones are cheaper to describe by inequalities.
pub fn hreps_of_maximal_faces(c: &Complex) -> Result<Vec<HRep>> {
    c.maximal_faces()
        .into_iter()
        .map(|f| dd_convert(&c.face_vrep(f)))
        .collect()
}

/// All faces of all intersections `F ∩ G` of maximal cells.
///
/// Each intersection is computed exactly from concatenated H-representations
/// and contributes its whole face lattice; faces are identified by their
/// generator vectors, so shared faces are merged.
pub fn common_refinement(c1: &Complex, c2: &Complex) -> Result<Complex> {
    if c1.ambient != c2.ambient {
        return Err(Error::DimensionMismatch {
            expected: c1.ambient,
            got: c2.ambient,
        });
    }
    let h1 = hreps_of_maximal_faces(c1)?;
    let h2 = hreps_of_maximal_faces(c2)?;
    refine_cells(c1.ambient, &h1, &h2)
}

/// Common refinement of two families of cells given by H-representations.
pub fn refine_cells(ambient: usize, cells1: &[HRep], cells2: &[HRep]) -> Result<Complex> {
    let mut pts = Registry::default();
    let mut rays = Registry::default();
    let mut faces: Vec<Face> = Vec::new();
    for a in cells1 {
        for b in cells2 {
            let v = dd_convert_back_in(&a.meet(b), ambient)?;
            if v.points.is_empty() {
                continue;
            }
            let (_, lat) = face_lattice_of(&v)?;
            for f in &lat.faces {
                if f.is_empty() {
                    continue;
                }
                let mut p: Vec<usize> = f.points.iter().map(|&i| pts.id(&lat.points[i])).collect();
                let mut r: Vec<usize> = f.rays.iter().map(|&i| rays.id(&lat.rays[i])).collect();
                p.sort();
                r.sort();
                faces.push(Face {
                    dim: f.dim,
                    points: p,
                    rays: r,
                    tight: vec![],
                });
            }
        }
    }
    faces.push(Face {
        dim: -1,
        points: vec![],
        rays: vec![],
        tight: vec![],
    });
    Ok(Complex::new(ambient, pts.items, rays.items, faces))
}

/// Checks that every face of a cell is in the complex and that maximal
/// cells meet in a common face spanned by their shared generators.
pub fn check_complex_axioms(c: &Complex) -> std::result::Result<(), String> {
    let maximal = c.maximal_faces();
    let point_id: HashMap<&QVector, usize> =
        c.points.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let ray_id: HashMap<QVector, usize> = c
        .rays
        .iter()
        .enumerate()
        .map(|(i, r)| (r.primitive(), i))
        .collect();
    let mut hreps = Vec::with_capacity(maximal.len());
    for f in &maximal {
        let v = c.face_vrep(f);
        let (h, lat) = face_lattice_of(&v).map_err(|e| e.to_string())?;
        for g in lat.faces.iter().filter(|g| !g.is_empty()) {
            let mut p: Vec<usize> = g.points.iter().map(|&i| point_id[&lat.points[i]]).collect();
            let mut r: Vec<usize> = g
                .rays
                .iter()
                .map(|&i| ray_id[&lat.rays[i].primitive()])
                .collect();
            p.sort();
            r.sort();
            if c.find(&p, &r).is_none() {
                return Err(format!(
                    "face {p:?}/{r:?} of cell {:?} missing from the complex",
                    f.points
                ));
            }
            if affine_dim_of(c, &p, &r) != g.dim {
                return Err(format!("dimension mismatch on face {p:?}"));
            }
        }
        hreps.push(h);
    }
    for i in 0..maximal.len() {
        for j in i + 1..maximal.len() {
            let v = dd_convert_back_in(&hreps[i].meet(&hreps[j]), c.ambient)
                .map_err(|e| e.to_string())?;
            let (f, g) = (maximal[i], maximal[j]);
            let shared_pts: Vec<usize> = f
                .points
                .iter()
                .filter(|p| g.points.contains(p))
                .copied()
                .collect();
            let shared_rays: Vec<usize> = f
                .rays
                .iter()
                .filter(|r| g.rays.contains(r))
                .copied()
                .collect();
            let mut got: Vec<usize> = Vec::new();
            for p in &v.points {
                match point_id.get(p) {
                    Some(&k) => got.push(k),
                    None => {
                        return Err(format!(
                            "cells {:?} and {:?} meet in a non-face",
                            f.points, g.points
                        ))
                    }
                }
            }
            got.sort();
            if got != shared_pts {
                return Err(format!(
                    "cells {:?} and {:?} meet improperly",
                    f.points, g.points
                ));
            }
            if !got.is_empty() && c.find(&shared_pts, &shared_rays).is_none() {
                return Err(format!(
                    "intersection of {:?} and {:?} is not a face",
                    f.points, g.points
                ));
            }
        }
    }
    Ok(())
}

fn affine_dim_of(c: &Complex, p: &[usize], r: &[usize]) -> i64 {
    let pts: Vec<QVector> = p.iter().map(|&i| c.points[i].clone()).collect();
    let rs: Vec<QVector> = r.iter().map(|&i| c.rays[i].clone()).collect();
    super::lattice::affine_dim(&pts, &rs)
}

/// A complex from cells that are already faces of one another's lattices,
/// e.g. a fan given by cones spanned from the origin.
pub fn complex_from_cells(ambient: usize, cells: &[VRep]) -> Result<Complex> {
    let hs: Vec<HRep> = cells.iter().map(dd_convert).collect::<Result<_>>()?;
    let whole = vec![HRep::default()];
    refine_cells(ambient, &hs, &whole)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactcore::{Inequality, Rat};
    use crate::polyhedra::lattice::face_lattice_of;

    fn square(lo: i64, hi: i64) -> VRep {
        let q = |a, b| QVector::from_ints(&[a, b]);
        VRep::polytope(vec![q(lo, lo), q(lo, hi), q(hi, lo), q(hi, hi)])
    }

    fn quadrant_fan() -> Complex {
        let q = |a, b| QVector::from_ints(&[a, b]);
        let cells: Vec<VRep> = [(1, 1), (1, -1), (-1, 1), (-1, -1)]
            .iter()
            .map(|&(sx, sy)| VRep::new(vec![q(0, 0)], vec![q(sx, 0), q(0, sy)]))
            .collect();
        complex_from_cells(2, &cells).unwrap()
    }

    #[test]
    fn self_refinement_is_identity() {
        let (_, c) = face_lattice_of(&square(0, 1)).unwrap();
        let r = common_refinement(&c, &c).unwrap();
        assert_eq!(r.f_vector(), c.f_vector());
    }

    #[test]
    fn square_cut_by_quadrants() {
        let (_, c) = face_lattice_of(&square(-1, 1)).unwrap();
        let fan = quadrant_fan();
        assert_eq!(fan.f_vector(), vec![1, 4, 4]);
        let r = common_refinement(&c, &fan).unwrap();
        assert_eq!(r.f_vector(), vec![9, 12, 4]);
        check_complex_axioms(&r).unwrap();
    }

    #[test]
    fn hrep_meet_is_intersection() {
        let h = HRep::new(
            vec![Inequality::new(QVector::from_ints(&[1]), Rat::zero())],
            vec![],
        );
        let g = HRep::new(
            vec![Inequality::new(
                QVector::from_ints(&[-1]),
                Rat::from_int(-2),
            )],
            vec![],
        );
        let v = dd_convert_back_in(&h.meet(&g), 1).unwrap();
        assert_eq!(
            v.points,
            vec![QVector::from_ints(&[0]), QVector::from_ints(&[2])]
        );
    }
}
