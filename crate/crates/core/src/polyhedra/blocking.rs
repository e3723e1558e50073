use serde::{Deserialize, Serialize};

use super::lattice::{face_lattice, Complex, Face};
use super::rep::{dd_convert, dd_convert_back_in, HRep, VRep};
use crate::exactcore::{Inequality, QVector, Rat};
use crate::{Error, Result};

/// `{a ≥ 0 : a·x ≥ 1 for every vertex x}` of a polyhedron whose recession
/// cone is the non-negative orthant, with both representations and its face
/// lattice.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BlockingPolyhedron {
    pub hrep: HRep,
    pub vrep: VRep,
    pub lattice: Complex,
}

pub fn blocking_polyhedron(v: &VRep) -> Result<BlockingPolyhedron> {
    let Some(d) = v.dim_ambient() else {
        return Err(Error::EmptyInput("blocking polyhedron of nothing"));
    };
    if v.points.iter().any(|p| !p.is_nonnegative()) {
        return Err(Error::OutsideDomain("points must be non-negative".into()));
    }
    let mut rows: Vec<Inequality> = (0..d)
        .map(|j| Inequality::new(QVector::unit(d, j), Rat::zero()))
        .collect();
    rows.extend(
        v.points
            .iter()
            .map(|p| Inequality::new(p.clone(), Rat::one())),
    );
    let raw = HRep::new(rows, vec![]).canonical();
    let vrep = dd_convert_back_in(&raw, d)?;
    let hrep = dd_convert(&vrep)?;
    let lattice = face_lattice(&hrep, &vrep)?;
    Ok(BlockingPolyhedron {
        hrep,
        vrep,
        lattice,
    })
}

/// A face of `P` is good when no non-negativity facet `x_e ≥ 0` contains it.
pub fn is_good_face(parent: &Complex, f: &Face) -> bool {
    if f.is_empty() {
        return false;
    }
    (0..parent.ambient).all(|e| {
        f.points.iter().any(|&i| !parent.points[i][e].is_zero())
            || f.rays.iter().any(|&i| !parent.rays[i][e].is_zero())
    })
}

/// `F^◇ = {a ∈ P^△ : a·x = 1 for all x ∈ F}`, as a face of the blocking
/// lattice. Rays `r` of `F` add the conditions `a·r = 0`.
pub fn conjugate_face(parent: &Complex, f: &Face, blocker: &BlockingPolyhedron) -> Result<Face> {
    if !is_good_face(parent, f) {
        return Err(Error::NotGood(format!(
            "face with points {:?} lies in a non-negativity facet",
            f.points
        )));
    }
    let pts = parent.face_points(f);
    let rays: Vec<&QVector> = f.rays.iter().map(|&i| &parent.rays[i]).collect();
    let lat = &blocker.lattice;
    let cpoints: Vec<usize> = (0..lat.points.len())
        .filter(|&i| {
            let a = &lat.points[i];
            pts.iter().all(|x| a.dot(x).is_one()) && rays.iter().all(|r| a.dot(r).is_zero())
        })
        .collect();
    let crays: Vec<usize> = (0..lat.rays.len())
        .filter(|&i| {
            let r = &lat.rays[i];
            pts.iter().all(|x| r.dot(x).is_zero()) && rays.iter().all(|d| r.dot(d).is_zero())
        })
        .collect();
    match lat.find(&cpoints, &crays) {
        Some(k) => Ok(lat.faces[k].clone()),
        None if cpoints.is_empty() => Ok(lat
            .faces
            .iter()
            .find(|g| g.is_empty())
            .cloned()
            .expect("empty face present")),
        None => Err(Error::Inconsistent(
            "conjugate generator set is not a face".into(),
        )),
    }
}

/// Inverse direction: faces of `P` tight on all generators of a face `G` of
/// the blocking polyhedron.
pub fn conjugate_back(parent: &Complex, g: &Face, blocker: &BlockingPolyhedron) -> Option<Face> {
    let lat = &blocker.lattice;
    let apts = lat.face_points(g);
    let arays: Vec<&QVector> = g.rays.iter().map(|&i| &lat.rays[i]).collect();
    let points: Vec<usize> = (0..parent.points.len())
        .filter(|&i| {
            let x = &parent.points[i];
            apts.iter().all(|a| a.dot(x).is_one()) && arays.iter().all(|r| r.dot(x).is_zero())
        })
        .collect();
    let rays: Vec<usize> = (0..parent.rays.len())
        .filter(|&i| {
            let r = &parent.rays[i];
            apts.iter().all(|a| a.dot(r).is_zero()) && arays.iter().all(|s| s.dot(r).is_zero())
        })
        .collect();
    parent.find(&points, &rays).map(|k| parent.faces[k].clone())
}
