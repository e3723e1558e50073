use serde::{Deserialize, Serialize};

use super::lattice::{face_lattice, Complex, Face};
use super::rep::{dd_convert_back_in, HRep, VRep};
use crate::exactcore::{Inequality, QMatrix, QVector, Rat};
use crate::instances::Instance;
use crate::Result;

/// Coordinates on a linear subspace given by a fixed basis `K` (rows).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearChart {
    basis: QMatrix,
    gram_inv: QMatrix,
}

impl LinearChart {
    pub fn new(basis: QMatrix) -> Self {
        let gram = basis.mul(&basis.transpose());
        let gram_inv = gram.inverse().expect("basis rows are independent");
        LinearChart { basis, gram_inv }
    }

    /// The chart on `L = ker D`.
    pub fn for_instance(inst: &Instance) -> Self {
        Self::new(inst.matrix_d().kernel_basis())
    }

    pub fn dim(&self) -> usize {
        self.basis.nrows()
    }

    pub fn ambient(&self) -> usize {
        self.basis.ncols()
    }

    pub fn basis(&self) -> &QMatrix {
        &self.basis
    }

    /// `Kᵀy`.
    pub fn to_edge(&self, y: &QVector) -> QVector {
        self.basis.tmul_vec(y)
    }

    /// Coordinates of the orthogonal projection of `a` onto the subspace.
    pub fn from_edge(&self, a: &QVector) -> QVector {
        self.gram_inv.mul_vec(&self.basis.mul_vec(a))
    }

    /// `Ka`: the functional `y ↦ a·Kᵀy` in chart coordinates.
    pub fn pullback(&self, a: &QVector) -> QVector {
        self.basis.mul_vec(a)
    }
}

/// `S^△ = {a ∈ L : a·(x − z) ≥ −1 for every cycle x}` in chart coordinates.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SymmetricPolar {
    pub chart: LinearChart,
    pub hrep: HRep,
    pub vrep: VRep,
    pub lattice: Complex,
}

impl SymmetricPolar {
    /// Vertices in edge coordinates.
    pub fn edge_vertices(&self) -> Vec<QVector> {
        self.vrep
            .points
            .iter()
            .map(|y| self.chart.to_edge(y))
            .collect()
    }

    /// The polar point of a valid inequality `a·x ≥ β` of `S` that is not
    /// tight on `z`: `p(a)/(a·z − β)`, in chart coordinates.
    pub fn polar_point(&self, inst: &Instance, ineq: &Inequality) -> QVector {
        let gap = &ineq.lhs().dot(&inst.point_z()) - ineq.rhs();
        self.chart.from_edge(ineq.lhs()).scale(&gap.recip())
    }

    /// The face of `S^△` with `y` in its relative interior: generated by the
    /// vertices lying on every facet through `y`.
    pub fn host_face(&self, y: &QVector) -> Option<&Face> {
        if !self.hrep.contains(y) {
            return None;
        }
        let tight: Vec<usize> = (0..self.hrep.inequalities.len())
            .filter(|&i| self.hrep.inequalities[i].is_tight(y))
            .collect();
        let points: Vec<usize> = (0..self.vrep.points.len())
            .filter(|&j| {
                tight
                    .iter()
                    .all(|&i| self.hrep.inequalities[i].is_tight(&self.vrep.points[j]))
            })
            .collect();
        self.lattice
            .find(&points, &[])
            .map(|k| &self.lattice.faces[k])
    }
}

pub fn polar_s(inst: &Instance) -> Result<SymmetricPolar> {
    inst.require_at_least(5)?;
    let chart = LinearChart::for_instance(inst);
    let z = inst.point_z();
    let rows: Vec<Inequality> = inst
        .hamiltonian_cycles()
        .iter()
        .map(|x| Inequality::new(chart.pullback(&x.sub(&z)), -Rat::one()))
        .collect();
    let raw = HRep::new(rows, vec![]).canonical();
    let vrep = dd_convert_back_in(&raw, chart.dim())?;
    let hrep = super::rep::dd_convert(&vrep)?;
    let lattice = face_lattice(&hrep, &vrep)?;
    Ok(SymmetricPolar {
        chart,
        hrep,
        vrep,
        lattice,
    })
}
