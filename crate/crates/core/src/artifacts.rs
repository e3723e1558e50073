//! Lazily computed polyhedra for one instance, shared by the rotation and
//! parsimony checks.

use std::collections::HashMap;
use std::sync::OnceLock;

use crate::exactcore::{Inequality, QVector, Rat};
use crate::instances::Instance;
use crate::polyhedra::{
    blocking_polyhedron, bounded_subcomplex, common_refinement, deletion, face_lattice,
    BlockingPolyhedron, Complex, Face, HRep, SymmetricPolar, VRep,
};
use crate::ttgeom::{MetricCone, TtFan};
use crate::Result;

/// A polyhedron with both representations and its face lattice.
#[derive(Debug, Clone, serde::Serialize, serde::Deserialize)]
pub struct Hull {
    pub hrep: HRep,
    pub vrep: VRep,
    pub lattice: Complex,
}

impl Hull {
    pub fn from_vrep(v: VRep) -> Result<Self> {
        let hrep = crate::polyhedra::dd_convert(&v)?;
        let lattice = face_lattice(&hrep, &v)?;
        Ok(Hull {
            hrep,
            vrep: v,
            lattice,
        })
    }

    pub fn dim(&self) -> i64 {
        self.lattice.dim()
    }

    /// Facets as faces, in the order of `hrep.inequalities`.
    pub fn facets(&self) -> Vec<&Face> {
        let d = self.dim();
        (0..self.hrep.inequalities.len())
            .map(|i| {
                self.lattice
                    .faces
                    .iter()
                    .find(|f| f.dim == d - 1 && f.tight == [i])
                    .expect("each irredundant inequality defines a facet")
            })
            .collect()
    }

    /// Generator indices tight for an inequality valid on the polyhedron.
    pub fn tight_generators(&self, ineq: &Inequality) -> (Vec<usize>, Vec<usize>) {
        let points = (0..self.vrep.points.len())
            .filter(|&i| ineq.is_tight(&self.vrep.points[i]))
            .collect();
        let rays = (0..self.vrep.rays.len())
            .filter(|&i| ineq.lhs().dot(&self.vrep.rays[i]).is_zero())
            .collect();
        (points, rays)
    }
}

/// Faces of `P` keyed by their (point, ray) generator sets.
pub type FaceIndex = HashMap<(Vec<usize>, Vec<usize>), usize>;

/// Every derived object for one `n`, computed on first use.
pub struct Artifacts {
    inst: Instance,
    cycles: OnceLock<Vec<QVector>>,
    gtsp: OnceLock<Vec<QVector>>,
    s_hull: OnceLock<Hull>,
    p_hull: OnceLock<Hull>,
    p_index: OnceLock<FaceIndex>,
    blocker: OnceLock<BlockingPolyhedron>,
    polar: OnceLock<SymmetricPolar>,
    metric: OnceLock<MetricCone>,
    fan: OnceLock<TtFan>,
    dl: OnceLock<Complex>,
    rotation: OnceLock<Complex>,
    tt_part: OnceLock<Complex>,
}

macro_rules! lazy {
    ($self:ident . $field:ident, $init:expr) => {{
        if let Some(v) = $self.$field.get() {
            return Ok(v);
        }
        let v = $init;
        Ok($self.$field.get_or_init(|| v))
    }};
}

impl Artifacts {
    pub fn new(inst: Instance) -> Self {
        Artifacts {
            inst,
            cycles: OnceLock::new(),
            gtsp: OnceLock::new(),
            s_hull: OnceLock::new(),
            p_hull: OnceLock::new(),
            p_index: OnceLock::new(),
            blocker: OnceLock::new(),
            polar: OnceLock::new(),
            metric: OnceLock::new(),
            fan: OnceLock::new(),
            dl: OnceLock::new(),
            rotation: OnceLock::new(),
            tt_part: OnceLock::new(),
        }
    }

    pub fn for_n(n: usize) -> Result<Self> {
        Ok(Self::new(Instance::new(n)?))
    }

    pub fn inst(&self) -> &Instance {
        &self.inst
    }

    pub fn cycles(&self) -> &[QVector] {
        self.cycles.get_or_init(|| self.inst.hamiltonian_cycles())
    }

    pub fn gtsp_vertices(&self) -> &[QVector] {
        self.gtsp.get_or_init(|| self.inst.gtsp_vertices())
    }

    /// Preloads the vertex list of `P`, e.g. from an on-disk cache.
    pub fn set_gtsp_vertices(&self, v: Vec<QVector>) {
        let _ = self.gtsp.set(v);
    }

    pub fn set_p_hull(&self, h: Hull) {
        let _ = self.p_hull.set(h);
    }

    pub fn unit_rays(&self) -> Vec<QVector> {
        let m = self.inst.num_edges();
        (0..m).map(|j| QVector::unit(m, j)).collect()
    }

    pub fn s_hull(&self) -> Result<&Hull> {
        lazy!(
            self.s_hull,
            Hull::from_vrep(VRep::polytope(self.cycles().to_vec()))?
        )
    }

    pub fn p_hull(&self) -> Result<&Hull> {
        lazy!(
            self.p_hull,
            Hull::from_vrep(
                VRep::new(self.gtsp_vertices().to_vec(), self.unit_rays()).canonical()
            )?
        )
    }

    /// Face index of `P` by generator sets.
    pub fn p_face_index(&self) -> Result<&FaceIndex> {
        let hull = self.p_hull()?;
        lazy!(
            self.p_index,
            hull.lattice
                .faces
                .iter()
                .enumerate()
                .map(|(i, f)| (f.key(), i))
                .collect()
        )
    }

    /// The face of `P` on which a valid inequality is tight.
    pub fn p_face_of(&self, ineq: &Inequality) -> Result<usize> {
        let hull = self.p_hull()?;
        let key = hull.tight_generators(ineq);
        let index = self.p_face_index()?;
        Ok(match index.get(&key) {
            Some(&i) => i,
            None => {
                debug_assert!(key.0.is_empty());
                hull.lattice
                    .faces
                    .iter()
                    .position(Face::is_empty)
                    .expect("empty face present")
            }
        })
    }

    pub fn blocker(&self) -> Result<&BlockingPolyhedron> {
        lazy!(
            self.blocker,
            blocking_polyhedron(&VRep::polytope(self.gtsp_vertices().to_vec()))?
        )
    }

    pub fn polar(&self) -> Result<&SymmetricPolar> {
        lazy!(self.polar, crate::polyhedra::polar_s(&self.inst)?)
    }

    pub fn metric_cone(&self) -> Result<&MetricCone> {
        lazy!(self.metric, MetricCone::new(&self.inst)?)
    }

    pub fn tt_fan(&self) -> Result<&TtFan> {
        let polar = self.polar()?;
        let cone = self.metric_cone()?;
        lazy!(self.fan, TtFan::new(&self.inst, &polar.chart, cone))
    }

    /// Vertices of `S^△` polar to the non-negativity facets.
    pub fn nonneg_polar_vertices(&self) -> Result<Vec<usize>> {
        let polar = self.polar()?;
        let mut out = Vec::new();
        for e in 0..self.inst.num_edges() {
            let y = polar.polar_point(
                &self.inst,
                &Inequality::new(QVector::unit(self.inst.num_edges(), e), Rat::zero()),
            );
            if let Some(i) = polar.lattice.vertex_index(&y) {
                out.push(i);
            }
        }
        Ok(out)
    }

    /// `dl(N, S^△)` in chart coordinates.
    pub fn dl_complex(&self) -> Result<&Complex> {
        let polar = self.polar()?;
        let n_vertices = self.nonneg_polar_vertices()?;
        let removed: Vec<Face> = n_vertices
            .iter()
            .map(|&i| Face {
                dim: 0,
                points: vec![i],
                rays: vec![],
                tight: vec![],
            })
            .collect();
        lazy!(self.dl, deletion(&polar.lattice, &removed))
    }

    /// Common refinement of `dl(N, S^△)` with the flat TT fan.
    pub fn rotation_complex(&self) -> Result<&Complex> {
        let dl = self.dl_complex()?;
        let fan = self.tt_fan()?;
        lazy!(self.rotation, common_refinement(dl, &fan.flat)?)
    }

    /// `dl(S^◇, C̄(P^△))`: bounded faces of the blocking polyhedron avoiding
    /// every `δ_u`.
    pub fn tt_part_of_blocker(&self) -> Result<&Complex> {
        let b = self.blocker()?;
        let deltas: Vec<Face> = (0..self.inst.n())
            .map(|u| {
                let d = self.inst.delta(u).expect("valid vertex");
                let i = b
                    .lattice
                    .vertex_index(&d)
                    .expect("δ_u is a vertex of the blocker");
                Face {
                    dim: 0,
                    points: vec![i],
                    rays: vec![],
                    tight: vec![],
                }
            })
            .collect();
        lazy!(
            self.tt_part,
            deletion(&bounded_subcomplex(&b.lattice), &deltas)
        )
    }
}
