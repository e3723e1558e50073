//! Facet classes of `P`, its ridge graph, relaxations of `S` by NR rows and
//! the parsimonious property, decided exactly by cone membership or refuted
//! on sampled metric costs.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use petgraph::unionfind::UnionFind;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::artifacts::{Artifacts, Hull};
use crate::exactcore::{
    in_cone, ConeMembership, Inequality, LinearProgram, LpStatus, QVector, Rat,
};
use crate::instances::Instance;
use crate::polyhedra::export::{to_dot, DotNode};
use crate::polyhedra::{affine_dim, dd_convert_back_in, Complex, HRep};
use crate::ttgeom::{is_tt, rooted_triangles, shortcut};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FacetClass {
    Nonneg,
    Degree,
    TtNr,
    TtNonNr,
}

impl FacetClass {
    pub fn color(self) -> &'static str {
        match self {
            FacetClass::Nonneg => "lightgrey",
            FacetClass::Degree => "lightblue",
            FacetClass::TtNr => "palegreen",
            FacetClass::TtNonNr => "salmon",
        }
    }

    pub fn is_tt(self) -> bool {
        matches!(self, FacetClass::TtNr | FacetClass::TtNonNr)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifiedFacet {
    pub inequality: Inequality,
    pub class: FacetClass,
    /// Dimension of the facet's intersection with `S`.
    pub s_dim: i64,
}

fn is_unit(a: &QVector) -> bool {
    a.iter().filter(|v| !v.is_zero()).count() == 1 && a.iter().all(|v| v.is_zero() || v.is_one())
}

/// Dimension of the face of `S` cut out by an inequality valid on `cycles`.
fn s_face_dim(ineq: &Inequality, cycles: &[QVector]) -> i64 {
    let tight: Vec<QVector> = cycles
        .iter()
        .filter(|c| ineq.is_tight(c))
        .cloned()
        .collect();
    affine_dim(&tight, &[])
}

/// Splits the facets of `P` into non-negativity, degree, and TT facets, the
/// latter by whether they meet `S` in a facet.
pub fn classify_facets(inst: &Instance, p: &Hull, s: &Hull) -> Result<Vec<ClassifiedFacet>> {
    let cycles = &s.vrep.points;
    let s_dim = s.dim();
    p.hrep
        .inequalities
        .iter()
        .map(|ineq| {
            let dim = s_face_dim(ineq, cycles);
            let class = if ineq.rhs().is_zero() && is_unit(ineq.lhs()) {
                FacetClass::Nonneg
            } else if dim == s_dim {
                FacetClass::Degree
            } else if is_tt(inst, ineq.lhs()) {
                if dim == s_dim - 1 {
                    FacetClass::TtNr
                } else {
                    FacetClass::TtNonNr
                }
            } else {
                return Err(Error::Unclassifiable(format!("{ineq:?}")));
            };
            Ok(ClassifiedFacet {
                inequality: ineq.clone(),
                class,
                s_dim: dim,
            })
        })
        .collect()
}

/// The facets of `P` containing one facet of `S`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FacetLift {
    pub s_facet: Inequality,
    /// Not contained in a non-negativity facet.
    pub good: bool,
    pub containing: Vec<usize>,
    pub tt_lifts: Vec<usize>,
}

impl FacetLift {
    /// The facet of `S` lies in the `n` degree facets and one more facet:
    /// the unique TT lift, which is NR, when the facet is good, and a
    /// non-negativity facet otherwise.
    pub fn is_simplex_lift(&self, n: usize, classes: &[ClassifiedFacet]) -> bool {
        let degree = self
            .containing
            .iter()
            .filter(|&&i| classes[i].class == FacetClass::Degree)
            .count();
        let extra: Vec<usize> = self
            .containing
            .iter()
            .copied()
            .filter(|&i| classes[i].class != FacetClass::Degree)
            .collect();
        let extra_ok = match (self.good, extra.as_slice()) {
            (true, [g]) => self.tt_lifts == [*g] && classes[*g].class == FacetClass::TtNr,
            (false, [g]) => self.tt_lifts.is_empty() && classes[*g].class == FacetClass::Nonneg,
            _ => false,
        };
        self.containing.len() == n + 1 && degree == n && extra_ok
    }
}

pub fn facet_lifts(p: &Hull, s: &Hull, classes: &[ClassifiedFacet]) -> Vec<FacetLift> {
    let cycles = &s.vrep.points;
    s.hrep
        .inequalities
        .iter()
        .map(|sf| {
            let tight: Vec<&QVector> = cycles.iter().filter(|c| sf.is_tight(c)).collect();
            let containing: Vec<usize> = (0..p.hrep.inequalities.len())
                .filter(|&i| tight.iter().all(|c| p.hrep.inequalities[i].is_tight(c)))
                .collect();
            let good = (0..sf.dim()).all(|e| tight.iter().any(|c| !c[e].is_zero()));
            let tt_lifts = containing
                .iter()
                .copied()
                .filter(|&i| classes[i].class.is_tt())
                .collect();
            FacetLift {
                s_facet: sf.clone(),
                good,
                containing,
                tt_lifts,
            }
        })
        .collect()
}

/// Facets as nodes, adjacent when they meet in a ridge.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RidgeGraph {
    pub facets: Vec<Inequality>,
    pub classes: Vec<Option<FacetClass>>,
    pub edges: Vec<(usize, usize)>,
}

pub fn ridge_graph(hull: &Hull) -> RidgeGraph {
    let d = hull.dim();
    let facets = hull.facets();
    let lattice = &hull.lattice;
    let mut edges = Vec::new();
    for i in 0..facets.len() {
        for j in i + 1..facets.len() {
            let pts: Vec<QVector> = common(&facets[i].points, &facets[j].points)
                .map(|k| lattice.points[k].clone())
                .collect();
            let rays: Vec<QVector> = common(&facets[i].rays, &facets[j].rays)
                .map(|k| lattice.rays[k].clone())
                .collect();
            if affine_dim(&pts, &rays) == d - 2 {
                edges.push((i, j));
            }
        }
    }
    RidgeGraph {
        facets: hull.hrep.inequalities.clone(),
        classes: vec![None; facets.len()],
        edges,
    }
}

fn common<'a>(a: &'a [usize], b: &'a [usize]) -> impl Iterator<Item = usize> + 'a {
    a.iter()
        .copied()
        .filter(move |x| b.binary_search(x).is_ok())
}

impl RidgeGraph {
    pub fn with_classes(mut self, classes: &[ClassifiedFacet]) -> Self {
        self.classes = classes.iter().map(|c| Some(c.class)).collect();
        self
    }

    pub fn degree_of(&self, v: usize) -> usize {
        self.edges
            .iter()
            .filter(|&&(a, b)| a == v || b == v)
            .count()
    }

    /// Connected components of the subgraph induced by `keep`.
    pub fn components(&self, keep: &BTreeSet<usize>) -> Vec<Vec<usize>> {
        let mut uf = UnionFind::<usize>::new(self.facets.len());
        for &(a, b) in &self.edges {
            if keep.contains(&a) && keep.contains(&b) {
                uf.union(a, b);
            }
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for &v in keep {
            groups.entry(uf.find(v)).or_default().push(v);
        }
        let mut out: Vec<Vec<usize>> = groups.into_values().collect();
        out.sort();
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components(&(0..self.facets.len()).collect()).len() <= 1
    }

    pub fn to_dot(&self, inst: &Instance) -> String {
        let nodes: Vec<DotNode> = self
            .facets
            .iter()
            .enumerate()
            .map(|(i, f)| DotNode {
                id: i,
                label: facet_label(inst, f),
                color: self.classes[i].map(FacetClass::color),
            })
            .collect();
        to_dot("ridge", &nodes, &self.edges)
    }
}

/// Short label: the support of the left-hand side and the right-hand side.
pub fn facet_label(inst: &Instance, f: &Inequality) -> String {
    let terms: Vec<String> = f
        .lhs()
        .iter()
        .enumerate()
        .filter(|(_, v)| !v.is_zero())
        .map(|(i, v)| {
            if v.is_one() {
                format!("x{}", inst.edge(i))
            } else {
                format!("{v}x{}", inst.edge(i))
            }
        })
        .collect();
    format!("{} >= {}", terms.join("+"), f.rhs())
}

/// Whether the ridge graph restricted to facets other than non-negativity
/// facets is the bounded 1-skeleton of the blocking polyhedron.
pub fn ridge_matches_blocker(
    ridge: &RidgeGraph,
    classes: &[ClassifiedFacet],
    blocker: &Complex,
) -> bool {
    let mut node_of: HashMap<usize, usize> = HashMap::new();
    for (i, c) in classes.iter().enumerate() {
        if c.class == FacetClass::Nonneg {
            continue;
        }
        let Some(p) = c.inequality.unit_rhs_lhs() else {
            return false;
        };
        let Some(v) = blocker.vertex_index(&p) else {
            return false;
        };
        node_of.insert(i, v);
    }
    let from_ridge: BTreeSet<(usize, usize)> = ridge
        .edges
        .iter()
        .filter_map(|&(a, b)| {
            let (x, y) = (*node_of.get(&a)?, *node_of.get(&b)?);
            Some((x.min(y), x.max(y)))
        })
        .collect();
    let from_blocker: BTreeSet<(usize, usize)> = blocker
        .faces_of_dim(1)
        .filter(|f| f.rays.is_empty() && f.points.len() == 2)
        .map(|f| (f.points[0], f.points[1]))
        .collect();
    node_of.len() == blocker.points.len() && from_ridge == from_blocker
}

/// A relaxation `{x ≥ 0, δ_v·x ≥ 1 or = 1, Bx ≥ 1}` of `S` by NR rows.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Relaxation {
    pub n: usize,
    /// Rows defining NR facets of `P`, primitive integer form.
    pub rows: Vec<Inequality>,
}

impl Relaxation {
    /// Accepts rows only after checking that each is TT, valid on every
    /// cycle, and tight on a facet of `S`; such a row defines an NR facet of
    /// `P` without computing `P`.
    pub fn new(
        inst: &Instance,
        cycles: &[QVector],
        s_dim: i64,
        rows: Vec<Inequality>,
    ) -> Result<Self> {
        for r in &rows {
            if r.dim() != inst.num_edges() {
                return Err(Error::DimensionMismatch {
                    expected: inst.num_edges(),
                    got: r.dim(),
                });
            }
            if !r.rhs().is_positive() {
                return Err(Error::InvalidInstance(format!(
                    "row {r:?} cannot be normalised to right-hand side 1"
                )));
            }
            if !is_tt(inst, r.lhs()) {
                return Err(Error::InvalidInstance(format!(
                    "row {r:?} is not tight triangular"
                )));
            }
            if !cycles.iter().all(|c| r.is_satisfied(c)) {
                return Err(Error::InvalidInstance(format!("row {r:?} cuts off a tour")));
            }
            if s_face_dim(r, cycles) != s_dim - 1 {
                return Err(Error::InvalidInstance(format!(
                    "row {r:?} does not define a facet of S"
                )));
            }
        }
        let mut rows = rows;
        rows.sort();
        rows.dedup();
        Ok(Relaxation { n: inst.n(), rows })
    }

    pub fn for_artifacts(art: &Artifacts, rows: Vec<Inequality>) -> Result<Self> {
        let s_dim = art.inst().dim_symmetric() as i64;
        Relaxation::new(art.inst(), art.cycles(), s_dim, rows)
    }

    pub fn subtour(art: &Artifacts) -> Result<Self> {
        Relaxation::for_artifacts(art, art.inst().all_subtour_inequalities())
    }

    /// Every NR facet of `P`.
    pub fn all_nr_facets(art: &Artifacts, classes: &[ClassifiedFacet]) -> Result<Self> {
        let rows = classes
            .iter()
            .filter(|c| c.class == FacetClass::TtNr)
            .map(|c| c.inequality.clone())
            .collect();
        Relaxation::for_artifacts(art, rows)
    }

    fn hrep(&self, inst: &Instance, degree_equations: bool) -> HRep {
        let m = inst.num_edges();
        let mut ineqs: Vec<Inequality> = self.rows.clone();
        ineqs.extend((0..m).map(|e| inst.nonneg_inequality(e).expect("edge in range")));
        let mut eqs = Vec::new();
        for u in 0..inst.n() {
            let d = inst.delta(u).expect("vertex in range");
            if degree_equations {
                eqs.push(crate::exactcore::Equation::new(d, Rat::one()));
            } else {
                ineqs.push(Inequality::new(d, Rat::one()));
            }
        }
        HRep::new(ineqs, eqs)
    }

    fn lp(&self, inst: &Instance, cost: &QVector, degree_equations: bool) -> LinearProgram {
        let h = self.hrep(inst, degree_equations);
        let mut lp = LinearProgram::new(cost.clone()).all_nonneg();
        for i in h
            .inequalities
            .iter()
            .filter(|i| !(i.rhs().is_zero() && is_unit(i.lhs())))
        {
            lp = lp.ge(i.lhs().clone(), i.rhs().clone());
        }
        for e in &h.equations {
            lp = lp.eq(e.lhs().clone(), e.rhs().clone());
        }
        lp
    }

    /// Minimum of `cost` over the relaxation with degree equations or
    /// degree inequalities; the optimality certificate is re-checked.
    pub fn min_value(
        &self,
        inst: &Instance,
        cost: &QVector,
        degree_equations: bool,
    ) -> Result<Rat> {
        let lp = self.lp(inst, cost, degree_equations);
        let res = lp.solve();
        if res.status != LpStatus::Optimal || !res.verify(&lp) {
            return Err(Error::Lp(format!("relaxation LP ended {:?}", res.status)));
        }
        Ok(res.value.expect("optimal"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VerdictStatus {
    HoldsExact,
    HoldsOnSamples,
    Fails,
}

/// A metric cost whose minimum drops when degree equations are relaxed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GapWitness {
    pub cost: QVector,
    pub value_with_equations: Rat,
    pub value_with_inequalities: Rat,
    /// A vertex of the inequality form attaining the lower value, when known.
    pub vertex: Option<QVector>,
}

impl GapWitness {
    /// Recomputes both LP values and checks the gap and the metric property.
    pub fn recheck(&self, inst: &Instance, r: &Relaxation) -> Result<bool> {
        let eq = r.min_value(inst, &self.cost, true)?;
        let ge = r.min_value(inst, &self.cost, false)?;
        Ok(is_metric_cost(inst, &self.cost)
            && eq == self.value_with_equations
            && ge == self.value_with_inequalities
            && ge < eq)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ParsimonyVerdict {
    pub status: VerdictStatus,
    pub witness: Option<GapWitness>,
    pub sample_count: usize,
    pub vertices_checked: usize,
}

impl ParsimonyVerdict {
    pub fn holds(&self) -> bool {
        self.status != VerdictStatus::Fails
    }
}

pub fn is_metric_cost(inst: &Instance, c: &QVector) -> bool {
    rooted_triangles(inst)
        .iter()
        .all(|t| !shortcut(inst, t).dot(c).is_positive())
}

/// Uniform integer weights in `[1, 1000]` closed under shortest paths.
pub fn sample_metric(inst: &Instance, rng: &mut impl Rng) -> QVector {
    let n = inst.n();
    let mut d = vec![vec![0i64; n]; n];
    for e in inst.edges() {
        let w = rng.gen_range(1..=1000);
        d[e.lo][e.hi] = w;
        d[e.hi][e.lo] = w;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if d[i][k] + d[k][j] < d[i][j] {
                    d[i][j] = d[i][k] + d[k][j];
                }
            }
        }
    }
    inst.edges()
        .iter()
        .map(|e| Rat::from_int(d[e.lo][e.hi]))
        .collect()
}

/// Compares both LP values on `k` sampled metrics; can only refute.
pub fn parsimony_check_sampled(
    inst: &Instance,
    r: &Relaxation,
    k: usize,
    seed: u64,
) -> Result<ParsimonyVerdict> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..k {
        let cost = sample_metric(inst, &mut rng);
        let eq = r.min_value(inst, &cost, true)?;
        let ge = r.min_value(inst, &cost, false)?;
        if ge < eq {
            let witness = GapWitness {
                cost,
                value_with_equations: eq,
                value_with_inequalities: ge,
                vertex: None,
            };
            return Ok(ParsimonyVerdict {
                status: VerdictStatus::Fails,
                witness: Some(witness),
                sample_count: i + 1,
                vertices_checked: 0,
            });
        }
    }
    Ok(ParsimonyVerdict {
        status: VerdictStatus::HoldsOnSamples,
        witness: None,
        sample_count: k,
        vertices_checked: 0,
    })
}

/// Decides the parsimonious property exactly.
///
/// Metric costs are the dual cone of `cone{−s_{u,vw}}`, so the property holds
/// iff every vertex of the inequality form lies in the equation form plus
/// that cone. Vertices are first tested against `conv(tours) + cone{−s}`,
/// which lies in every equation form and is cached across relaxations; the
/// remaining ones go against the vertices of the equation form, and a
/// separating vector is a metric cost with a gap.
pub struct ExactChecker<'a> {
    inst: &'a Instance,
    cycle_gens: Vec<QVector>,
    shortcut_gens: Vec<QVector>,
    tour_cache: HashMap<QVector, bool>,
}

fn lift(x: &QVector, t: Rat) -> QVector {
    let mut y = x.clone();
    y.push(t);
    y
}

impl<'a> ExactChecker<'a> {
    pub fn new(inst: &'a Instance, cycles: &[QVector]) -> Self {
        let cycle_gens = cycles.iter().map(|c| lift(c, Rat::one())).collect();
        let shortcut_gens = rooted_triangles(inst)
            .iter()
            .map(|t| lift(&shortcut(inst, t).neg(), Rat::zero()))
            .collect();
        ExactChecker {
            inst,
            cycle_gens,
            shortcut_gens,
            tour_cache: HashMap::new(),
        }
    }

    fn generators(&self, points: &[QVector]) -> Vec<QVector> {
        let mut g: Vec<QVector> = points.to_vec();
        g.extend(self.shortcut_gens.iter().cloned());
        g
    }

    /// `v ∈ conv(tours) + cone{−s}` with a checked certificate.
    pub fn in_tours_plus_shortcuts(&mut self, v: &QVector) -> bool {
        if let Some(&b) = self.tour_cache.get(v) {
            return b;
        }
        let gens = self.generators(&self.cycle_gens);
        let p = lift(v, Rat::one());
        let m = in_cone(&p, &gens);
        assert!(m.verify(&p, &gens), "cone certificate failed to verify");
        let b = m.is_inside();
        self.tour_cache.insert(v.clone(), b);
        b
    }

    pub fn check(&mut self, r: &Relaxation) -> Result<ParsimonyVerdict> {
        let inst = self.inst;
        let m = inst.num_edges();
        let ge = dd_convert_back_in(&r.hrep(inst, false), m)?;
        let dmat = inst.matrix_d();
        let ones = QVector::constant(inst.n(), Rat::one());
        let mut eq_gens: Option<Vec<QVector>> = None;
        let mut checked = 0;
        for v in &ge.points {
            if dmat.mul_vec(v) == ones {
                continue;
            }
            checked += 1;
            if self.in_tours_plus_shortcuts(v) {
                continue;
            }
            if eq_gens.is_none() {
                let eq = dd_convert_back_in(&r.hrep(inst, true), m)?;
                eq_gens = Some(
                    self.generators(
                        &eq.points
                            .iter()
                            .map(|q| lift(q, Rat::one()))
                            .collect::<Vec<_>>(),
                    ),
                );
            }
            let gens = eq_gens.as_ref().expect("set above");
            let p = lift(v, Rat::one());
            match in_cone(&p, gens) {
                ConeMembership::Inside(t) => {
                    if !ConeMembership::Inside(t).verify(&p, gens) {
                        return Err(Error::CheckFailed(
                            "cone certificate failed to verify".into(),
                        ));
                    }
                }
                ConeMembership::Outside(y) => {
                    let cost = QVector::new(y.entries()[..m].to_vec()).primitive();
                    let witness = GapWitness {
                        value_with_equations: r.min_value(inst, &cost, true)?,
                        value_with_inequalities: r.min_value(inst, &cost, false)?,
                        cost,
                        vertex: Some(v.clone()),
                    };
                    if !witness.recheck(inst, r)? {
                        return Err(Error::CheckFailed(
                            "separating cost does not exhibit a gap".into(),
                        ));
                    }
                    return Ok(ParsimonyVerdict {
                        status: VerdictStatus::Fails,
                        witness: Some(witness),
                        sample_count: 0,
                        vertices_checked: checked,
                    });
                }
            }
        }
        Ok(ParsimonyVerdict {
            status: VerdictStatus::HoldsExact,
            witness: None,
            sample_count: 0,
            vertices_checked: checked,
        })
    }
}

pub fn parsimony_check_exact(
    inst: &Instance,
    cycles: &[QVector],
    r: &Relaxation,
) -> Result<ParsimonyVerdict> {
    if inst.n() > 6 {
        return Err(Error::OutOfRange(format!(
            "exact parsimony needs n <= 6, got {}",
            inst.n()
        )));
    }
    ExactChecker::new(inst, cycles).check(r)
}

/// The component condition on `G_B` for one relaxation.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ComponentReport {
    pub components: Vec<Vec<usize>>,
    pub all_meet_nr: bool,
}

/// Indices of the facets of `P` given by the rows of `r`.
pub fn row_facets(r: &Relaxation, classes: &[ClassifiedFacet]) -> Result<BTreeSet<usize>> {
    r.rows
        .iter()
        .map(|row| {
            classes
                .iter()
                .position(|c| &c.inequality == row)
                .ok_or_else(|| Error::InvalidInstance(format!("row {row:?} is not a facet of P")))
        })
        .collect()
}

/// `G_B`: the ridge graph without non-negativity, degree and row facets.
pub fn component_condition(
    ridge: &RidgeGraph,
    classes: &[ClassifiedFacet],
    rows: &BTreeSet<usize>,
) -> ComponentReport {
    let keep: BTreeSet<usize> = (0..classes.len())
        .filter(|i| classes[*i].class.is_tt() && !rows.contains(i))
        .collect();
    let components = ridge.components(&keep);
    let all_meet_nr = components
        .iter()
        .all(|c| c.iter().any(|&i| classes[i].class == FacetClass::TtNr));
    ComponentReport {
        components,
        all_meet_nr,
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ImplicationReport {
    pub components: ComponentReport,
    pub verdict: ParsimonyVerdict,
    /// Parsimony implies the component condition.
    pub implication_holds: bool,
}

pub fn implication_check(
    ridge: &RidgeGraph,
    classes: &[ClassifiedFacet],
    r: &Relaxation,
    verdict: ParsimonyVerdict,
) -> Result<ImplicationReport> {
    let rows = row_facets(r, classes)?;
    let components = component_condition(ridge, classes, &rows);
    let implication_holds = !verdict.holds() || components.all_meet_nr;
    Ok(ImplicationReport {
        components,
        verdict,
        implication_holds,
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SweepEntry {
    /// Indices into the candidate row list.
    pub rows: Vec<usize>,
    pub component_condition: bool,
    pub status: VerdictStatus,
    pub witness: Option<GapWitness>,
}

/// Per-subset component condition and parsimony verdict.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SweepSummary {
    pub candidates: Vec<Inequality>,
    pub entries: Vec<SweepEntry>,
    pub parsimonious: usize,
    /// Parsimonious but failing the component condition.
    pub implication_violations: usize,
    /// Component condition holds but parsimony fails.
    pub conjecture_violations: usize,
    pub exact: bool,
    pub non_nr_facets: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckMode {
    Sampled,
    Exact,
}

/// Runs the component condition and a parsimony check over subsets of
/// `candidates`, each given as the list of chosen indices.
#[allow(clippy::too_many_arguments)]
pub fn relaxation_sweep(
    art: &Artifacts,
    ridge: &RidgeGraph,
    classes: &[ClassifiedFacet],
    candidates: &[Inequality],
    subsets: impl IntoIterator<Item = Vec<usize>>,
    mode: CheckMode,
    samples: usize,
    seed: u64,
) -> Result<SweepSummary> {
    let inst = art.inst();
    let mut checker = ExactChecker::new(inst, art.cycles());
    let mut entries = Vec::new();
    for subset in subsets {
        let rows: Vec<Inequality> = subset.iter().map(|&i| candidates[i].clone()).collect();
        let r = Relaxation::for_artifacts(art, rows)?;
        let verdict = match mode {
            CheckMode::Exact => checker.check(&r)?,
            CheckMode::Sampled => parsimony_check_sampled(inst, &r, samples, seed)?,
        };
        let cond = component_condition(ridge, classes, &row_facets(&r, classes)?).all_meet_nr;
        entries.push(SweepEntry {
            rows: subset,
            component_condition: cond,
            status: verdict.status,
            witness: verdict.witness,
        });
    }
    let parsimonious = entries
        .iter()
        .filter(|e| e.status != VerdictStatus::Fails)
        .count();
    let implication_violations = entries
        .iter()
        .filter(|e| e.status != VerdictStatus::Fails && !e.component_condition)
        .count();
    let conjecture_violations = entries
        .iter()
        .filter(|e| e.status == VerdictStatus::Fails && e.component_condition)
        .count();
    Ok(SweepSummary {
        candidates: candidates.to_vec(),
        entries,
        parsimonious,
        implication_violations,
        conjecture_violations,
        exact: mode == CheckMode::Exact,
        non_nr_facets: classes
            .iter()
            .filter(|c| c.class == FacetClass::TtNonNr)
            .count(),
    })
}

/// All subsets of `0..k` in order of their bit masks.
pub fn all_subsets(k: usize) -> impl Iterator<Item = Vec<usize>> {
    (0u64..1 << k).map(move |mask| (0..k).filter(|i| mask >> i & 1 == 1).collect())
}

/// Tests the component condition's converse on subsets of NR rows.
pub fn conjecture_probe(
    art: &Artifacts,
    ridge: &RidgeGraph,
    classes: &[ClassifiedFacet],
    subsets: impl IntoIterator<Item = Vec<usize>>,
    mode: CheckMode,
    samples: usize,
    seed: u64,
) -> Result<SweepSummary> {
    let candidates = art.inst().all_subtour_inequalities();
    let summary = relaxation_sweep(
        art,
        ridge,
        classes,
        &candidates,
        subsets,
        mode,
        samples,
        seed,
    )?;
    Ok(summary)
}

/// Decomposition `c = Σ t_j b_j − Σ μ_v δ_v`, `γ = Σ t_j β_j − Σ μ_v`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Writability {
    pub writable: bool,
    pub row_weights: Option<QVector>,
    pub degree_weights: Option<QVector>,
    /// Farkas certificate when not writable.
    pub certificate: Option<QVector>,
}

pub fn nr_writability_check(
    inst: &Instance,
    facet: &Inequality,
    rows: &[Inequality],
) -> Writability {
    let m = inst.num_edges();
    let n = inst.n();
    let k = rows.len();
    let mut signs = vec![crate::exactcore::VarSign::NonNeg; k];
    signs.extend(vec![crate::exactcore::VarSign::Free; n]);
    let mut lp = LinearProgram::new(QVector::zeros(k + n)).with_signs(signs);
    let deltas: Vec<QVector> = (0..n)
        .map(|u| inst.delta(u).expect("vertex in range"))
        .collect();
    for e in 0..m {
        let mut row: Vec<Rat> = rows.iter().map(|r| r.lhs()[e].clone()).collect();
        row.extend(deltas.iter().map(|d| -&d[e]));
        lp = lp.eq(QVector::new(row), facet.lhs()[e].clone());
    }
    let mut row: Vec<Rat> = rows.iter().map(|r| r.rhs().clone()).collect();
    row.extend((0..n).map(|_| -Rat::one()));
    lp = lp.eq(QVector::new(row), facet.rhs().clone());
    let res = lp.solve();
    debug_assert!(res.verify(&lp));
    if res.status == LpStatus::Optimal {
        let p = res.primal.entries();
        Writability {
            writable: true,
            row_weights: Some(QVector::new(p[..k].to_vec())),
            degree_weights: Some(QVector::new(p[k..].to_vec())),
            certificate: None,
        }
    } else {
        Writability {
            writable: false,
            row_weights: None,
            degree_weights: None,
            certificate: Some(res.dual),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WritabilityReport {
    pub non_nr_facets: usize,
    pub vacuous: bool,
    pub writable: Vec<usize>,
}

/// Runs the writability test for every non-NR facet against `r`.
pub fn nr_writability_sweep(
    inst: &Instance,
    classes: &[ClassifiedFacet],
    r: &Relaxation,
) -> WritabilityReport {
    let non_nr: Vec<usize> = (0..classes.len())
        .filter(|&i| classes[i].class == FacetClass::TtNonNr)
        .collect();
    let writable = non_nr
        .iter()
        .copied()
        .filter(|&i| nr_writability_check(inst, &classes[i].inequality, &r.rows).writable)
        .collect();
    WritabilityReport {
        non_nr_facets: non_nr.len(),
        vacuous: non_nr.is_empty(),
        writable,
    }
}

/// `x ≥ 0` and `x ∈ conv(tours) + cone{−s}`.
pub fn minkowski_member(checker: &mut ExactChecker<'_>, x: &QVector) -> bool {
    x.is_nonnegative() && checker.in_tours_plus_shortcuts(x)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MinkowskiReport {
    pub vertices: usize,
    pub vertices_decomposed: usize,
    pub samples: usize,
    pub inside_samples: usize,
    pub disagreements: Vec<QVector>,
}

impl MinkowskiReport {
    pub fn passed(&self) -> bool {
        self.vertices == self.vertices_decomposed && self.disagreements.is_empty()
    }
}

/// A point near a random facet of `P`, pushed slightly in or out.
pub fn boundary_near_point(hull: &Hull, rng: &mut impl Rng) -> QVector {
    let facets = hull.facets();
    let f = facets[rng.gen_range(0..facets.len())];
    let pts = hull.lattice.face_points(f);
    let weights: Vec<i64> = pts.iter().map(|_| rng.gen_range(1..=10)).collect();
    let total: i64 = weights.iter().sum();
    let mut x = QVector::zeros(hull.vrep.points[0].len());
    for (p, w) in pts.iter().zip(&weights) {
        x = x.axpy(&Rat::new(*w, total), p);
    }
    for &r in &f.rays {
        if rng.gen_bool(0.5) {
            x = x.axpy(&Rat::new(rng.gen_range(1..=5), 4), &hull.lattice.rays[r]);
        }
    }
    let eps = Rat::new(1, rng.gen_range(20..=200));
    let dir: QVector = (0..x.len())
        .map(|_| Rat::from_int(rng.gen_range(-3..=3)))
        .collect();
    x.axpy(&eps, &dir)
}

pub fn minkowski_check(art: &Artifacts, samples: usize, seed: u64) -> Result<MinkowskiReport> {
    let hull = art.p_hull()?;
    let mut checker = ExactChecker::new(art.inst(), art.cycles());
    let vertices_decomposed = hull
        .vrep
        .points
        .iter()
        .filter(|v| minkowski_member(&mut checker, v))
        .count();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut disagreements = Vec::new();
    let mut inside = 0;
    for _ in 0..samples {
        let x = boundary_near_point(hull, &mut rng);
        let by_h = hull.hrep.contains(&x);
        inside += usize::from(by_h);
        if by_h != minkowski_member(&mut checker, &x) {
            disagreements.push(x);
        }
    }
    Ok(MinkowskiReport {
        vertices: hull.vrep.points.len(),
        vertices_decomposed,
        samples,
        inside_samples: inside,
        disagreements,
    })
}
