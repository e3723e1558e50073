//! Command-line front end: argument parsing, the on-disk artifact cache and
//! one handler per subcommand.

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::artifacts::{Artifacts, Hull};
use crate::exactcore::{Inequality, QVector};
use crate::parsimony::{
    all_subsets, classify_facets, conjecture_probe, facet_lifts, implication_check,
    nr_writability_sweep, parsimony_check_exact, parsimony_check_sampled, ridge_graph,
    ridge_matches_blocker, CheckMode, ClassifiedFacet, Relaxation, RidgeGraph,
};
use crate::polyhedra::bounded_subcomplex;
use crate::rotation::{characterisation_check, family_sweep, verify_equivalence};
use crate::{Error, Result};

pub const DEFAULT_SEED: u64 = 20_071_003;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
pub enum Format {
    Json,
    Dot,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
pub enum Mode {
    Sampled,
    Exact,
}

impl From<Mode> for CheckMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Sampled => CheckMode::Sampled,
            Mode::Exact => CheckMode::Exact,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand, Serialize, Deserialize)]
pub enum Command {
    /// Tours, graphical vertices, degree vectors and subtour rows.
    Generate,
    /// Facets, equations and f-vectors of S and P.
    Hull,
    /// Facet classes of P and the lifting of facets of S.
    Classify,
    /// Rotation complex and equivalence checks.
    Rotate,
    /// Ridge graph of P.
    Ridge,
    /// Parsimonious property of one relaxation.
    Parsimony,
    /// Component condition against parsimony over subsets of subtour rows.
    Conjecture,
}

#[derive(Debug, Parser)]
#[command(
    name = "tspoly",
    version,
    about = "Exact computations on TSP polyhedra of small complete graphs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Number of vertices.
    #[arg(long, global = true, default_value_t = 5)]
    pub n: usize,
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Output file; standard output when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// `subtour`, `all` (every NR facet), `none`, or a JSON file of inequalities.
    #[arg(long, global = true, default_value = "subtour")]
    pub rows: String,
    #[arg(long, global = true, value_enum, default_value_t = Mode::Exact)]
    pub mode: Mode,
    /// Sample count for sampled checks.
    #[arg(long, global = true, default_value_t = 100)]
    pub samples: usize,
    /// Also write the ridge graph as DOT to this file.
    #[arg(long, global = true)]
    pub dot: Option<PathBuf>,
    /// Directory for cached hulls.
    #[arg(long, global = true, default_value = ".tspoly-cache")]
    pub cache_dir: PathBuf,
    #[arg(long, global = true)]
    pub no_cache: bool,
}

/// Settings shared by every subcommand.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunConfig {
    pub n: usize,
    pub command: Command,
    pub seed: u64,
    pub out: Option<PathBuf>,
    pub format: Format,
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if !(3..=7).contains(&self.n) {
            return Err(Error::OutOfRange(format!("n = {} outside 3..=7", self.n)));
        }
        let needs_five = matches!(
            self.command,
            Command::Rotate
                | Command::Parsimony
                | Command::Conjecture
                | Command::Classify
                | Command::Ridge
        );
        if needs_five && self.n < 5 {
            return Err(Error::OutOfRange(format!(
                "{:?} needs n >= 5",
                self.command
            )));
        }
        Ok(())
    }
}

/// What a handler produced: the report and whether every check passed.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub report: Value,
    pub text: String,
    pub dot: Option<String>,
    pub passed: bool,
}

/// Hash of the sources that determine cached artifacts.
pub fn code_version() -> String {
    let mut h = Sha256::new();
    h.update(env!("CARGO_PKG_VERSION"));
    for src in [
        include_str!("instances.rs"),
        include_str!("polyhedra/dd.rs"),
        include_str!("polyhedra/rep.rs"),
        include_str!("polyhedra/lattice.rs"),
        include_str!("artifacts.rs"),
    ] {
        h.update(src.as_bytes());
    }
    h.finalize()
        .iter()
        .take(8)
        .map(|b| format!("{b:02x}"))
        .collect()
}

/// JSON files keyed by `(n, stage, code version)`.
#[derive(Debug, Clone)]
pub struct Cache {
    dir: Option<PathBuf>,
}

impl Cache {
    pub fn new(dir: Option<PathBuf>) -> Self {
        Cache { dir }
    }

    pub fn path(&self, n: usize, stage: &str) -> Option<PathBuf> {
        self.dir
            .as_ref()
            .map(|d| d.join(format!("n{n}-{stage}-{}.json", code_version())))
    }

    pub fn load<T: for<'de> Deserialize<'de>>(&self, n: usize, stage: &str) -> Option<T> {
        let text = std::fs::read_to_string(self.path(n, stage)?).ok()?;
        serde_json::from_str(&text).ok()
    }

    pub fn store<T: Serialize>(&self, n: usize, stage: &str, value: &T) -> Result<()> {
        if let Some(p) = self.path(n, stage) {
            std::fs::create_dir_all(p.parent().expect("joined path has a parent"))?;
            std::fs::write(p, serde_json::to_string(value)?)?;
        }
        Ok(())
    }

    /// Preloads cached graphical vertices and the hull of `P`, computing and
    /// storing them when missing.
    pub fn prepare(&self, art: &Artifacts) -> Result<()> {
        let n = art.inst().n();
        match self.load::<Vec<QVector>>(n, "gtsp") {
            Some(v) => art.set_gtsp_vertices(v),
            None => self.store(n, "gtsp", &art.gtsp_vertices())?,
        }
        match self.load::<Hull>(n, "p_hull") {
            Some(h) => art.set_p_hull(h),
            None => self.store(n, "p_hull", art.p_hull()?)?,
        }
        Ok(())
    }
}

fn classified(art: &Artifacts) -> Result<(Vec<ClassifiedFacet>, RidgeGraph)> {
    let classes = classify_facets(art.inst(), art.p_hull()?, art.s_hull()?)?;
    let ridge = ridge_graph(art.p_hull()?).with_classes(&classes);
    Ok((classes, ridge))
}

/// Resolves `--rows`.
pub fn load_rows(art: &Artifacts, spec: &str, classes: &[ClassifiedFacet]) -> Result<Relaxation> {
    match spec {
        "subtour" => Relaxation::subtour(art),
        "all" => Relaxation::all_nr_facets(art, classes),
        "none" => Relaxation::for_artifacts(art, Vec::new()),
        path => {
            let text = std::fs::read_to_string(path)?;
            let raw: Vec<Inequality> = serde_json::from_str(&text)?;
            let rows = raw
                .into_iter()
                .map(|i| Inequality::new(i.lhs().clone(), i.rhs().clone()))
                .collect();
            Relaxation::for_artifacts(art, rows)
        }
    }
}

pub fn cmd_generate(art: &Artifacts) -> Result<Outcome> {
    let inst = art.inst();
    let n = inst.n();
    let cycles = art.cycles();
    let mut warning = None;
    let gtsp = if n <= 6 {
        Some(art.gtsp_vertices().to_vec())
    } else {
        None
    };
    if n < 5 {
        warning = Some(format!(
            "n = {n}: non-negativity inequalities are not facets of S; rotation stages need n >= 5"
        ));
    }
    let report = json!({
        "n": n,
        "edges": inst.export(&[]).edges,
        "cycles": cycles,
        "gtsp_vertices": gtsp,
        "delta": (0..n).map(|u| inst.delta(u)).collect::<Result<Vec<_>>>()?,
        "z": inst.point_z(),
        "subtour_inequalities": if n >= 4 { inst.all_subtour_inequalities() } else { Vec::new() },
        "warning": warning,
    });
    let mut text = format!("n = {n}: {} cycles", cycles.len());
    if let Some(g) = &gtsp {
        text.push_str(&format!(", {} graphical vertices", g.len()));
    }
    if let Some(w) = &warning {
        eprintln!("warning: {w}");
    }
    Ok(Outcome {
        report,
        text,
        dot: None,
        passed: true,
    })
}

pub fn cmd_hull(art: &Artifacts) -> Result<Outcome> {
    let s = art.s_hull()?;
    let p = art.p_hull()?;
    let report = json!({
        "s": { "dim": s.dim(), "facets": s.hrep.inequalities, "equations": s.hrep.equations, "f_vector": s.lattice.f_vector() },
        "p": { "dim": p.dim(), "vertices": p.vrep.points.len(), "facets": p.hrep.inequalities, "f_vector": p.lattice.f_vector() },
    });
    let text = format!(
        "S: dim {}, {} facets, f = {:?}\nP: dim {}, {} vertices, {} facets, f = {:?}",
        s.dim(),
        s.hrep.inequalities.len(),
        s.lattice.f_vector(),
        p.dim(),
        p.vrep.points.len(),
        p.hrep.inequalities.len(),
        p.lattice.f_vector()
    );
    Ok(Outcome {
        report,
        text,
        dot: None,
        passed: true,
    })
}

pub fn cmd_classify(art: &Artifacts) -> Result<Outcome> {
    let (classes, _) = classified(art)?;
    let lifts = facet_lifts(art.p_hull()?, art.s_hull()?, &classes);
    let n = art.inst().n();
    let bad: Vec<&Inequality> = lifts
        .iter()
        .filter(|l| !l.is_simplex_lift(n, &classes))
        .map(|l| &l.s_facet)
        .collect();
    let count = |c| classes.iter().filter(|f| f.class == c).count();
    use crate::parsimony::FacetClass::*;
    let report = json!({
        "facets": classes,
        "counts": { "nonneg": count(Nonneg), "degree": count(Degree), "tt_nr": count(TtNr), "tt_non_nr": count(TtNonNr) },
        "lifts": lifts,
        "lift_failures": bad,
    });
    let text = format!(
        "nonneg {}, degree {}, tt_nr {}, tt_non_nr {}; lifting of S facets {}",
        count(Nonneg),
        count(Degree),
        count(TtNr),
        count(TtNonNr),
        if bad.is_empty() { "ok" } else { "FAILED" }
    );
    Ok(Outcome {
        report,
        text,
        dot: None,
        passed: bad.is_empty(),
    })
}

pub fn cmd_rotate(art: &Artifacts, seed: u64, samples: usize) -> Result<Outcome> {
    let charac = characterisation_check(art, 2, seed)?;
    let t2 = verify_equivalence(art)?;
    let fam = family_sweep(art, samples.min(20), seed)?;
    let passed = charac.passed() && t2.passed() && fam.passed();
    let text = format!(
        "rotation complex f = {:?}: characterisation {}\nequivalence with TT part f = {:?}: {}\nrotated families at {} points: {}",
        charac.f_vector,
        pass(charac.passed()),
        t2.tt_f_vector,
        pass(t2.passed()),
        fam.points,
        pass(fam.passed())
    );
    let report =
        json!({ "characterisation": charac, "equivalence": t2, "families": fam, "passed": passed });
    Ok(Outcome {
        report,
        text,
        dot: None,
        passed,
    })
}

fn pass(b: bool) -> &'static str {
    if b {
        "pass"
    } else {
        "FAIL"
    }
}

pub fn cmd_ridge(art: &Artifacts) -> Result<Outcome> {
    let (classes, ridge) = classified(art)?;
    let blocker = art.blocker()?;
    let matches = ridge_matches_blocker(&ridge, &classes, &bounded_subcomplex(&blocker.lattice));
    let connected = ridge.is_connected();
    let text = format!(
        "{} facets, {} ridges, connected {connected}, matches blocker skeleton {matches}",
        ridge.facets.len(),
        ridge.edges.len()
    );
    let dot = ridge.to_dot(art.inst());
    let report =
        json!({ "graph": ridge, "connected": connected, "matches_blocker_skeleton": matches });
    Ok(Outcome {
        report,
        text,
        dot: Some(dot),
        passed: connected && matches,
    })
}

pub fn cmd_parsimony(
    art: &Artifacts,
    rows: &str,
    mode: Mode,
    samples: usize,
    seed: u64,
) -> Result<Outcome> {
    let (classes, ridge) = classified(art)?;
    let r = load_rows(art, rows, &classes)?;
    let verdict = match mode {
        Mode::Exact => parsimony_check_exact(art.inst(), art.cycles(), &r)?,
        Mode::Sampled => parsimony_check_sampled(art.inst(), &r, samples, seed)?,
    };
    let writability = nr_writability_sweep(art.inst(), &classes, &r);
    let implication = implication_check(&ridge, &classes, &r, verdict.clone())?;
    // Relaxations known to be parsimonious must pass, and a parsimonious
    // relaxation must not write any non-NR facet.
    let expected = matches!(rows, "subtour" | "all");
    let writability_ok = !verdict.holds() || writability.writable.is_empty();
    let passed = implication.implication_holds && writability_ok && (!expected || verdict.holds());
    let text = format!(
        "{} rows: {:?} ({} vertices checked, {} samples); component condition {}; non-NR facets {}",
        r.rows.len(),
        verdict.status,
        verdict.vertices_checked,
        verdict.sample_count,
        implication.components.all_meet_nr,
        writability.non_nr_facets
    );
    let report = json!({ "relaxation": r, "verdict": verdict, "implication": implication, "writability": writability, "passed": passed });
    Ok(Outcome {
        report,
        text,
        dot: None,
        passed,
    })
}

pub fn cmd_conjecture(art: &Artifacts, mode: Mode, samples: usize, seed: u64) -> Result<Outcome> {
    let (classes, ridge) = classified(art)?;
    let k = art.inst().all_subtour_inequalities().len();
    if k > 16 {
        return Err(Error::OutOfRange(format!(
            "{k} subtour rows give too many subsets"
        )));
    }
    let summary = conjecture_probe(
        art,
        &ridge,
        &classes,
        all_subsets(k),
        mode.into(),
        samples,
        seed,
    )?;
    let passed = summary.implication_violations == 0;
    let text = format!(
        "{} relaxations, {} parsimonious, {} violate the necessary condition, {} contradict the converse",
        summary.entries.len(),
        summary.parsimonious,
        summary.implication_violations,
        summary.conjecture_violations
    );
    Ok(Outcome {
        report: serde_json::to_value(&summary)?,
        text,
        dot: None,
        passed,
    })
}

pub fn run_command(cli: &Cli) -> Result<Outcome> {
    let cfg = RunConfig {
        n: cli.n,
        command: cli.command,
        seed: cli.seed,
        out: cli.out.clone(),
        format: cli.format,
    };
    cfg.validate()?;
    let art = Artifacts::for_n(cfg.n)?;
    if cfg.command != Command::Generate && cfg.n <= 6 && !cli.no_cache {
        Cache::new(Some(cli.cache_dir.clone())).prepare(&art)?;
    }
    match cfg.command {
        Command::Generate => cmd_generate(&art),
        Command::Hull => cmd_hull(&art),
        Command::Classify => cmd_classify(&art),
        Command::Rotate => cmd_rotate(&art, cfg.seed, cli.samples),
        Command::Ridge => cmd_ridge(&art),
        Command::Parsimony => cmd_parsimony(&art, &cli.rows, cli.mode, cli.samples, cfg.seed),
        Command::Conjecture => cmd_conjecture(&art, cli.mode, cli.samples, cfg.seed),
    }
}

fn write_out(path: Option<&Path>, body: &str) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, body)?,
        None => print!("{body}"),
    }
    Ok(())
}

/// Parses arguments, runs, writes output; returns the process exit code.
pub fn main_with_args(args: impl IntoIterator<Item = String>) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match run_command(&cli) {
        Ok(outcome) => {
            let body = match cli.format {
                Format::Json => {
                    serde_json::to_string_pretty(&outcome.report).expect("reports serialise") + "\n"
                }
                Format::Text => outcome.text.clone() + "\n",
                Format::Dot => outcome
                    .dot
                    .clone()
                    .unwrap_or_else(|| outcome.text.clone() + "\n"),
            };
            if let Err(e) = write_out(cli.out.as_deref(), &body) {
                eprintln!("error: {e}");
                return 1;
            }
            if let (Some(path), Some(dot)) = (&cli.dot, &outcome.dot) {
                if let Err(e) = std::fs::write(path, dot) {
                    eprintln!("error: {e}");
                    return 1;
                }
            }
            if outcome.passed {
                0
            } else {
                eprintln!("check failed");
                1
            }
        }
        Err(e) => {
            eprintln!("{}", json!({ "error": e.to_string() }));
            1
        }
    }
}
