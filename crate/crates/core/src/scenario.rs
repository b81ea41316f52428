//! Scenario files and the runner behind the `vsmetric` binary.
//!
//! A scenario is a TOML document:
//!
//! ```toml
//! id = "example_4_2"
//! mode = "solve_integral"   # verify_axioms | check_contraction | solve_three_map
//!                           # | solve_two_map | solve_integral | weak_compat | uniqueness
//! seed = 7
//! x0 = 1.0                  # solve modes (defaults to starts[0])
//! starts = [0.0, 0.5, 1.0]  # uniqueness mode
//! gauge = "one"             # integral density: one | linear | exp_decay
//! n_q = 10000               # quadrature panels (optional)
//! continuous = "p"          # map declared continuous, spot-checked (optional)
//!
//! [lattice]                 # optional, default scalar
//! kind = "scalar"           # scalar | vector (dimension = d) | grid (points = g)
//!
//! [carrier]
//! lo = 0.0                  # interval carrier ...
//! hi = 1.0
//! grid = 33                 # ... optionally sampled on a grid
//! # points = [0.0, 0.5, 1.0] finite carrier instead
//!
//! [metric]
//! name = "sum_abs"          # sum_abs | max_of
//! base = "sum_abs"          # for max_of
//!
//! [maps]
//! preset = "example_4_2"    # or p / q / k entries:
//! # p = "identity"          #   a catalog name
//! # k = { a = "1/3", b = 0 }#   an affine map a·x + b; q defaults to p
//!
//! [coefficients]
//! h1 = "1/3"                # h1..h5, decimals or fractions; missing ones are 0
//!
//! [tolerances]              # all optional
//! tau_eq = 1e-12
//! tol = 1e-9
//! max_iter = 10000
//! budget = 10000
//! ```
//!
//! Numbers may be written as fractions (`"1/12"`) so that affine maps and
//! coefficients can be stated exactly.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::contraction::{check_inequality, ContractionCoefficients};
use crate::error::{Error, Result};
use crate::gauge::Gauge;
use crate::integral::{
    check_integral_inequality, continuity_probe, iterate_integral, uniqueness_integral, Density,
    IntegralGauge, GAUGE_CATALOG,
};
use crate::lattice::LatticeSpace;
use crate::maps::{example_4_2_system, map_from_catalog, MapForm, MapSystem, SelfMap, MAP_CATALOG};
use crate::sampling::Sampling;
use crate::smetric::{
    from_catalog, symmetry_witness, verify_axioms, CarrierSpace, VectorSMetric, METRIC_CATALOG,
};
use crate::solver::{
    point_of_coincidence, uniqueness_probe, weak_compatibility_report, ConvergenceTrace,
    IterationConfig, MapPair, UniquenessReport, UniquenessVerdict, Verdict,
};
use crate::TAU_EQ;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 2;
pub const EXIT_INPUT: i32 = 3;
pub const DEFAULT_OUT_DIR: &str = "out";
pub const OUT_DIR_ENV: &str = "VSMETRIC_OUT_DIR";
pub const PRESET_CATALOG: &[&str] = &["example_4_2"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    VerifyAxioms,
    CheckContraction,
    SolveThreeMap,
    SolveTwoMap,
    SolveIntegral,
    WeakCompat,
    Uniqueness,
}

impl Mode {
    fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "verify_axioms" => Mode::VerifyAxioms,
            "check_contraction" => Mode::CheckContraction,
            "solve_three_map" => Mode::SolveThreeMap,
            "solve_two_map" => Mode::SolveTwoMap,
            "solve_integral" => Mode::SolveIntegral,
            "weak_compat" => Mode::WeakCompat,
            "uniqueness" => Mode::Uniqueness,
            other => return Err(Error::Scenario(format!("unknown mode: {other}"))),
        })
    }

    fn needs_maps(self) -> bool {
        self != Mode::VerifyAxioms
    }

    fn needs_coefficients(self) -> bool {
        !matches!(self, Mode::VerifyAxioms | Mode::WeakCompat)
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum RawReal {
    Float(f64),
    Int(i64),
    Text(String),
}

impl RawReal {
    fn resolve(&self, field: &str) -> Result<f64> {
        let bad = || Error::Scenario(format!("invalid number in field: {field}"));
        let v = match self {
            RawReal::Float(f) => *f,
            RawReal::Int(i) => *i as f64,
            RawReal::Text(t) => match t.split_once('/') {
                Some((n, d)) => {
                    let n: f64 = n.trim().parse().map_err(|_| bad())?;
                    let d: f64 = d.trim().parse().map_err(|_| bad())?;
                    n / d
                }
                None => t.trim().parse().map_err(|_| bad())?,
            },
        };
        if !v.is_finite() {
            return Err(bad());
        }
        Ok(v)
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum RawMap {
    Named(String),
    Affine { a: RawReal, b: Option<RawReal> },
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawLattice {
    kind: Option<String>,
    dimension: Option<usize>,
    points: Option<usize>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCarrier {
    lo: Option<RawReal>,
    hi: Option<RawReal>,
    grid: Option<usize>,
    points: Option<Vec<RawReal>>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMetric {
    name: Option<String>,
    base: Option<String>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMaps {
    preset: Option<String>,
    p: Option<RawMap>,
    q: Option<RawMap>,
    k: Option<RawMap>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCoefficients {
    h1: Option<RawReal>,
    h2: Option<RawReal>,
    h3: Option<RawReal>,
    h4: Option<RawReal>,
    h5: Option<RawReal>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTolerances {
    tau_eq: Option<f64>,
    tol: Option<f64>,
    max_iter: Option<usize>,
    budget: Option<usize>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawScenario {
    id: Option<String>,
    mode: Option<String>,
    seed: Option<u64>,
    x0: Option<RawReal>,
    starts: Option<Vec<RawReal>>,
    gauge: Option<String>,
    n_q: Option<usize>,
    continuous: Option<String>,
    lattice: Option<RawLattice>,
    carrier: Option<RawCarrier>,
    metric: Option<RawMetric>,
    maps: Option<RawMaps>,
    coefficients: Option<RawCoefficients>,
    tolerances: Option<RawTolerances>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerances {
    pub tau_eq: f64,
    pub tol: f64,
    pub max_iter: usize,
    pub budget: usize,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            tau_eq: TAU_EQ,
            tol: crate::solver::DEFAULT_TOL,
            max_iter: crate::solver::DEFAULT_MAX_ITER,
            budget: 10_000,
        }
    }
}

/// A validated scenario, ready to [`run`].
#[derive(Debug, Clone)]
pub struct Scenario {
    pub id: String,
    pub mode: Mode,
    pub seed: u64,
    pub lattice: LatticeSpace,
    pub carrier: CarrierSpace,
    pub metric: VectorSMetric,
    pub maps: Option<MapSystem>,
    pub coefficients: Option<ContractionCoefficients>,
    pub tolerances: Tolerances,
    pub x0: Option<f64>,
    pub starts: Vec<f64>,
    pub gauge: Option<IntegralGauge>,
    pub continuous: Option<String>,
}

fn missing(field: &str) -> Error {
    Error::Scenario(format!("missing field: {field}"))
}

/// Parses and validates a scenario document.
///
/// Diagnostics name the first offending field (`missing field: mode`,
/// `unknown map: ...`, the weighted sum of infeasible coefficients, ...).
pub fn parse_scenario(text: &str) -> Result<Scenario> {
    parse_with_default_id(text, "scenario")
}

fn parse_with_default_id(text: &str, default_id: &str) -> Result<Scenario> {
    let raw: RawScenario = toml::from_str(text)
        .map_err(|e| Error::Scenario(format!("malformed scenario: {}", e.message())))?;
    let mode = Mode::parse(raw.mode.as_deref().ok_or_else(|| missing("mode"))?)?;
    let id = raw.id.clone().unwrap_or_else(|| default_id.to_string());
    if id.is_empty() || id.contains(['/', '\\']) {
        return Err(Error::Scenario(format!("invalid id: {id:?}")));
    }

    let lattice = parse_lattice(raw.lattice.unwrap_or_default())?;
    let carrier = parse_carrier(raw.carrier.ok_or_else(|| missing("carrier"))?)?;

    let metric_raw = raw.metric.unwrap_or_default();
    let metric_name = metric_raw.name.as_deref().unwrap_or("sum_abs");
    let metric = from_catalog(
        metric_name,
        metric_raw.base.as_deref(),
        carrier.clone(),
        lattice,
    )?;

    let mut tolerances = Tolerances::default();
    if let Some(t) = raw.tolerances {
        tolerances.tau_eq = t.tau_eq.unwrap_or(tolerances.tau_eq);
        tolerances.tol = t.tol.unwrap_or(tolerances.tol);
        tolerances.max_iter = t.max_iter.unwrap_or(tolerances.max_iter);
        tolerances.budget = t.budget.unwrap_or(tolerances.budget);
        if !(tolerances.tau_eq >= 0.0 && tolerances.tol > 0.0) {
            return Err(Error::Scenario("invalid field: tolerances".into()));
        }
        if tolerances.max_iter == 0 || tolerances.budget == 0 {
            return Err(Error::Scenario(
                "invalid field: tolerances (zero budget)".into(),
            ));
        }
    }

    let maps = if mode.needs_maps() {
        let raw_maps = raw.maps.ok_or_else(|| missing("maps"))?;
        Some(parse_maps(raw_maps, &carrier)?.with_tau(tolerances.tau_eq))
    } else {
        None
    };

    let coefficients = if mode.needs_coefficients() {
        let rc = raw.coefficients.ok_or_else(|| missing("coefficients"))?;
        let get = |v: &Option<RawReal>, f: &str| v.as_ref().map_or(Ok(0.0), |r| r.resolve(f));
        let c = ContractionCoefficients::new(
            get(&rc.h1, "coefficients.h1")?,
            get(&rc.h2, "coefficients.h2")?,
            get(&rc.h3, "coefficients.h3")?,
            get(&rc.h4, "coefficients.h4")?,
            get(&rc.h5, "coefficients.h5")?,
        )?;
        c.require_feasible()?;
        Some(c)
    } else {
        None
    };

    let gauge = match raw.gauge.as_deref() {
        Some(name) => {
            let g = IntegralGauge::new(Density::from_name(name)?);
            Some(match raw.n_q {
                Some(n) => g.with_panels(n)?,
                None => g,
            })
        }
        None if mode == Mode::SolveIntegral => return Err(missing("gauge")),
        None => None,
    };
    if gauge.is_some() && !lattice.is_scalar() {
        return Err(Error::UnsupportedLattice(format!(
            "integral gauges need a scalar lattice, got {lattice}"
        )));
    }

    let starts = raw
        .starts
        .unwrap_or_default()
        .iter()
        .map(|r| r.resolve("starts"))
        .collect::<Result<Vec<_>>>()?;
    let x0 = raw.x0.map(|r| r.resolve("x0")).transpose()?;
    for &x in starts.iter().chain(x0.iter()) {
        if !carrier.contains(x) {
            return Err(Error::Scenario(format!("start {x} outside the carrier")));
        }
    }
    let x0 = match mode {
        Mode::SolveThreeMap | Mode::SolveTwoMap | Mode::SolveIntegral => Some(
            x0.or_else(|| starts.first().copied())
                .ok_or_else(|| missing("x0"))?,
        ),
        _ => x0,
    };
    if mode == Mode::Uniqueness && starts.is_empty() {
        return Err(missing("starts"));
    }
    if let Some(name) = raw.continuous.as_deref() {
        if !matches!(name, "p" | "k") {
            return Err(Error::Scenario(format!(
                "invalid field: continuous = {name:?} (expected \"p\" or \"k\")"
            )));
        }
    }

    Ok(Scenario {
        id,
        mode,
        seed: raw.seed.unwrap_or(0),
        lattice,
        carrier,
        metric,
        maps,
        coefficients,
        tolerances,
        x0,
        starts,
        gauge,
        continuous: raw.continuous,
    })
}

/// Reads and parses a scenario file; a missing `id` defaults to the file stem.
pub fn parse_scenario_file(path: &Path) -> Result<Scenario> {
    let text =
        fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let stem = path
        .file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or("scenario");
    parse_with_default_id(&text, stem)
}

fn parse_lattice(raw: RawLattice) -> Result<LatticeSpace> {
    match raw.kind.as_deref().unwrap_or("scalar") {
        "scalar" => Ok(LatticeSpace::scalar()),
        "vector" => {
            LatticeSpace::vector(raw.dimension.ok_or_else(|| missing("lattice.dimension"))?)
        }
        "grid" => LatticeSpace::grid(raw.points.ok_or_else(|| missing("lattice.points"))?),
        other => Err(Error::Scenario(format!("unknown lattice kind: {other}"))),
    }
}

fn parse_carrier(raw: RawCarrier) -> Result<CarrierSpace> {
    if let Some(points) = raw.points {
        let pts = points
            .iter()
            .map(|p| p.resolve("carrier.points"))
            .collect::<Result<Vec<_>>>()?;
        return CarrierSpace::finite(pts);
    }
    let lo = raw
        .lo
        .ok_or_else(|| missing("carrier.lo"))?
        .resolve("carrier.lo")?;
    let hi = raw
        .hi
        .ok_or_else(|| missing("carrier.hi"))?
        .resolve("carrier.hi")?;
    let c = CarrierSpace::interval(lo, hi)?;
    match raw.grid {
        Some(g) => c.with_grid(g),
        None => Ok(c),
    }
}

fn parse_map(raw: &RawMap, field: &str) -> Result<SelfMap> {
    match raw {
        RawMap::Named(name) => map_from_catalog(name),
        RawMap::Affine { a, b } => {
            let a = a.resolve(&format!("{field}.a"))?;
            let b = b
                .as_ref()
                .map_or(Ok(0.0), |b| b.resolve(&format!("{field}.b")))?;
            Ok(SelfMap::affine(a, b))
        }
    }
}

/// Affine (and monotone) maps keep an interval invariant iff both endpoint
/// images stay inside; finite carriers are checked point by point.
fn check_invariant(map: &SelfMap, carrier: &CarrierSpace) -> Result<()> {
    let pts = match carrier.enumerate(usize::MAX) {
        Some(all) => all,
        None => {
            let (lo, hi) = carrier.bounds();
            if !matches!(map.form(), MapForm::Affine { .. } | MapForm::Monotone) {
                return Err(Error::Scenario(format!(
                    "map `{}` cannot be checked for invariance",
                    map.name()
                )));
            }
            vec![lo, hi]
        }
    };
    for x in pts {
        map.apply_in(carrier, x)?;
    }
    Ok(())
}

fn parse_maps(raw: RawMaps, carrier: &CarrierSpace) -> Result<MapSystem> {
    let system = if let Some(preset) = raw.preset.as_deref() {
        if raw.p.is_some() || raw.q.is_some() || raw.k.is_some() {
            return Err(Error::Scenario("maps.preset excludes p/q/k entries".into()));
        }
        match preset {
            "example_4_2" => {
                let e = example_4_2_system();
                MapSystem::with_oracle(carrier.clone(), e.p, e.q, e.k, |y| Some(3.0 * y))
            }
            other => return Err(Error::Scenario(format!("unknown map preset: {other}"))),
        }
    } else {
        let p = parse_map(raw.p.as_ref().ok_or_else(|| missing("maps.p"))?, "maps.p")?;
        let k = parse_map(raw.k.as_ref().ok_or_else(|| missing("maps.k"))?, "maps.k")?;
        match raw.q.as_ref() {
            Some(q) => MapSystem::new(carrier.clone(), p, parse_map(q, "maps.q")?, k)?,
            None => MapSystem::two_map(carrier.clone(), p, k)?,
        }
    };
    for m in [&system.p, &system.q, &system.k] {
        check_invariant(m, carrier)?;
    }
    Ok(system)
}

/// Outcome of one scenario. Everything except `wall_time` is a pure function
/// of the scenario and seed.
#[derive(Debug, Clone, Serialize)]
pub struct RunResult {
    pub scenario: String,
    pub mode: Mode,
    pub verdict: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub limit: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<String>,
    pub report: Value,
    #[serde(skip)]
    pub exit_code: i32,
    #[serde(skip)]
    pub wall_time: Duration,
}

impl RunResult {
    /// Deterministic JSON payload (excludes wall time).
    pub fn payload(&self) -> String {
        serde_json::to_string_pretty(self).expect("result serializes")
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report serializes")
}

struct Outcome {
    verdict: String,
    pass: bool,
    limit: Option<f64>,
    counterexample: Option<Value>,
    trace: Option<ConvergenceTrace>,
    report: Value,
}

impl Outcome {
    fn new(verdict: &str, pass: bool, report: Value) -> Self {
        Outcome {
            verdict: verdict.to_string(),
            pass,
            limit: None,
            counterexample: None,
            trace: None,
            report,
        }
    }
}

/// Runs a scenario. Solver modes write `<id>.trace.csv` into `out_dir` when
/// one is given.
pub fn run(s: &Scenario, out_dir: Option<&Path>) -> Result<RunResult> {
    let start = Instant::now();
    let sampling = Sampling::new(s.tolerances.budget, s.seed).with_tau(s.tolerances.tau_eq);
    let cfg = IterationConfig {
        max_iter: s.tolerances.max_iter,
        tol: s.tolerances.tol,
        gauge: Gauge::default(),
        tau_eq: s.tolerances.tau_eq,
    };
    let metric = &s.metric;
    let maps = || s.maps.as_ref().ok_or_else(|| missing("maps"));
    let coefficients = || {
        s.coefficients
            .as_ref()
            .ok_or_else(|| missing("coefficients"))
    };

    let outcome = match s.mode {
        Mode::VerifyAxioms => {
            let report = verify_axioms(metric, &sampling)?;
            let asym = symmetry_witness(metric, &sampling)?;
            let pass = report.all_passed() && asym.is_none();
            let mut o = Outcome::new(
                if pass { "pass" } else { "fail" },
                pass,
                json!({ "axioms": to_value(&report), "symmetry_witness": asym }),
            );
            o.counterexample = [&report.nonnegativity, &report.identity, &report.tetrahedral]
                .iter()
                .find_map(|a| a.counterexample.as_ref().map(to_value))
                .or_else(|| asym.map(|(x, y)| json!([x, y])));
            o
        }
        Mode::CheckContraction => {
            let m = maps()?;
            let c = coefficients()?;
            let report = match &s.gauge {
                Some(g) => check_integral_inequality(metric, &m.p, &m.k, c, g, &sampling)?,
                None => check_inequality(metric, m, c, &sampling)?,
            };
            let mut o = Outcome::new(
                if report.passed { "pass" } else { "fail" },
                report.passed,
                to_value(&report),
            );
            o.counterexample = report.witness.as_ref().map(to_value);
            o
        }
        Mode::SolveThreeMap | Mode::SolveTwoMap | Mode::SolveIntegral => {
            let base = maps()?;
            let two_map;
            let m = if s.mode == Mode::SolveThreeMap {
                base
            } else {
                two_map = MapSystem::with_oracle(
                    base.carrier.clone(),
                    base.p.clone(),
                    base.p.clone(),
                    base.k.clone(),
                    {
                        let b = base.clone();
                        move |y| b.k_preimage(y).ok()
                    },
                )
                .with_tau(base.tau_eq());
                &two_map
            };
            m.check_range_containment(s.tolerances.budget.min(1_000), s.seed)?;
            let c = coefficients()?;
            let x0 = s.x0.ok_or_else(|| missing("x0"))?;
            let trace = match (&s.gauge, s.mode) {
                (Some(g), Mode::SolveIntegral) => iterate_integral(metric, m, c, g, x0, &cfg)?,
                _ => crate::solver::iterate(metric, m, c, x0, &cfg)?,
            };
            let mut extra = json!({});
            let mut verdict = trace.verdict.as_str().to_string();
            let mut pass = trace.verdict == Verdict::Converged;
            if pass {
                let pc = point_of_coincidence(metric, m, &trace, s.tolerances.tol)?;
                if !pc.confirmed {
                    verdict = "no_coincidence".into();
                    pass = false;
                }
                extra["coincidence"] = to_value(&pc);
            }
            if let Some(which) = s.continuous.as_deref() {
                let map = if which == "k" { &m.k } else { &m.p };
                let ok = continuity_probe(map, &s.carrier, 100, s.seed);
                extra["continuity_probe"] = json!({ "map": which, "passed": ok });
                if !ok && pass {
                    verdict = "continuity_failed".into();
                    pass = false;
                }
            }
            let mut o = Outcome::new(
                &verdict,
                pass,
                json!({
                    "iterations": trace.iterations(),
                    "rate": trace.rate,
                    "final_residual": trace.residuals.last(),
                    "dominated": trace.is_dominated(s.tolerances.tau_eq),
                    "details": extra,
                }),
            );
            o.limit = trace.limit;
            o.trace = Some(trace);
            o
        }
        Mode::WeakCompat => {
            let m = maps()?;
            let pk = weak_compatibility_report(m, MapPair::PK, &sampling, s.tolerances.tol)?;
            let qk = weak_compatibility_report(m, MapPair::QK, &sampling, s.tolerances.tol)?;
            let pass = pk.compatible && qk.compatible;
            let summarize = |r: &crate::solver::CompatibilityReport| json!({ "compatible": r.compatible, "coincidences": r.coincidences.len(), "witness": r.witness });
            let mut o = Outcome::new(
                if pass { "compatible" } else { "not_compatible" },
                pass,
                json!({ "pk": summarize(&pk), "qk": summarize(&qk) }),
            );
            o.counterexample = pk.witness.or(qk.witness).map(|w| json!(w));
            o
        }
        Mode::Uniqueness => {
            let m = maps()?;
            let c = coefficients()?;
            let report: UniquenessReport = match &s.gauge {
                Some(g) => uniqueness_integral(metric, m, c, g, &cfg, &s.starts)?,
                None => uniqueness_probe(metric, m, c, &cfg, &s.starts)?,
            };
            let (verdict, pass) = match &report.verdict {
                UniquenessVerdict::Unique { .. } => ("unique", true),
                UniquenessVerdict::Distinct { .. } => ("distinct", false),
                UniquenessVerdict::Inconclusive { .. } => ("inconclusive", false),
            };
            let mut o = Outcome::new(verdict, pass, to_value(&report));
            o.limit = report.limit();
            if let UniquenessVerdict::Distinct { first, second } = report.verdict {
                o.counterexample = Some(json!([first, second]));
            }
            o
        }
    };

    let trace_path = match (&outcome.trace, out_dir) {
        (Some(trace), Some(dir)) => {
            fs::create_dir_all(dir)?;
            let path = dir.join(format!("{}.trace.csv", s.id));
            trace.write_csv(fs::File::create(&path)?)?;
            Some(path.display().to_string())
        }
        _ => None,
    };

    Ok(RunResult {
        scenario: s.id.clone(),
        mode: s.mode,
        verdict: outcome.verdict,
        limit: outcome.limit,
        counterexample: outcome.counterexample,
        trace: trace_path,
        report: outcome.report,
        exit_code: if outcome.pass {
            EXIT_OK
        } else {
            EXIT_VIOLATION
        },
        wall_time: start.elapsed(),
    })
}

/// Result of one file in a batch.
#[derive(Debug)]
pub struct FileOutcome {
    pub path: PathBuf,
    pub result: Result<RunResult>,
}

impl FileOutcome {
    pub fn exit_code(&self) -> i32 {
        match &self.result {
            Ok(r) => r.exit_code,
            Err(_) => EXIT_INPUT,
        }
    }
}

/// Parses and runs every file (in parallel), writing `<id>.json` payloads
/// and traces into `out_dir`. Returns outcomes in input order and the worst
/// exit code.
pub fn run_files(paths: &[PathBuf], out_dir: &Path, seed: Option<u64>) -> (Vec<FileOutcome>, i32) {
    let outcomes: Vec<FileOutcome> = paths
        .par_iter()
        .map(|path| {
            let result = parse_scenario_file(path).and_then(|mut s| {
                if let Some(seed) = seed {
                    s.seed = seed;
                }
                let r = run(&s, Some(out_dir))?;
                fs::create_dir_all(out_dir)?;
                fs::write(out_dir.join(format!("{}.json", s.id)), r.payload() + "\n")?;
                Ok(r)
            });
            FileOutcome {
                path: path.clone(),
                result,
            }
        })
        .collect();
    let code = outcomes
        .iter()
        .map(FileOutcome::exit_code)
        .max()
        .unwrap_or(EXIT_OK);
    (outcomes, code)
}

/// Lines printed by `list-catalog`.
pub fn catalog_listing() -> String {
    let mut out = String::new();
    let mut section = |title: &str, names: &[&str]| {
        out.push_str(title);
        out.push_str(":\n");
        for n in names {
            out.push_str("  ");
            out.push_str(n);
            out.push('\n');
        }
    };
    section("metrics", METRIC_CATALOG);
    section("maps", MAP_CATALOG);
    section("map presets", PRESET_CATALOG);
    section("gauges", GAUGE_CATALOG);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const EXAMPLE: &str = r#"
id = "example_4_2"
mode = "solve_integral"
seed = 1
x0 = 1.0
gauge = "one"
[carrier]
lo = 0
hi = 1
[metric]
name = "sum_abs"
[maps]
preset = "example_4_2"
[coefficients]
h1 = "1/3"
"#;

    #[test]
    fn example_scenario_parses() {
        let s = parse_scenario(EXAMPLE).unwrap();
        assert_eq!(s.mode, Mode::SolveIntegral);
        assert_eq!(s.metric.name(), "sum_abs");
        let m = s.maps.as_ref().unwrap();
        assert_eq!(m.p.apply(1.0), 1.0 / 12.0);
        assert_eq!(m.k.apply(1.0), 1.0 / 3.0);
        assert_eq!(s.coefficients.unwrap().h1, 1.0 / 3.0);
        assert_eq!(s.gauge.unwrap().density, Density::One);
    }

    #[test]
    fn empty_document_reports_mode() {
        assert_eq!(
            parse_scenario("").unwrap_err(),
            Error::Scenario("missing field: mode".into())
        );
    }

    #[test]
    fn infeasible_coefficients_report_weighted_sum() {
        let text = EXAMPLE.replace("h1 = \"1/3\"", "h1 = 0.5");
        let e = parse_scenario(&text).unwrap_err();
        assert_eq!(e, Error::Infeasible { weighted_sum: 1.0 });
        assert_eq!(
            e.to_string(),
            "infeasible coefficients: weighted sum 1.0 >= 1"
        );
    }

    #[test]
    fn field_diagnostics() {
        let cases = [
            (
                EXAMPLE.replace("solve_integral", "solve_everything"),
                "unknown mode: solve_everything",
            ),
            (
                EXAMPLE.replace("preset = \"example_4_2\"", "p = \"warp\"\nk = \"identity\""),
                "unknown map: warp",
            ),
            (
                EXAMPLE.replace("gauge = \"one\"\n", ""),
                "missing field: gauge",
            ),
            (EXAMPLE.replace("x0 = 1.0\n", ""), "missing field: x0"),
            (
                EXAMPLE.replace("[coefficients]\nh1 = \"1/3\"\n", ""),
                "missing field: coefficients",
            ),
            (
                EXAMPLE.replace("\"sum_abs\"", "\"taxicab\""),
                "unknown metric: taxicab",
            ),
            (
                EXAMPLE.replace("\"one\"", "\"cubic\""),
                "unknown gauge: cubic",
            ),
        ];
        for (text, msg) in cases {
            assert_eq!(parse_scenario(&text).unwrap_err().to_string(), msg);
        }
    }

    #[test]
    fn carrier_escape_rejected_before_running() {
        let text = EXAMPLE.replace(
            "preset = \"example_4_2\"",
            "p = { a = 2, b = 0 }\nk = \"identity\"",
        );
        assert!(matches!(
            parse_scenario(&text),
            Err(Error::CarrierEscape { .. })
        ));
    }

    #[test]
    fn example_runs_to_zero() {
        let s = parse_scenario(EXAMPLE).unwrap();
        let r = run(&s, None).unwrap();
        assert_eq!(r.verdict, "converged");
        assert_eq!(r.exit_code, EXIT_OK);
        assert!(r.limit.unwrap().abs() < 1e-9);
    }

    #[test]
    fn identity_contraction_check_fails() {
        let text = r#"
mode = "check_contraction"
[carrier]
lo = 0
hi = 1
[maps]
p = "identity"
k = "identity"
[coefficients]
h1 = 0.2
h5 = 0.05
"#;
        let r = run(&parse_scenario(text).unwrap(), None).unwrap();
        assert_eq!(r.verdict, "fail");
        assert_eq!(r.exit_code, EXIT_VIOLATION);
        assert!(r.counterexample.is_some());
    }

    #[test]
    fn catalog_lists_every_name() {
        let listing = catalog_listing();
        for name in [
            "sum_abs",
            "max_of",
            "identity",
            "example_4_2",
            "one",
            "linear",
            "exp_decay",
        ] {
            assert!(listing.contains(name), "{name}");
        }
    }
}
