//! The alternating common-fixed-point iteration and its companion probes.
//!
//! Starting from `ξ₀`, the iteration picks k-preimages
//!
//! ```text
//! ξ_{2b+1} = k⁻¹(p(ξ_{2b})),   ξ_{2b+2} = k⁻¹(q(ξ_{2b+1})),   γ_b = k(ξ_b)
//! ```
//!
//! and records the residuals `r_b = gauge(S(γ_b, γ_b, γ_{b+1}))`. Under the
//! contraction condition these are dominated by `α^b · r₀`, which is the
//! dominating sequence that certifies Cauchy behavior; the trace keeps both
//! so the domination can be checked after the fact.

use std::io::Write;

use rayon::prelude::*;
use serde::Serialize;

use crate::contraction::ContractionCoefficients;
use crate::error::{Error, Result};
use crate::gauge::Gauge;
use crate::lattice::LatticeElement;
use crate::maps::{MapSystem, SelfMap};
use crate::sampling::{chunk_rng, Sampling};
use crate::smetric::{grid_nodes, VectorSMetric};
use crate::TAU_EQ;

pub const DEFAULT_TOL: f64 = 1e-9;
pub const DEFAULT_MAX_ITER: usize = 10_000;
/// Consecutive over-rate steps tolerated before giving up.
pub const RATE_VIOLATION_STREAK: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IterationConfig {
    pub max_iter: usize,
    /// Stop once the gauge of `S(γ_b, γ_b, γ_{b+1})` drops below this.
    pub tol: f64,
    pub gauge: Gauge,
    pub tau_eq: f64,
}

impl Default for IterationConfig {
    fn default() -> Self {
        IterationConfig {
            max_iter: DEFAULT_MAX_ITER,
            tol: DEFAULT_TOL,
            gauge: Gauge::default(),
            tau_eq: TAU_EQ,
        }
    }
}

impl IterationConfig {
    pub fn new(max_iter: usize, tol: f64) -> Self {
        IterationConfig {
            max_iter,
            tol,
            ..Default::default()
        }
    }

    fn validate(&self) -> Result<()> {
        if self.max_iter == 0 {
            return Err(Error::Parameter("max_iter must be positive".into()));
        }
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(Error::Parameter(format!(
                "tol {} must be positive",
                self.tol
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Converged,
    BudgetExhausted,
    RateViolation,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Converged => "converged",
            Verdict::BudgetExhausted => "budget_exhausted",
            Verdict::RateViolation => "rate_violation",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceTrace {
    /// `ξ_0 ..= ξ_{N+1}`.
    pub xi: Vec<f64>,
    /// `γ_b = k(ξ_b)` for the same indices as `xi`.
    pub gamma: Vec<f64>,
    /// `r_0 ..= r_N`; one per step taken.
    pub residuals: Vec<f64>,
    /// Dominating sequence `α^b · r₀`, aligned with `residuals`.
    pub bounds: Vec<f64>,
    /// Step `b` exceeded `α · r_{b-1} + τ`.
    pub over_rate: Vec<bool>,
    pub rate: f64,
    pub gauge: Gauge,
    pub verdict: Verdict,
    pub limit: Option<f64>,
}

impl ConvergenceTrace {
    pub fn iterations(&self) -> usize {
        self.residuals.len()
    }

    pub fn converged(&self) -> bool {
        self.verdict == Verdict::Converged
    }

    /// `r_{b+1} / r_b` for every step with a nonzero predecessor.
    pub fn residual_ratios(&self) -> Vec<f64> {
        self.residuals
            .windows(2)
            .filter(|w| w[0] > 0.0)
            .map(|w| w[1] / w[0])
            .collect()
    }

    /// `r_b <= α^b · r₀ + slack` for every recorded `b`.
    pub fn is_dominated(&self, slack: f64) -> bool {
        self.residuals
            .iter()
            .zip(&self.bounds)
            .all(|(r, d)| *r <= d + slack)
    }

    /// Writes `iteration,xi,gamma,residual,bound,verdict` rows with 17
    /// significant digits. The final row carries the last iterate and the
    /// overall verdict; its residual and bound are empty.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let io = |e: csv::Error| Error::Io(e.to_string());
        w.write_record(["iteration", "xi", "gamma", "residual", "bound", "verdict"])
            .map_err(io)?;
        let last = self.xi.len() - 1;
        for b in 0..=last {
            let status = if b == last {
                self.verdict.as_str()
            } else if self.over_rate[b] {
                "over_rate"
            } else {
                "iterating"
            };
            let (res, bound) = if b < self.residuals.len() {
                (fmt_real(self.residuals[b]), fmt_real(self.bounds[b]))
            } else {
                (String::new(), String::new())
            };
            w.write_record([
                b.to_string(),
                fmt_real(self.xi[b]),
                fmt_real(self.gamma[b]),
                res,
                bound,
                status.to_string(),
            ])
            .map_err(io)?;
        }
        w.flush()?;
        Ok(())
    }
}

pub(crate) fn fmt_real(x: f64) -> String {
    format!("{x:.16e}")
}

/// Bookkeeping shared by every iteration path: residual domination,
/// over-rate streaks and the final verdict.
pub(crate) struct TraceRecorder {
    trace: ConvergenceTrace,
    cfg: IterationConfig,
    streak: usize,
}

pub(crate) enum Step {
    Continue,
    Stop,
}

impl TraceRecorder {
    pub fn new(rate: f64, cfg: IterationConfig, xi0: f64, gamma0: f64) -> Self {
        TraceRecorder {
            trace: ConvergenceTrace {
                xi: vec![xi0],
                gamma: vec![gamma0],
                residuals: Vec::new(),
                bounds: Vec::new(),
                over_rate: Vec::new(),
                rate,
                gauge: cfg.gauge,
                verdict: Verdict::BudgetExhausted,
                limit: None,
            },
            cfg,
            streak: 0,
        }
    }

    /// Records `ξ_{b+1}`, `γ_{b+1}` and the residual of step `b`. `stop_size`
    /// is the gauge compared against `tol`; `residual` is what the rate
    /// bound applies to (the same number unless residuals are transformed).
    pub fn record(&mut self, xi: f64, gamma: f64, stop_size: f64, residual: f64) -> Step {
        let t = &mut self.trace;
        let b = t.residuals.len();
        let r0 = t.residuals.first().copied().unwrap_or(residual);
        let over = b > 0 && residual > t.rate * t.residuals[b - 1] + self.cfg.tau_eq;
        t.xi.push(xi);
        t.gamma.push(gamma);
        t.residuals.push(residual);
        t.bounds.push(t.rate.powi(b as i32) * r0);
        t.over_rate.push(over);
        self.streak = if over { self.streak + 1 } else { 0 };
        if stop_size < self.cfg.tol {
            t.verdict = if t.is_dominated(self.cfg.tau_eq) {
                Verdict::Converged
            } else {
                Verdict::RateViolation
            };
            return Step::Stop;
        }
        if self.streak >= RATE_VIOLATION_STREAK {
            t.verdict = Verdict::RateViolation;
            return Step::Stop;
        }
        Step::Continue
    }

    pub fn finish(mut self) -> ConvergenceTrace {
        // the row after the final step has no outgoing residual
        self.trace.over_rate.push(false);
        if self.trace.verdict == Verdict::Converged {
            self.trace.limit = self.trace.gamma.last().copied();
        }
        self.trace
    }
}

/// Runs the alternating three-map iteration from `x0`.
///
/// The rate used for domination is `c.rate()`; infeasible coefficients are
/// rejected before any step is taken.
pub fn iterate(
    s: &VectorSMetric,
    m: &MapSystem,
    c: &ContractionCoefficients,
    x0: f64,
    cfg: &IterationConfig,
) -> Result<ConvergenceTrace> {
    let rate = c.rate()?;
    cfg.validate()?;
    let carrier = &m.carrier;
    if !carrier.contains(x0) {
        return Err(Error::Domain(format!("start {x0:?} outside the carrier")));
    }
    let mut xi = x0;
    let mut gamma = m.k.apply_in(carrier, xi)?;
    let mut rec = TraceRecorder::new(rate, *cfg, xi, gamma);
    for b in 0..cfg.max_iter {
        let map = if b % 2 == 0 { &m.p } else { &m.q };
        let target = map.apply_in(carrier, xi)?;
        let next_xi = m.k_preimage(target)?;
        let next_gamma = m.k.apply_in(carrier, next_xi)?;
        let size = cfg.gauge.measure(&s.eval(gamma, gamma, next_gamma)?);
        xi = next_xi;
        gamma = next_gamma;
        if let Step::Stop = rec.record(xi, gamma, size, size) {
            break;
        }
    }
    Ok(rec.finish())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoincidenceReport {
    pub gamma: f64,
    /// Coincidence point: `k(omega) = gamma`.
    pub omega: f64,
    pub p_gap: f64,
    pub q_gap: f64,
    pub confirmed: bool,
}

/// Locates `ω` with `k(ω) = γ` and measures how far `p(ω)` and `q(ω)` are
/// from `γ`.
pub fn coincidence_at(
    s: &VectorSMetric,
    m: &MapSystem,
    gamma: f64,
    gauge: Gauge,
    tol: f64,
) -> Result<CoincidenceReport> {
    let omega = m.k_preimage(gamma)?;
    let gap = |map: &SelfMap| -> Result<f64> {
        let v = map.apply_in(&m.carrier, omega)?;
        Ok(gauge.measure(&s.eval(v, v, gamma)?))
    };
    let (p_gap, q_gap) = (gap(&m.p)?, gap(&m.q)?);
    Ok(CoincidenceReport {
        gamma,
        omega,
        p_gap,
        q_gap,
        confirmed: p_gap < tol && q_gap < tol,
    })
}

/// Point-of-coincidence check at the limit of a converged trace.
pub fn point_of_coincidence(
    s: &VectorSMetric,
    m: &MapSystem,
    trace: &ConvergenceTrace,
    tol: f64,
) -> Result<CoincidenceReport> {
    let gamma = trace
        .limit
        .ok_or_else(|| Error::Parameter("trace has no limit; it did not converge".into()))?;
    coincidence_at(s, m, gamma, trace.gauge, tol)
}

/// `gauge(S(f(γ), f(γ), γ))` for `f = p, q, k`; all near zero at a common
/// fixed point.
pub fn fixed_point_gaps(
    s: &VectorSMetric,
    m: &MapSystem,
    gamma: f64,
    gauge: Gauge,
) -> Result<[f64; 3]> {
    let gap = |map: &SelfMap| -> Result<f64> {
        let v = map.apply_in(&m.carrier, gamma)?;
        Ok(gauge.measure(&s.eval(v, v, gamma)?))
    };
    Ok([gap(&m.p)?, gap(&m.q)?, gap(&m.k)?])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MapPair {
    /// `(p, k)`
    PK,
    /// `(q, k)`
    QK,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CompatibilityReport {
    pub compatible: bool,
    pub coincidences: Vec<f64>,
    /// Coincidence point where the two compositions differ.
    pub witness: Option<f64>,
}

/// Weak compatibility of `(p, k)` or `(q, k)`: the maps commute at every
/// coincidence point found.
pub fn weak_compatibility_check(
    m: &MapSystem,
    pair: MapPair,
    sampling: &Sampling,
    tol: f64,
) -> Result<bool> {
    Ok(weak_compatibility_report(m, pair, sampling, tol)?.compatible)
}

pub fn weak_compatibility_report(
    m: &MapSystem,
    pair: MapPair,
    sampling: &Sampling,
    tol: f64,
) -> Result<CompatibilityReport> {
    let f = match pair {
        MapPair::PK => &m.p,
        MapPair::QK => &m.q,
    };
    weakly_compatible(f, &m.k, &m.carrier, sampling, tol)
}

/// Searches coincidence points of `f` and `g` and checks `f(g(α)) = g(f(α))`
/// at each.
///
/// Finite carriers are scanned point by point. Intervals are scanned on a
/// uniform grid of `sampling.budget` nodes plus as many seeded random
/// points; every sign change of `f − g` between neighboring nodes is refined
/// by bisection.
pub fn weakly_compatible(
    f: &SelfMap,
    g: &SelfMap,
    carrier: &crate::smetric::CarrierSpace,
    sampling: &Sampling,
    tol: f64,
) -> Result<CompatibilityReport> {
    let diff = |x: f64| f.apply(x) - g.apply(x);
    let mut coincidences = Vec::new();
    match carrier.enumerate(usize::MAX) {
        Some(points) => coincidences.extend(points.into_iter().filter(|&x| diff(x).abs() < tol)),
        None => {
            let (lo, hi) = carrier.bounds();
            let nodes = grid_nodes(lo, hi, sampling.budget.max(2));
            let values: Vec<f64> = nodes.iter().map(|&x| diff(x)).collect();
            for (i, &x) in nodes.iter().enumerate() {
                if values[i].abs() < tol {
                    coincidences.push(x);
                } else if i + 1 < nodes.len()
                    && values[i + 1].abs() >= tol
                    && values[i].signum() != values[i + 1].signum()
                {
                    let root = bisect_sign_change(diff, x, nodes[i + 1]);
                    if diff(root).abs() < tol {
                        coincidences.push(root);
                    }
                }
            }
            let mut rng = chunk_rng(sampling.seed, 20, 0);
            for _ in 0..sampling.budget {
                let x = carrier.draw(&mut rng);
                if diff(x).abs() < tol {
                    coincidences.push(x);
                }
            }
        }
    }
    let witness = coincidences.iter().copied().find(|&a| {
        let fg = f.apply(g.apply(a));
        let gf = g.apply(f.apply(a));
        let gap = (fg - gf).abs();
        gap.is_nan() || gap >= tol
    });
    Ok(CompatibilityReport {
        compatible: witness.is_none(),
        coincidences,
        witness,
    })
}

fn bisect_sign_change(d: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let lo_sign = d(lo).signum();
    for _ in 0..200 {
        let mid = lo + 0.5 * (hi - lo);
        if mid <= lo || mid >= hi {
            break;
        }
        let v = d(mid);
        if v == 0.0 {
            return mid;
        }
        if v.signum() == lo_sign {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    if d(lo).abs() <= d(hi).abs() {
        lo
    } else {
        hi
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum UniquenessVerdict {
    Unique {
        limit: f64,
    },
    /// Two runs settled on limits farther apart than `tol`.
    Distinct {
        first: f64,
        second: f64,
    },
    /// The run from `start` did not converge.
    Inconclusive {
        start: f64,
        verdict: Verdict,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UniquenessReport {
    pub verdict: UniquenessVerdict,
    pub limits: Vec<Option<f64>>,
    pub iterations: Vec<usize>,
}

impl UniquenessReport {
    pub fn unique(&self) -> bool {
        matches!(self.verdict, UniquenessVerdict::Unique { .. })
    }

    pub fn limit(&self) -> Option<f64> {
        match self.verdict {
            UniquenessVerdict::Unique { limit } => Some(limit),
            _ => None,
        }
    }
}

pub(crate) fn summarize_uniqueness(
    s: &VectorSMetric,
    starts: &[f64],
    traces: &[ConvergenceTrace],
    gauge: Gauge,
    tol: f64,
) -> Result<UniquenessReport> {
    let limits: Vec<Option<f64>> = traces.iter().map(|t| t.limit).collect();
    let iterations = traces.iter().map(|t| t.iterations()).collect();
    let verdict = if let Some((start, t)) = starts.iter().zip(traces).find(|(_, t)| !t.converged())
    {
        UniquenessVerdict::Inconclusive {
            start: *start,
            verdict: t.verdict,
        }
    } else {
        let ls: Vec<f64> = limits.iter().map(|l| l.expect("converged")).collect();
        let mut verdict = UniquenessVerdict::Unique { limit: ls[0] };
        'outer: for i in 0..ls.len() {
            for j in i + 1..ls.len() {
                let d: LatticeElement = s.eval(ls[i], ls[i], ls[j])?;
                if gauge.measure(&d) >= tol {
                    verdict = UniquenessVerdict::Distinct {
                        first: ls[i],
                        second: ls[j],
                    };
                    break 'outer;
                }
            }
        }
        verdict
    };
    Ok(UniquenessReport {
        verdict,
        limits,
        iterations,
    })
}

/// Runs [`iterate`] from every start (in parallel) and compares the limits.
pub fn uniqueness_probe(
    s: &VectorSMetric,
    m: &MapSystem,
    c: &ContractionCoefficients,
    cfg: &IterationConfig,
    starts: &[f64],
) -> Result<UniquenessReport> {
    c.require_feasible()?;
    if starts.is_empty() {
        return Err(Error::Parameter(
            "uniqueness probe needs at least one start".into(),
        ));
    }
    let traces = starts
        .par_iter()
        .map(|&x0| iterate(s, m, c, x0, cfg))
        .collect::<Result<Vec<_>>>()?;
    summarize_uniqueness(s, starts, &traces, cfg.gauge, cfg.tol)
}
