//! Integral-type contraction for two maps.
//!
//! Every metric value `t` is passed through `F(t) = ∫₀ᵗ ℧(ℓ) dℓ` before the
//! five-term comparison, for a density `℧` drawn from a closed catalog. Only
//! scalar-valued metrics are accepted: the upper limit of the integral has to
//! be a number.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::contraction::{
    sample_pairs, terms, ContractionCoefficients, InequalityReport, InequalityWitness,
};
use crate::error::{Error, Result};
use crate::maps::{MapSystem, SelfMap};
use crate::sampling::{chunk_rng, Sampling};
use crate::smetric::{CarrierSpace, VectorSMetric};
use crate::solver::{
    summarize_uniqueness, ConvergenceTrace, IterationConfig, Step, TraceRecorder, UniquenessReport,
};

pub const DEFAULT_PANELS: usize = 10_000;

/// Densities `℧` with known positivity and integrability.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Density {
    /// `℧ ≡ 1`
    One,
    /// `℧(ℓ) = 2ℓ`
    Linear,
    /// `℧(ℓ) = e^{−ℓ}`
    ExpDecay,
}

pub const GAUGE_CATALOG: &[&str] = &["one", "linear", "exp_decay"];

impl Density {
    pub fn from_name(name: &str) -> Result<Self> {
        match name {
            "one" => Ok(Density::One),
            "linear" => Ok(Density::Linear),
            "exp_decay" => Ok(Density::ExpDecay),
            other => Err(Error::Scenario(format!("unknown gauge: {other}"))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Density::One => "one",
            Density::Linear => "linear",
            Density::ExpDecay => "exp_decay",
        }
    }

    #[inline]
    pub fn eval(&self, l: f64) -> f64 {
        match self {
            Density::One => 1.0,
            Density::Linear => 2.0 * l,
            Density::ExpDecay => (-l).exp(),
        }
    }
}

/// A catalog density with its quadrature resolution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IntegralGauge {
    pub density: Density,
    pub panels: usize,
}

impl IntegralGauge {
    pub fn new(density: Density) -> Self {
        IntegralGauge {
            density,
            panels: DEFAULT_PANELS,
        }
    }

    pub fn with_panels(mut self, panels: usize) -> Result<Self> {
        if panels == 0 {
            return Err(Error::Parameter(
                "quadrature needs at least one panel".into(),
            ));
        }
        self.panels = panels;
        Ok(self)
    }

    /// `∫₀ᵗ ℧` by the composite trapezoid rule on `panels` equal panels.
    pub fn integral(&self, t: f64) -> Result<f64> {
        if !(t >= 0.0 && t.is_finite()) {
            return Err(Error::Domain(format!(
                "integral upper limit {t} must be finite and >= 0"
            )));
        }
        Ok(self.integral_unchecked(t))
    }

    fn integral_unchecked(&self, t: f64) -> f64 {
        if t == 0.0 {
            return 0.0;
        }
        let n = self.panels;
        let h = t / n as f64;
        let d = &self.density;
        // interior nodes summed first; the step is applied once at the end
        let interior = pairwise_sum(1, n, &|i| d.eval(i as f64 * h));
        h * (0.5 * d.eval(0.0) + interior + 0.5 * d.eval(t))
    }
}

/// Sum of `f(i)` for `i` in `lo..hi`, split in halves down to short blocks so
/// rounding grows with `log n` rather than `n`.
fn pairwise_sum(lo: usize, hi: usize, f: &impl Fn(usize) -> f64) -> f64 {
    if hi - lo <= 64 {
        return (lo..hi).map(f).sum();
    }
    let mid = lo + (hi - lo) / 2;
    pairwise_sum(lo, mid, f) + pairwise_sum(mid, hi, f)
}

/// `F(g, t) = ∫₀ᵗ ℧`.
#[allow(non_snake_case)]
pub fn F(g: &IntegralGauge, t: f64) -> Result<f64> {
    g.integral(t)
}

/// Rate `ϑ = (h1 + h2 + h5) / (1 − (h3 + 2h5))`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IntegralRate {
    pub theta: f64,
}

impl IntegralRate {
    pub fn from_coefficients(c: &ContractionCoefficients) -> Result<Self> {
        c.require_feasible()?;
        Ok(IntegralRate {
            theta: (c.h1 + c.h2 + c.h5) / (1.0 - (c.h3 + 2.0 * c.h5)),
        })
    }
}

fn require_scalar(s: &VectorSMetric) -> Result<()> {
    if !s.target().is_scalar() {
        return Err(Error::UnsupportedLattice(format!(
            "integral contraction needs a scalar metric; `{}` takes values in {}",
            s.name(),
            s.target()
        )));
    }
    Ok(())
}

/// Samples pairs `(ξ, γ)` and checks
/// `F(S(pξ,pξ,pγ)) ≤ Σ hᵢ·F(termᵢ) + τ` using `p` for both `p` and `q`.
pub fn check_integral_inequality(
    s: &VectorSMetric,
    p: &SelfMap,
    k: &SelfMap,
    c: &ContractionCoefficients,
    g: &IntegralGauge,
    sampling: &Sampling,
) -> Result<InequalityReport> {
    require_scalar(s)?;
    c.require_feasible()?;
    let m = MapSystem::with_oracle(s.carrier().clone(), p.clone(), p.clone(), k.clone(), |_| {
        None
    });
    let h = c.as_array();
    let tau = sampling.tau_eq;
    let (witness, checked) = sample_pairs(s, sampling, 30, |xi, gamma| {
        let t = terms(s, &m, xi, gamma)?;
        let lhs = g.integral(t.lhs.value())?;
        let mut rhs = 0.0;
        for (w, term) in h.iter().zip(&t.rhs) {
            rhs += w * g.integral(term.value())?;
        }
        Ok((lhs > rhs + tau).then(|| InequalityWitness {
            xi,
            gamma,
            lhs: vec![lhs],
            rhs: vec![rhs],
        }))
    })?;
    Ok(InequalityReport {
        passed: witness.is_none(),
        checked,
        witness,
    })
}

/// Two-map iteration `ξ_{b+1} = k⁻¹(p(ξ_b))`, `γ_b = k(ξ_b)`, with residuals
/// measured in integral space: `R_b = F(S(γ_b, γ_b, γ_{b+1}))`.
///
/// Stopping compares the raw metric value with `cfg.tol`, exactly as
/// [`crate::solver::iterate`] does, so both paths stop at the same step;
/// domination is checked against `ϑ^b · R₀`. `m.q` is ignored.
pub fn iterate_integral(
    s: &VectorSMetric,
    m: &MapSystem,
    c: &ContractionCoefficients,
    g: &IntegralGauge,
    x0: f64,
    cfg: &IterationConfig,
) -> Result<ConvergenceTrace> {
    require_scalar(s)?;
    let theta = IntegralRate::from_coefficients(c)?.theta;
    if cfg.max_iter == 0 || cfg.tol.is_nan() || cfg.tol <= 0.0 {
        return Err(Error::Parameter("max_iter and tol must be positive".into()));
    }
    let carrier = &m.carrier;
    if !carrier.contains(x0) {
        return Err(Error::Domain(format!("start {x0:?} outside the carrier")));
    }
    let (p, k) = (&m.p, &m.k);
    let mut xi = x0;
    let mut gamma = k.apply_in(carrier, xi)?;
    let mut rec = TraceRecorder::new(theta, *cfg, xi, gamma);
    for _ in 0..cfg.max_iter {
        let next_xi = m.k_preimage(p.apply_in(carrier, xi)?)?;
        let next_gamma = k.apply_in(carrier, next_xi)?;
        let dist = s.eval(gamma, gamma, next_gamma)?.value();
        let residual = g.integral(dist)?;
        xi = next_xi;
        gamma = next_gamma;
        if let Step::Stop = rec.record(xi, gamma, dist, residual) {
            break;
        }
    }
    Ok(rec.finish())
}

/// [`iterate_integral`] from each start, then a pairwise comparison of limits.
pub fn uniqueness_integral(
    s: &VectorSMetric,
    m: &MapSystem,
    c: &ContractionCoefficients,
    g: &IntegralGauge,
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
        .map(|&x0| iterate_integral(s, m, c, g, x0, cfg))
        .collect::<Result<Vec<_>>>()?;
    summarize_uniqueness(s, starts, &traces, cfg.gauge, cfg.tol)
}

/// Sanity probe for continuity of `f` on `pairs` random pairs `(x, x′)`.
///
/// Each pair is bisected 50 times, always keeping the half across which `f`
/// jumps more. A continuous map ends with an output gap far below the
/// starting one; a jump survives every halving.
pub fn continuity_probe(f: &SelfMap, carrier: &CarrierSpace, pairs: usize, seed: u64) -> bool {
    if !carrier.is_interval() {
        return true;
    }
    let mut rng = chunk_rng(seed, 40, 0);
    (0..pairs).all(|_| {
        let (mut a, mut b) = (carrier.draw(&mut rng), carrier.draw(&mut rng));
        let first = (f.apply(a) - f.apply(b)).abs();
        for _ in 0..50 {
            let mid = a + 0.5 * (b - a);
            if (f.apply(mid) - f.apply(a)).abs() >= (f.apply(b) - f.apply(mid)).abs() {
                b = mid;
            } else {
                a = mid;
            }
        }
        let last = (f.apply(a) - f.apply(b)).abs();
        last <= 1e-3 * first || last < 1e-9
    })
}
