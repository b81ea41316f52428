//! Coefficients of the five-term contraction condition
//!
//! ```text
//! S(pξ, pξ, qγ) ⪯ h1·S(kξ, kξ, kγ) + h2·S(pξ, pξ, kξ) + h3·S(qγ, qγ, kγ)
//!               + h4·S(pξ, pξ, kγ) + h5·S(qγ, qγ, kξ)
//! ```
//!
//! together with its feasibility gate, the derived geometric rate and a
//! seeded sampler that looks for pairs `(ξ, γ)` violating it.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::LatticeElement;
use crate::maps::MapSystem;
use crate::sampling::{first_failure, first_failure_in, Sampling};
use crate::smetric::{VectorSMetric, EXHAUSTIVE_LIMIT};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ContractionCoefficients {
    pub h1: f64,
    pub h2: f64,
    pub h3: f64,
    pub h4: f64,
    pub h5: f64,
}

impl ContractionCoefficients {
    /// Validated coefficients. Zero is admitted for every weight.
    pub fn new(h1: f64, h2: f64, h3: f64, h4: f64, h5: f64) -> Result<Self> {
        let c = ContractionCoefficients { h1, h2, h3, h4, h5 };
        c.validate()?;
        Ok(c)
    }

    pub fn from_array(h: [f64; 5]) -> Result<Self> {
        Self::new(h[0], h[1], h[2], h[3], h[4])
    }

    pub fn as_array(&self) -> [f64; 5] {
        [self.h1, self.h2, self.h3, self.h4, self.h5]
    }

    fn validate(&self) -> Result<()> {
        for (i, h) in self.as_array().iter().enumerate() {
            if !h.is_finite() || *h < 0.0 {
                return Err(Error::Parameter(format!(
                    "coefficient h{} = {h} must be finite and nonnegative",
                    i + 1
                )));
            }
        }
        Ok(())
    }

    /// `2h1 + 2h2 + 2h3 + 4h4 + 4h5`.
    pub fn weighted_sum(&self) -> f64 {
        2.0 * self.h1 + 2.0 * self.h2 + 2.0 * self.h3 + 4.0 * self.h4 + 4.0 * self.h5
    }

    pub fn is_feasible(&self) -> Result<bool> {
        self.validate()?;
        Ok(self.weighted_sum() < 1.0)
    }

    /// Errors with the weighted sum when the gate is closed.
    pub fn require_feasible(&self) -> Result<()> {
        if !self.is_feasible()? {
            return Err(Error::Infeasible {
                weighted_sum: self.weighted_sum(),
            });
        }
        Ok(())
    }

    /// Rates for the odd and even half-steps of the alternating iteration:
    /// `(h1+h2+h5)/(1−h3−2h5)` and `(h1+h3+h4)/(1−h2−2h4)`.
    pub fn half_step_rates(&self) -> Result<(f64, f64)> {
        self.require_feasible()?;
        let a1 = (self.h1 + self.h2 + self.h5) / (1.0 - self.h3 - 2.0 * self.h5);
        let a2 = (self.h1 + self.h3 + self.h4) / (1.0 - self.h2 - 2.0 * self.h4);
        Ok((a1, a2))
    }

    /// Overall geometric rate `max(α₁, α₂)`, in `[0, 1)` under feasibility.
    pub fn rate(&self) -> Result<f64> {
        let (a1, a2) = self.half_step_rates()?;
        Ok(a1.max(a2))
    }

    /// `h1 + h4 + h5`, the factor in the uniqueness argument.
    pub fn uniqueness_factor(&self) -> f64 {
        self.h1 + self.h4 + self.h5
    }
}

pub fn feasibility(c: &ContractionCoefficients) -> Result<bool> {
    c.is_feasible()
}

pub fn rate(c: &ContractionCoefficients) -> Result<f64> {
    c.rate()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InequalityWitness {
    pub xi: f64,
    pub gamma: f64,
    pub lhs: Vec<f64>,
    pub rhs: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InequalityReport {
    pub passed: bool,
    pub checked: usize,
    pub witness: Option<InequalityWitness>,
}

/// The five metric terms on the right-hand side, in coefficient order.
pub(crate) struct Terms<T> {
    pub lhs: T,
    pub rhs: [T; 5],
}

/// Evaluates both sides at `(ξ, γ)`; map outputs are checked against the carrier.
pub(crate) fn terms(
    s: &VectorSMetric,
    m: &MapSystem,
    xi: f64,
    gamma: f64,
) -> Result<Terms<LatticeElement>> {
    let c = &m.carrier;
    let (pxi, qg) = (m.p.apply_in(c, xi)?, m.q.apply_in(c, gamma)?);
    let (kxi, kg) = (m.k.apply_in(c, xi)?, m.k.apply_in(c, gamma)?);
    Ok(Terms {
        lhs: s.eval(pxi, pxi, qg)?,
        rhs: [
            s.eval(kxi, kxi, kg)?,
            s.eval(pxi, pxi, kxi)?,
            s.eval(qg, qg, kg)?,
            s.eval(pxi, pxi, kg)?,
            s.eval(qg, qg, kxi)?,
        ],
    })
}

pub(crate) fn sample_pairs<F>(
    s: &VectorSMetric,
    sampling: &Sampling,
    salt: u32,
    trial: F,
) -> Result<(Option<InequalityWitness>, usize)>
where
    F: Fn(f64, f64) -> Result<Option<InequalityWitness>> + Sync,
{
    let carrier = s.carrier();
    match carrier.enumerate(EXHAUSTIVE_LIMIT) {
        Some(points) => {
            let pairs: Vec<(f64, f64)> = points
                .iter()
                .flat_map(|&a| points.iter().map(move |&b| (a, b)))
                .collect();
            let w = first_failure_in(&pairs, |&(a, b)| trial(a, b))?;
            Ok((w, pairs.len()))
        }
        None => {
            let w = first_failure(sampling.budget, sampling.seed, salt, |rng| {
                trial(carrier.draw(rng), carrier.draw(rng))
            })?;
            Ok((w, sampling.budget))
        }
    }
}

/// Samples pairs `(ξ, γ)` and checks `LHS ⪯ RHS + τ·1`.
///
/// The two-map form is the same check on a system with `q = p`.
pub fn check_inequality(
    s: &VectorSMetric,
    m: &MapSystem,
    c: &ContractionCoefficients,
    sampling: &Sampling,
) -> Result<InequalityReport> {
    c.require_feasible()?;
    let h = c.as_array();
    let tau = sampling.tau_eq;
    let (witness, checked) = sample_pairs(s, sampling, 10, |xi, gamma| {
        let t = terms(s, m, xi, gamma)?;
        let mut rhs = s.target().zero();
        for (w, term) in h.iter().zip(&t.rhs) {
            rhs = rhs.add(&term.scale(*w)?)?;
        }
        if t.lhs.leq_within(&rhs, tau)? {
            Ok(None)
        } else {
            Ok(Some(InequalityWitness {
                xi,
                gamma,
                lhs: t.lhs.coords().to_vec(),
                rhs: rhs.coords().to_vec(),
            }))
        }
    })?;
    Ok(InequalityReport {
        passed: witness.is_none(),
        checked,
        witness,
    })
}
