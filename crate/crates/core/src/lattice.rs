//! Finite-dimensional linear lattices (Riesz spaces).
//!
//! Three concrete instances are provided: the scalar line, `R^d` under the
//! componentwise order, and a sampled function lattice that evaluates
//! functions on a uniform grid of `[0, 1]`. All three share the componentwise
//! order on their coordinates; they differ in shape, and values from
//! different spaces never mix.
//!
//! ```
//! use vsmetric::lattice::LatticeSpace;
//!
//! let plane = LatticeSpace::vector(2).unwrap();
//! let x = plane.element(vec![1.0, 3.0]).unwrap();
//! let y = plane.element(vec![2.0, 2.0]).unwrap();
//! // incomparable, but the pair still has a supremum
//! assert!(!x.leq(&y).unwrap() && !y.leq(&x).unwrap());
//! assert_eq!(x.join(&y).unwrap().coords(), &[2.0, 3.0]);
//! ```

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gauge::Gauge;
use crate::TAU_EQ;

/// Default number of terms generated by [`archimedean_probe`].
pub const DEFAULT_PROBE_TERMS: usize = 1_000_000;

/// Shape and order of a lattice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum OrderKind {
    Scalar,
    Componentwise {
        dimension: usize,
    },
    /// Functions on `[0, 1]` sampled at `points` uniformly spaced nodes.
    Grid {
        points: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LatticeSpace {
    kind: OrderKind,
}

impl LatticeSpace {
    pub fn scalar() -> Self {
        LatticeSpace {
            kind: OrderKind::Scalar,
        }
    }

    pub fn vector(dimension: usize) -> Result<Self> {
        if dimension == 0 {
            return Err(Error::Parameter(
                "vector lattice needs dimension >= 1".into(),
            ));
        }
        Ok(LatticeSpace {
            kind: OrderKind::Componentwise { dimension },
        })
    }

    pub fn grid(points: usize) -> Result<Self> {
        if points == 0 {
            return Err(Error::Parameter(
                "grid lattice needs at least one node".into(),
            ));
        }
        Ok(LatticeSpace {
            kind: OrderKind::Grid { points },
        })
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        match self.kind {
            OrderKind::Scalar => 1,
            OrderKind::Componentwise { dimension } => dimension,
            OrderKind::Grid { points } => points,
        }
    }

    pub fn is_scalar(&self) -> bool {
        matches!(self.kind, OrderKind::Scalar)
    }

    pub fn zero(&self) -> LatticeElement {
        self.constant(0.0)
    }

    /// The element with every coordinate equal to `value`.
    pub fn constant(&self, value: f64) -> LatticeElement {
        LatticeElement {
            space: *self,
            coords: vec![value; self.dim()],
        }
    }

    pub fn element(&self, coords: Vec<f64>) -> Result<LatticeElement> {
        if coords.len() != self.dim() {
            return Err(Error::Dimension {
                left: self.to_string(),
                right: format!("{} coordinates", coords.len()),
            });
        }
        Ok(LatticeElement {
            space: *self,
            coords,
        })
    }

    /// Sample positions in `[0, 1]` attached to each coordinate.
    ///
    /// For the grid lattice these are the evaluation nodes; the other kinds
    /// reuse the same spacing so that weight profiles can be built uniformly.
    pub fn nodes(&self) -> Vec<f64> {
        let n = self.dim();
        if n == 1 {
            return vec![0.0];
        }
        (0..n).map(|i| i as f64 / (n - 1) as f64).collect()
    }

    /// Evaluates `f` at [`nodes`](Self::nodes).
    pub fn sample_function(&self, f: impl Fn(f64) -> f64) -> LatticeElement {
        LatticeElement {
            space: *self,
            coords: self.nodes().into_iter().map(f).collect(),
        }
    }
}

impl fmt::Display for LatticeSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            OrderKind::Scalar => write!(f, "scalar"),
            OrderKind::Componentwise { dimension } => write!(f, "vector({dimension})"),
            OrderKind::Grid { points } => write!(f, "grid({points})"),
        }
    }
}

/// An immutable element of a [`LatticeSpace`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LatticeElement {
    space: LatticeSpace,
    coords: Vec<f64>,
}

impl LatticeElement {
    pub fn scalar(value: f64) -> Self {
        LatticeElement {
            space: LatticeSpace::scalar(),
            coords: vec![value],
        }
    }

    pub fn space(&self) -> LatticeSpace {
        self.space
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    /// First coordinate; the value itself for scalar elements.
    pub fn value(&self) -> f64 {
        self.coords[0]
    }

    fn same_space(&self, other: &Self) -> Result<()> {
        if self.space != other.space {
            return Err(Error::Dimension {
                left: self.space.to_string(),
                right: other.space.to_string(),
            });
        }
        Ok(())
    }

    fn zip_with(&self, other: &Self, f: impl Fn(f64, f64) -> f64) -> Result<Self> {
        self.same_space(other)?;
        Ok(LatticeElement {
            space: self.space,
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        })
    }

    /// `self ⪯ other`. Incomparable pairs give `false` in both directions.
    pub fn leq(&self, other: &Self) -> Result<bool> {
        self.leq_within(other, 0.0)
    }

    /// `self ⪯ other + slack·1`.
    pub fn leq_within(&self, other: &Self, slack: f64) -> Result<bool> {
        self.same_space(other)?;
        Ok(self
            .coords
            .iter()
            .zip(&other.coords)
            .all(|(&a, &b)| a <= b + slack))
    }

    pub fn join(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, f64::max)
    }

    pub fn meet(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, f64::min)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, factor: f64) -> Result<Self> {
        if !factor.is_finite() {
            return Err(Error::Parameter(format!("non-finite scalar {factor}")));
        }
        Ok(LatticeElement {
            space: self.space,
            coords: self.coords.iter().map(|c| factor * c).collect(),
        })
    }

    /// Membership in the positive cone `V⁺`.
    pub fn is_nonnegative(&self) -> bool {
        self.coords.iter().all(|&c| c >= 0.0)
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0.0)
    }

    /// Coordinatewise equality up to `tol`.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> Result<bool> {
        self.same_space(other)?;
        Ok(self
            .coords
            .iter()
            .zip(&other.coords)
            .all(|(&a, &b)| (a - b).abs() <= tol))
    }
}

/// Truncated check that `(1/n)·x` decreases to zero.
#[derive(Debug, Clone)]
pub struct ProbeReport {
    pub terms: Vec<LatticeElement>,
    pub gauges: Vec<f64>,
    /// Each term lies below its predecessor in the lattice order.
    pub decreasing: bool,
    pub final_gauge: f64,
}

/// Generates `(1/n)·x` for `n = 1..=n_max`, stopping early once the gauge of
/// a term drops below [`TAU_EQ`].
pub fn archimedean_probe(x: &LatticeElement, n_max: usize) -> Result<ProbeReport> {
    archimedean_probe_with(x, n_max, Gauge::default(), TAU_EQ)
}

pub fn archimedean_probe_with(
    x: &LatticeElement,
    n_max: usize,
    gauge: Gauge,
    tau: f64,
) -> Result<ProbeReport> {
    if !x.is_nonnegative() {
        return Err(Error::Domain(
            "archimedean probe needs a nonnegative element".into(),
        ));
    }
    if n_max == 0 {
        return Err(Error::Parameter("n_max must be positive".into()));
    }
    let mut terms: Vec<LatticeElement> = Vec::new();
    let mut gauges = Vec::new();
    let mut decreasing = true;
    for n in 1..=n_max {
        let term = x.scale(1.0 / n as f64)?;
        let g = gauge.measure(&term);
        if let Some(prev) = terms.last() {
            decreasing &= term.leq(prev)?;
        }
        terms.push(term);
        gauges.push(g);
        if g < tau {
            break;
        }
    }
    let final_gauge = *gauges.last().expect("at least one term");
    Ok(ProbeReport {
        terms,
        gauges,
        decreasing,
        final_gauge,
    })
}

/// Instance check of: `x ⪰ 0` and `x ⪯ γx` with `0 ≤ γ < 1` force `x = 0`.
pub fn lemma_2_6_check(x: &LatticeElement, gamma: f64) -> Result<bool> {
    if !(0.0..1.0).contains(&gamma) {
        return Err(Error::Parameter(format!("gamma {gamma} outside [0, 1)")));
    }
    if !x.is_nonnegative() {
        return Err(Error::Domain("element must be nonnegative".into()));
    }
    let premise = x.leq(&x.scale(gamma)?)?;
    Ok(!premise || x.is_zero())
}
