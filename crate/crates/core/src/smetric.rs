//! Vector S-metrics: ternary maps `X × X × X → V` into a linear lattice.
//!
//! A rule qualifies when, for all points,
//!
//! * (a) `S(x, y, z) ⪰ 0`,
//! * (b) `S(x, y, z) = 0` exactly when `x = y = z`,
//! * (c) `S(x, y, z) ⪯ S(x, x, a) + S(y, y, a) + S(z, z, a)`.
//!
//! [`verify_axioms`] checks the three conditions by seeded sampling (or by
//! enumeration on small finite carriers) and shrinks any counterexample
//! toward the carrier midpoint.

use std::fmt;
use std::sync::Arc;

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gauge::Gauge;
use crate::lattice::{LatticeElement, LatticeSpace, OrderKind};
use crate::sampling::{first_failure, first_failure_in, Sampling};
use crate::TAU_EQ;

/// Finite carriers up to this size are checked exhaustively.
pub const EXHAUSTIVE_LIMIT: usize = 32;
/// Upper bound on counterexample shrink steps.
pub const MAX_SHRINK_STEPS: usize = 64;

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CarrierKind {
    Interval { lo: f64, hi: f64 },
    Finite { points: Vec<f64> },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SamplingPolicy {
    Uniform,
    /// Draw only from `points` evenly spaced nodes of the interval.
    Grid {
        points: usize,
    },
}

/// The underlying point set of a metric space: an interval or a finite set
/// of reals.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CarrierSpace {
    kind: CarrierKind,
    policy: SamplingPolicy,
}

impl CarrierSpace {
    pub fn interval(lo: f64, hi: f64) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(Error::Parameter(format!("invalid interval [{lo}, {hi}]")));
        }
        Ok(CarrierSpace {
            kind: CarrierKind::Interval { lo, hi },
            policy: SamplingPolicy::Uniform,
        })
    }

    pub fn unit_interval() -> Self {
        Self::interval(0.0, 1.0).unwrap()
    }

    pub fn finite(mut points: Vec<f64>) -> Result<Self> {
        if points.is_empty() || points.iter().any(|p| !p.is_finite()) {
            return Err(Error::Parameter(
                "finite carrier needs at least one finite point".into(),
            ));
        }
        points.sort_by(f64::total_cmp);
        points.dedup();
        Ok(CarrierSpace {
            kind: CarrierKind::Finite { points },
            policy: SamplingPolicy::Uniform,
        })
    }

    /// Restricts interval sampling to `points` evenly spaced nodes.
    pub fn with_grid(mut self, points: usize) -> Result<Self> {
        if points < 2 {
            return Err(Error::Parameter(
                "grid sampling needs at least 2 points".into(),
            ));
        }
        if matches!(self.kind, CarrierKind::Finite { .. }) {
            return Err(Error::Parameter(
                "grid sampling applies to interval carriers".into(),
            ));
        }
        self.policy = SamplingPolicy::Grid { points };
        Ok(self)
    }

    pub fn kind(&self) -> &CarrierKind {
        &self.kind
    }

    pub fn policy(&self) -> SamplingPolicy {
        self.policy
    }

    pub fn bounds(&self) -> (f64, f64) {
        match &self.kind {
            CarrierKind::Interval { lo, hi } => (*lo, *hi),
            CarrierKind::Finite { points } => (points[0], points[points.len() - 1]),
        }
    }

    pub fn midpoint(&self) -> f64 {
        let (lo, hi) = self.bounds();
        lo + 0.5 * (hi - lo)
    }

    pub fn is_interval(&self) -> bool {
        matches!(self.kind, CarrierKind::Interval { .. })
    }

    pub fn contains(&self, x: f64) -> bool {
        match &self.kind {
            CarrierKind::Interval { lo, hi } => *lo <= x && x <= *hi,
            CarrierKind::Finite { points } => points.iter().any(|p| (p - x).abs() <= TAU_EQ),
        }
    }

    /// All points of a finite carrier or interval grid, if there are at most
    /// `limit` of them.
    pub fn enumerate(&self, limit: usize) -> Option<Vec<f64>> {
        let pts = match (&self.kind, self.policy) {
            (CarrierKind::Finite { points }, _) => points.clone(),
            (CarrierKind::Interval { lo, hi }, SamplingPolicy::Grid { points }) => {
                grid_nodes(*lo, *hi, points)
            }
            _ => return None,
        };
        (pts.len() <= limit).then_some(pts)
    }

    /// Draws one point. Interval draws hit the endpoints and the midpoint
    /// now and then so boundary behavior gets exercised.
    pub fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match (&self.kind, self.policy) {
            (CarrierKind::Finite { points }, _) => points[rng.gen_range(0..points.len())],
            (CarrierKind::Interval { lo, hi }, SamplingPolicy::Grid { points }) => {
                let i = rng.gen_range(0..points);
                lo + (hi - lo) * i as f64 / (points - 1) as f64
            }
            (CarrierKind::Interval { lo, hi }, SamplingPolicy::Uniform) => {
                match rng.gen_range(0u32..32) {
                    0 => *lo,
                    1 => *hi,
                    2 => self.midpoint(),
                    _ => rng.gen_range(*lo..=*hi),
                }
            }
        }
    }
}

pub(crate) fn grid_nodes(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    (0..points)
        .map(|i| lo + (hi - lo) * i as f64 / (points - 1) as f64)
        .collect()
}

type Rule = Arc<dyn Fn(f64, f64, f64) -> LatticeElement + Send + Sync>;

/// A ternary rule `(x, y, z) ↦ S(x, y, z)` with its carrier and target lattice.
///
/// Construction does not check the axioms; run [`verify_axioms`] for that.
#[derive(Clone)]
pub struct VectorSMetric {
    name: String,
    carrier: CarrierSpace,
    target: LatticeSpace,
    rule: Rule,
}

impl fmt::Debug for VectorSMetric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("VectorSMetric")
            .field("name", &self.name)
            .field("carrier", &self.carrier)
            .field("target", &self.target)
            .finish()
    }
}

impl VectorSMetric {
    pub fn new(
        name: impl Into<String>,
        carrier: CarrierSpace,
        target: LatticeSpace,
        rule: impl Fn(f64, f64, f64) -> LatticeElement + Send + Sync + 'static,
    ) -> Self {
        VectorSMetric {
            name: name.into(),
            carrier,
            target,
            rule: Arc::new(rule),
        }
    }

    /// Scalar-valued metric from a rule returning `f64`.
    pub fn scalar(
        name: impl Into<String>,
        carrier: CarrierSpace,
        rule: impl Fn(f64, f64, f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        Self::new(name, carrier, LatticeSpace::scalar(), move |x, y, z| {
            LatticeElement::scalar(rule(x, y, z))
        })
    }

    /// `S(x, y, z) = |x − y| + |y − z| + |z − x|`.
    pub fn sum_abs(carrier: CarrierSpace) -> Self {
        Self::scalar("sum_abs", carrier, perimeter)
    }

    /// `sum_abs` lifted into an arbitrary target lattice by multiplying a
    /// strictly positive weight profile: all ones for scalar and vector
    /// targets, `e^t` at each node for the grid lattice.
    pub fn sum_abs_in(carrier: CarrierSpace, target: LatticeSpace) -> Self {
        if target.is_scalar() {
            return Self::sum_abs(carrier);
        }
        let weight = match target.kind() {
            OrderKind::Grid { .. } => target.sample_function(f64::exp),
            _ => target.constant(1.0),
        };
        Self::new("sum_abs", carrier, target, move |x, y, z| {
            weight
                .scale(perimeter(x, y, z))
                .expect("perimeter of finite points is finite")
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn carrier(&self) -> &CarrierSpace {
        &self.carrier
    }

    pub fn target(&self) -> LatticeSpace {
        self.target
    }

    /// Evaluates the rule after checking that all points lie in the carrier.
    pub fn eval(&self, x: f64, y: f64, z: f64) -> Result<LatticeElement> {
        for p in [x, y, z] {
            if !self.carrier.contains(p) {
                return Err(Error::Domain(format!(
                    "point {p:?} outside the carrier of `{}`",
                    self.name
                )));
            }
        }
        let v = self.eval_unchecked(x, y, z);
        if v.space() != self.target {
            return Err(Error::Dimension {
                left: self.target.to_string(),
                right: v.space().to_string(),
            });
        }
        Ok(v)
    }

    pub(crate) fn eval_unchecked(&self, x: f64, y: f64, z: f64) -> LatticeElement {
        (self.rule)(x, y, z)
    }

    /// `S(x, x, y)`, the pairwise form used throughout the fixed-point proofs.
    pub fn pair(&self, x: f64, y: f64) -> Result<LatticeElement> {
        self.eval(x, x, y)
    }
}

fn perimeter(x: f64, y: f64, z: f64) -> f64 {
    (x - y).abs() + (y - z).abs() + (z - x).abs()
}

/// Builds `S'(x, y, z) = S(x, x, y) ∨ S(y, y, z) ∨ S(z, z, x)` from `base`.
pub fn max_construction(base: &VectorSMetric) -> VectorSMetric {
    let b = base.clone();
    VectorSMetric::new(
        format!("max_of({})", base.name),
        base.carrier.clone(),
        base.target,
        move |x, y, z| {
            let xy = b.eval_unchecked(x, x, y);
            let yz = b.eval_unchecked(y, y, z);
            let zx = b.eval_unchecked(z, z, x);
            xy.join(&yz)
                .and_then(|m| m.join(&zx))
                .expect("base values share the target lattice")
        },
    )
}

/// Names addressable from scenario files.
pub const METRIC_CATALOG: &[&str] = &["sum_abs", "max_of"];

/// Resolves a catalog name. `max_of` wraps `base` (default `sum_abs`).
pub fn from_catalog(
    name: &str,
    base: Option<&str>,
    carrier: CarrierSpace,
    target: LatticeSpace,
) -> Result<VectorSMetric> {
    match name {
        "sum_abs" => Ok(VectorSMetric::sum_abs_in(carrier, target)),
        "max_of" => {
            let base = base.unwrap_or("sum_abs");
            if base == "max_of" {
                return Err(Error::Scenario(
                    "max_of needs a concrete base metric".into(),
                ));
            }
            Ok(max_construction(&from_catalog(
                base, None, carrier, target,
            )?))
        }
        other => Err(Error::Scenario(format!("unknown metric: {other}"))),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AxiomOutcome {
    pub passed: bool,
    pub checked: usize,
    /// Shrunk failing triple, or quadruple `(x, y, z, a)` for axiom (c).
    pub counterexample: Option<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AxiomReport {
    pub metric: String,
    pub exhaustive: bool,
    pub nonnegativity: AxiomOutcome,
    pub identity: AxiomOutcome,
    pub tetrahedral: AxiomOutcome,
}

impl AxiomReport {
    pub fn all_passed(&self) -> bool {
        self.nonnegativity.passed && self.identity.passed && self.tetrahedral.passed
    }
}

fn violates_nonnegativity(s: &VectorSMetric, t: &[f64], tau: f64) -> bool {
    let v = s.eval_unchecked(t[0], t[1], t[2]);
    !s.target.zero().leq_within(&v, tau).unwrap_or(false)
}

fn violates_identity(s: &VectorSMetric, t: &[f64], tau: f64) -> bool {
    let g = Gauge::MaxAbs.measure(&s.eval_unchecked(t[0], t[1], t[2]));
    let all_equal = t[0] == t[1] && t[1] == t[2];
    if all_equal {
        g > tau
    } else {
        g <= tau
    }
}

fn violates_tetrahedral(s: &VectorSMetric, t: &[f64], tau: f64) -> bool {
    let (x, y, z, a) = (t[0], t[1], t[2], t[3]);
    let lhs = s.eval_unchecked(x, y, z);
    let rhs = s
        .eval_unchecked(x, x, a)
        .add(&s.eval_unchecked(y, y, a))
        .and_then(|r| r.add(&s.eval_unchecked(z, z, a)));
    match rhs {
        Ok(rhs) => !lhs.leq_within(&rhs, tau).unwrap_or(false),
        Err(_) => true,
    }
}

/// Moves a failing tuple toward `mid` while it keeps failing. Each step first
/// tries halving the whole tuple's offset, then each coordinate on its own.
fn shrink(mut t: Vec<f64>, mid: f64, fails: impl Fn(&[f64]) -> bool) -> Vec<f64> {
    for _ in 0..MAX_SHRINK_STEPS {
        let joint: Vec<f64> = t.iter().map(|&v| mid + 0.5 * (v - mid)).collect();
        if joint != t && fails(&joint) {
            t = joint;
            continue;
        }
        let mut moved = false;
        for i in 0..t.len() {
            let mut cand = t.clone();
            cand[i] = mid + 0.5 * (t[i] - mid);
            if cand != t && fails(&cand) {
                t = cand;
                moved = true;
                break;
            }
        }
        if !moved {
            break;
        }
    }
    t
}

fn check_axiom(
    s: &VectorSMetric,
    sampling: &Sampling,
    salt: u32,
    arity: usize,
    candidates: impl Fn(&[f64]) -> Vec<Vec<f64>> + Sync,
    violates: impl Fn(&VectorSMetric, &[f64], f64) -> bool + Sync,
) -> Result<(AxiomOutcome, bool)> {
    let tau = sampling.tau_eq;
    let find = |base: &[f64]| -> Result<Option<Vec<f64>>> {
        Ok(candidates(base).into_iter().find(|t| violates(s, t, tau)))
    };
    let (witness, checked, exhaustive) = match s.carrier.enumerate(EXHAUSTIVE_LIMIT) {
        Some(points) => {
            let tuples = cartesian(&points, arity);
            (first_failure_in(&tuples, |t| find(t))?, tuples.len(), true)
        }
        None => {
            let w = first_failure(sampling.budget, sampling.seed, salt, |rng| {
                let base: Vec<f64> = (0..arity).map(|_| s.carrier.draw(rng)).collect();
                find(&base)
            })?;
            (w, sampling.budget, false)
        }
    };
    let counterexample = witness.map(|w| {
        if s.carrier.is_interval() && !exhaustive {
            let carrier = &s.carrier;
            shrink(w, carrier.midpoint(), |t| {
                t.iter().all(|&p| carrier.contains(p)) && violates(s, t, tau)
            })
        } else {
            w
        }
    });
    Ok((
        AxiomOutcome {
            passed: counterexample.is_none(),
            checked,
            counterexample,
        },
        exhaustive,
    ))
}

fn cartesian(points: &[f64], arity: usize) -> Vec<Vec<f64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..arity {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                points.iter().map(move |&p| {
                    let mut t = prefix.clone();
                    t.push(p);
                    t
                })
            })
            .collect();
    }
    out
}

/// Checks axioms (a), (b), (c) on `sampling.budget` seeded draws.
///
/// Axiom (b) is probed on the drawn triple and on its degenerate patterns
/// `(x,x,x)`, `(x,x,z)`, `(x,z,x)`, `(z,x,x)`, since random triples almost
/// never repeat a point. Zero is judged through the max-abs gauge against
/// `sampling.tau_eq`.
pub fn verify_axioms(s: &VectorSMetric, sampling: &Sampling) -> Result<AxiomReport> {
    let identity_patterns = |b: &[f64]| {
        let (x, y, z) = (b[0], b[1], b[2]);
        vec![
            vec![x, x, x],
            vec![x, x, z],
            vec![x, z, x],
            vec![z, x, x],
            vec![x, y, z],
        ]
    };
    let (nonnegativity, exhaustive) = check_axiom(
        s,
        sampling,
        1,
        3,
        |b| vec![b.to_vec()],
        violates_nonnegativity,
    )?;
    let (identity, _) = check_axiom(s, sampling, 2, 3, identity_patterns, violates_identity)?;
    let (tetrahedral, _) = check_axiom(
        s,
        sampling,
        3,
        4,
        |b| vec![b.to_vec()],
        violates_tetrahedral,
    )?;
    Ok(AxiomReport {
        metric: s.name.clone(),
        exhaustive,
        nonnegativity,
        identity,
        tetrahedral,
    })
}

/// First sampled pair with `S(x, x, y) ≠ S(y, y, x)` beyond `tau_eq`.
pub fn symmetry_witness(s: &VectorSMetric, sampling: &Sampling) -> Result<Option<(f64, f64)>> {
    let tau = sampling.tau_eq;
    let asymmetric = |x: f64, y: f64| -> Result<Option<(f64, f64)>> {
        let xy = s.eval_unchecked(x, x, y);
        let yx = s.eval_unchecked(y, y, x);
        Ok((!xy.approx_eq(&yx, tau)?).then_some((x, y)))
    };
    match s.carrier.enumerate(EXHAUSTIVE_LIMIT) {
        Some(points) => {
            let pairs = cartesian(&points, 2);
            first_failure_in(&pairs, |p| asymmetric(p[0], p[1]))
        }
        None => first_failure(sampling.budget, sampling.seed, 4, |rng| {
            asymmetric(s.carrier.draw(rng), s.carrier.draw(rng))
        }),
    }
}

/// `S(x, x, y) = S(y, y, x)` on every sampled pair, within `tau_eq`.
pub fn symmetry_check(s: &VectorSMetric, sampling: &Sampling) -> Result<bool> {
    Ok(symmetry_witness(s, sampling)?.is_none())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit() -> CarrierSpace {
        CarrierSpace::unit_interval()
    }

    #[test]
    fn eval_examples() {
        let s = VectorSMetric::sum_abs(unit());
        assert_eq!(s.eval(1.0, 0.0, 0.0).unwrap().value(), 2.0);
        assert_eq!(s.eval(0.3, 0.3, 0.3).unwrap().value(), 0.0);
        assert_eq!(s.eval(0.5, 0.25, 0.0).unwrap().value(), 1.0);
        assert!(matches!(s.eval(1.5, 0.0, 0.0), Err(Error::Domain(_))));
    }

    #[test]
    fn eval_rejects_wrong_shape() {
        let s = VectorSMetric::new(
            "bad",
            unit(),
            LatticeSpace::vector(2).unwrap(),
            |_, _, _| LatticeElement::scalar(0.0),
        );
        assert!(matches!(
            s.eval(0.0, 0.0, 0.0),
            Err(Error::Dimension { .. })
        ));
    }

    #[test]
    fn max_construction_examples() {
        let m = max_construction(&VectorSMetric::sum_abs(unit()));
        assert_eq!(m.name(), "max_of(sum_abs)");
        assert_eq!(m.eval(1.0, 0.0, 0.0).unwrap().value(), 2.0);
        assert_eq!(m.eval(0.7, 0.7, 0.7).unwrap().value(), 0.0);
    }

    #[test]
    fn max_construction_joins_incomparable_values() {
        let plane = LatticeSpace::vector(2).unwrap();
        let base = VectorSMetric::new("stacked", unit(), plane, move |x, y, z| {
            let d = |a: f64, b: f64| (a - b).abs().sqrt();
            plane
                .element(vec![perimeter(x, y, z), d(x, y) + d(y, z) + d(z, x)])
                .unwrap()
        });
        let m = max_construction(&base);
        let (x, y, z) = (0.9, 0.1, 0.0);
        let expected = base
            .eval(x, x, y)
            .unwrap()
            .join(&base.eval(y, y, z).unwrap())
            .unwrap()
            .join(&base.eval(z, z, x).unwrap())
            .unwrap();
        assert_eq!(m.eval(x, y, z).unwrap(), expected);
        assert!(verify_axioms(&m, &Sampling::new(5_000, 3))
            .unwrap()
            .all_passed());
    }

    #[test]
    fn sum_abs_and_max_pass_axioms() {
        let s = VectorSMetric::sum_abs(unit());
        let sampling = Sampling::new(10_000, 11);
        let r = verify_axioms(&s, &sampling).unwrap();
        assert!(r.all_passed(), "{r:?}");
        assert!(!r.exhaustive);
        assert!(verify_axioms(&max_construction(&s), &sampling)
            .unwrap()
            .all_passed());
    }

    #[test]
    fn lifted_sum_abs_passes_on_vector_and_grid_targets() {
        for target in [
            LatticeSpace::vector(3).unwrap(),
            LatticeSpace::grid(9).unwrap(),
        ] {
            let s = VectorSMetric::sum_abs_in(unit(), target);
            let r = verify_axioms(&s, &Sampling::new(2_000, 5)).unwrap();
            assert!(r.all_passed(), "{target}: {r:?}");
            assert!(symmetry_check(&s, &Sampling::new(2_000, 5)).unwrap());
        }
    }

    #[test]
    fn constant_rule_breaks_identity_at_a_diagonal_point() {
        let s = VectorSMetric::scalar("one", unit(), |_, _, _| 1.0);
        let r = verify_axioms(&s, &Sampling::new(1_000, 1)).unwrap();
        assert!(r.nonnegativity.passed && r.tetrahedral.passed);
        let w = r.identity.counterexample.expect("witness");
        assert!(w[0] == w[1] && w[1] == w[2]);
        assert!((w[0] - 0.5).abs() < 1e-9, "shrunk toward midpoint: {w:?}");
    }

    #[test]
    fn squared_difference_rule_breaks_identity_with_unequal_third_point() {
        let s = VectorSMetric::scalar("sq", unit(), |x, y, _| (x - y).powi(2));
        let r = verify_axioms(&s, &Sampling::new(1_000, 1)).unwrap();
        let w = r.identity.counterexample.expect("witness");
        assert_eq!(w[0], w[1]);
        assert_ne!(w[1], w[2]);
    }

    #[test]
    fn negative_rule_breaks_nonnegativity() {
        let s = VectorSMetric::scalar("neg", unit(), |x, y, z| -perimeter(x, y, z));
        let r = verify_axioms(&s, &Sampling::new(500, 9)).unwrap();
        assert!(!r.nonnegativity.passed);
        assert!(!r.tetrahedral.passed);
    }

    #[test]
    fn finite_carrier_is_enumerated() {
        let c = CarrierSpace::finite(vec![0.0, 0.25, 0.5, 1.0]).unwrap();
        let r = verify_axioms(&VectorSMetric::sum_abs(c.clone()), &Sampling::new(10, 0)).unwrap();
        assert!(r.exhaustive && r.all_passed());
        assert_eq!(r.tetrahedral.checked, 256);
        assert!(!c.contains(0.3));
        let grid = unit().with_grid(5).unwrap();
        assert_eq!(grid.enumerate(32).unwrap(), vec![0.0, 0.25, 0.5, 0.75, 1.0]);
    }

    #[test]
    fn carrier_validation() {
        assert!(CarrierSpace::interval(1.0, 1.0).is_err());
        assert!(CarrierSpace::interval(0.0, f64::INFINITY).is_err());
        assert!(CarrierSpace::finite(vec![]).is_err());
        assert!(CarrierSpace::finite(vec![1.0])
            .unwrap()
            .with_grid(4)
            .is_err());
    }

    #[test]
    fn symmetry_examples() {
        let s = VectorSMetric::sum_abs(unit());
        let sampling = Sampling::new(10_000, 2);
        assert!(symmetry_check(&s, &sampling).unwrap());
        assert!(symmetry_check(&max_construction(&s), &sampling).unwrap());
        let lopsided =
            VectorSMetric::scalar("lopsided", unit(), |x, _, z| (x - z).abs() * (1.0 + x));
        assert!(symmetry_witness(&lopsided, &sampling).unwrap().is_some());
    }

    #[test]
    fn catalog_resolution() {
        let m = from_catalog("max_of", None, unit(), LatticeSpace::scalar()).unwrap();
        assert_eq!(m.name(), "max_of(sum_abs)");
        assert!(from_catalog("euclid", None, unit(), LatticeSpace::scalar()).is_err());
        assert!(from_catalog("max_of", Some("max_of"), unit(), LatticeSpace::scalar()).is_err());
    }
}
