//! Scalar self-maps and the `(p, q, k)` system with its k-preimage oracle.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::smetric::CarrierSpace;
use crate::TAU_EQ;

/// Bisection halvings are capped here; floats run out long before.
const MAX_BISECTION_STEPS: usize = 2_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "form", rename_all = "snake_case")]
pub enum MapForm {
    /// `x ↦ a·x + b`.
    Affine {
        a: f64,
        b: f64,
    },
    /// Continuous and strictly monotone; preimages can be found by bisection.
    Monotone,
    Opaque,
}

/// A named map `R → R`, intended as a self-map of some carrier.
#[derive(Clone)]
pub struct SelfMap {
    name: String,
    form: MapForm,
    f: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
}

impl fmt::Debug for SelfMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SelfMap")
            .field("name", &self.name)
            .field("form", &self.form)
            .finish()
    }
}

impl SelfMap {
    pub fn new(name: impl Into<String>, f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        SelfMap {
            name: name.into(),
            form: MapForm::Opaque,
            f: Arc::new(f),
        }
    }

    /// A continuous strictly monotone map.
    pub fn monotone(
        name: impl Into<String>,
        f: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        SelfMap {
            form: MapForm::Monotone,
            ..Self::new(name, f)
        }
    }

    pub fn affine(a: f64, b: f64) -> Self {
        let name = if b == 0.0 {
            format!("{a}*x")
        } else {
            format!("{a}*x+{b}")
        };
        SelfMap {
            name,
            form: MapForm::Affine { a, b },
            f: Arc::new(move |x| a * x + b),
        }
    }

    /// `x ↦ x / d`, evaluated as a division so that `x / 3` stays exact
    /// where `x · (1/3)` would round.
    pub fn divide_by(d: f64) -> Self {
        SelfMap {
            name: format!("x/{d}"),
            form: MapForm::Affine { a: 1.0 / d, b: 0.0 },
            f: Arc::new(move |x| x / d),
        }
    }

    pub fn identity() -> Self {
        SelfMap {
            name: "identity".into(),
            form: MapForm::Affine { a: 1.0, b: 0.0 },
            f: Arc::new(|x| x),
        }
    }

    pub fn named(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn form(&self) -> MapForm {
        self.form
    }

    #[inline]
    pub fn apply(&self, x: f64) -> f64 {
        (self.f)(x)
    }

    /// Applies the map and rejects outputs that leave `carrier`.
    pub fn apply_in(&self, carrier: &CarrierSpace, x: f64) -> Result<f64> {
        let y = self.apply(x);
        if !carrier.contains(y) {
            return Err(Error::CarrierEscape {
                map: self.name.clone(),
                input: x,
                output: y,
            });
        }
        Ok(y)
    }
}

type PreimageFn = Arc<dyn Fn(f64) -> Option<f64> + Send + Sync>;

/// How a k-preimage is obtained.
#[derive(Clone)]
pub enum Preimage {
    /// Caller-supplied inverse.
    Explicit(PreimageFn),
    /// `(y − b) / a` for affine `k`.
    AffineInverse { a: f64, b: f64 },
    /// Bisection over the carrier interval for monotone `k`.
    Bisection,
}

impl fmt::Debug for Preimage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Preimage::Explicit(_) => write!(f, "Explicit"),
            Preimage::AffineInverse { a, b } => write!(f, "AffineInverse({a}, {b})"),
            Preimage::Bisection => write!(f, "Bisection"),
        }
    }
}

/// The maps `p`, `q`, `k` on a carrier, plus a way to invert `k`.
#[derive(Debug, Clone)]
pub struct MapSystem {
    pub carrier: CarrierSpace,
    pub p: SelfMap,
    pub q: SelfMap,
    pub k: SelfMap,
    preimage: Preimage,
    tau_eq: f64,
}

impl MapSystem {
    /// Synthesizes the k-preimage oracle from the form of `k`: exact inverse
    /// for affine maps, bisection for monotone maps on interval carriers.
    /// Any other `k` needs [`with_preimage`](Self::with_preimage).
    pub fn new(carrier: CarrierSpace, p: SelfMap, q: SelfMap, k: SelfMap) -> Result<Self> {
        let preimage = match k.form() {
            MapForm::Affine { a, b } if a != 0.0 => Preimage::AffineInverse { a, b },
            MapForm::Affine { .. } => {
                return Err(Error::Parameter(format!(
                    "k = `{}` is constant; no preimage oracle can be synthesized",
                    k.name()
                )))
            }
            MapForm::Monotone if carrier.is_interval() => Preimage::Bisection,
            _ => {
                return Err(Error::Parameter(format!(
                    "k = `{}` is neither affine nor monotone on an interval; supply an explicit preimage",
                    k.name()
                )))
            }
        };
        Ok(MapSystem {
            carrier,
            p,
            q,
            k,
            preimage,
            tau_eq: TAU_EQ,
        })
    }

    /// Two-map system: `q := p`.
    pub fn two_map(carrier: CarrierSpace, p: SelfMap, k: SelfMap) -> Result<Self> {
        Self::new(carrier, p.clone(), p, k)
    }

    /// System with an explicit k-preimage oracle (no synthesis).
    pub fn with_oracle(
        carrier: CarrierSpace,
        p: SelfMap,
        q: SelfMap,
        k: SelfMap,
        oracle: impl Fn(f64) -> Option<f64> + Send + Sync + 'static,
    ) -> Self {
        MapSystem {
            carrier,
            p,
            q,
            k,
            preimage: Preimage::Explicit(Arc::new(oracle)),
            tau_eq: TAU_EQ,
        }
    }

    pub fn with_preimage(
        mut self,
        oracle: impl Fn(f64) -> Option<f64> + Send + Sync + 'static,
    ) -> Self {
        self.preimage = Preimage::Explicit(Arc::new(oracle));
        self
    }

    pub fn with_tau(mut self, tau_eq: f64) -> Self {
        self.tau_eq = tau_eq;
        self
    }

    pub fn tau_eq(&self) -> f64 {
        self.tau_eq
    }

    pub fn preimage_kind(&self) -> &Preimage {
        &self.preimage
    }

    pub fn is_two_map(&self) -> bool {
        Arc::ptr_eq(&self.p.f, &self.q.f)
    }

    /// A point `ξ` of the carrier with `k(ξ) = y` within `tau_eq`.
    pub fn k_preimage(&self, y: f64) -> Result<f64> {
        let candidate = match &self.preimage {
            Preimage::Explicit(f) => f(y),
            Preimage::AffineInverse { a, b } => Some((y - b) / a),
            Preimage::Bisection => self.bisect_k(y),
        };
        match candidate {
            Some(x) if self.carrier.contains(x) && (self.k.apply(x) - y).abs() <= self.tau_eq => {
                Ok(x)
            }
            _ => Err(Error::RangeContainment { value: y }),
        }
    }

    fn bisect_k(&self, y: f64) -> Option<f64> {
        let (mut lo, mut hi) = self.carrier.bounds();
        let (flo, fhi) = (self.k.apply(lo) - y, self.k.apply(hi) - y);
        if flo == 0.0 {
            return Some(lo);
        }
        if fhi == 0.0 {
            return Some(hi);
        }
        if flo.signum() == fhi.signum() {
            return None;
        }
        let increasing = flo < 0.0;
        for _ in 0..MAX_BISECTION_STEPS {
            let mid = lo + 0.5 * (hi - lo);
            if mid <= lo || mid >= hi {
                break;
            }
            let fm = self.k.apply(mid) - y;
            if fm == 0.0 {
                return Some(mid);
            }
            if (fm < 0.0) == increasing {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let pick = if (self.k.apply(lo) - y).abs() <= (self.k.apply(hi) - y).abs() {
            lo
        } else {
            hi
        };
        Some(pick)
    }

    /// Samples the carrier and confirms every `p`/`q` output has a k-preimage
    /// (`p(X) ∪ q(X) ⊆ k(X)` on the sample).
    pub fn check_range_containment(&self, samples: usize, seed: u64) -> Result<()> {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let pts: Vec<f64> = match self.carrier.enumerate(usize::MAX) {
            Some(all) => all,
            None => (0..samples).map(|_| self.carrier.draw(&mut rng)).collect(),
        };
        for x in pts {
            for m in [&self.p, &self.q] {
                let y = m.apply_in(&self.carrier, x)?;
                self.k_preimage(y)?;
            }
        }
        Ok(())
    }
}

/// Named maps usable from scenario files.
pub const MAP_CATALOG: &[&str] = &["identity", "reflect", "example_4_2_p", "example_4_2_k"];

pub fn map_from_catalog(name: &str) -> Result<SelfMap> {
    match name {
        "identity" => Ok(SelfMap::identity()),
        "reflect" => Ok(SelfMap::affine(-1.0, 1.0).named("reflect")),
        "example_4_2_p" => Ok(SelfMap::divide_by(12.0)),
        "example_4_2_k" => Ok(SelfMap::divide_by(3.0)),
        other => Err(Error::Scenario(format!("unknown map: {other}"))),
    }
}

/// `p(x) = x/12`, `q = p`, `k(x) = x/3` on `[0, 1]` with preimage `y ↦ 3y`.
pub fn example_4_2_system() -> MapSystem {
    MapSystem::with_oracle(
        CarrierSpace::unit_interval(),
        SelfMap::divide_by(12.0),
        SelfMap::divide_by(12.0),
        SelfMap::divide_by(3.0),
        |y| Some(3.0 * y),
    )
}
