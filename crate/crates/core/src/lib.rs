//! Vector S-metric spaces over linear lattices, and a constructive solver
//! for common fixed points of three self-maps.
//!
//! The crate is organized bottom-up:
//!
//! - [`lattice`]: finite-dimensional Riesz spaces (scalar, `R^d`, sampled
//!   functions on `[0, 1]`), their order, and the Archimedean probe.
//! - [`smetric`]: lattice-valued S-metrics, a seeded axiom verifier with
//!   counterexample shrinking, and the max construction.
//! - [`contraction`]: the five coefficients `h1..h5`, the feasibility gate
//!   `2h1 + 2h2 + 2h3 + 4h4 + 4h5 < 1`, the derived rate, and an inequality
//!   sampler.
//! - [`solver`]: the alternating k-preimage iteration, coincidence and
//!   weak-compatibility probes, and multi-start uniqueness checks.
//! - [`integral`]: the integral-type contraction with a catalog of densities
//!   and trapezoid quadrature.
//! - [`scenario`]: TOML scenario files and the runner behind the `vsmetric`
//!   binary.
//!
//! ```
//! use vsmetric::prelude::*;
//!
//! let s = VectorSMetric::sum_abs(CarrierSpace::unit_interval());
//! let maps = vsmetric::maps::example_4_2_system();
//! let c = ContractionCoefficients::new(0.25, 0.0, 0.0, 0.0, 0.0).unwrap();
//! let trace = iterate(&s, &maps, &c, 1.0, &IterationConfig::default()).unwrap();
//! assert!(trace.converged());
//! assert!(trace.limit.unwrap().abs() < 1e-9);
//! ```

pub mod contraction;
pub mod error;
pub mod gauge;
pub mod integral;
pub mod lattice;
pub mod maps;
pub mod sampling;
pub mod scenario;
pub mod smetric;
pub mod solver;

pub use error::{Error, Result};

/// Default tolerance for equality of floating-point lattice values.
pub const TAU_EQ: f64 = 1e-12;

pub mod prelude {
    pub use crate::contraction::{check_inequality, ContractionCoefficients, InequalityReport};
    pub use crate::gauge::Gauge;
    pub use crate::integral::{
        check_integral_inequality, iterate_integral, uniqueness_integral, Density, IntegralGauge,
        IntegralRate, F,
    };
    pub use crate::lattice::{archimedean_probe, LatticeElement, LatticeSpace};
    pub use crate::maps::{MapSystem, SelfMap};
    pub use crate::sampling::Sampling;
    pub use crate::smetric::{
        max_construction, symmetry_check, verify_axioms, CarrierSpace, VectorSMetric,
    };
    pub use crate::solver::{
        iterate, point_of_coincidence, uniqueness_probe, weak_compatibility_check,
        ConvergenceTrace, IterationConfig, MapPair, Verdict,
    };
    pub use crate::{Error, Result, TAU_EQ};
}
