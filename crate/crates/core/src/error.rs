use thiserror::Error;

/// Errors raised by lattice, metric, contraction and solver operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Two lattice values (or a value and a space) do not share a shape.
    #[error("dimension mismatch: {left} vs {right}")]
    Dimension { left: String, right: String },

    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A numeric parameter is out of its admissible range.
    #[error("parameter error: {0}")]
    Parameter(String),

    /// Coefficients violate `2h1 + 2h2 + 2h3 + 4h4 + 4h5 < 1`.
    #[error("infeasible coefficients: weighted sum {weighted_sum:?} >= 1")]
    Infeasible { weighted_sum: f64 },

    /// A map produced a value outside the carrier.
    #[error("map `{map}` sends {input:?} to {output:?}, outside the carrier")]
    CarrierEscape {
        map: String,
        input: f64,
        output: f64,
    },

    /// No k-preimage exists (within tolerance) for a value.
    #[error("range containment violated: no k-preimage for {value:?}")]
    RangeContainment { value: f64 },

    /// The operation is only defined for scalar-valued metrics.
    #[error("unsupported lattice: {0}")]
    UnsupportedLattice(String),

    /// A scenario document failed validation.
    #[error("{0}")]
    Scenario(String),

    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
