//! Error type shared by every module of the crate.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Series division requires a constant term bounded away from zero.
    #[error("division by non-unit series: |c_0| = {modulus:.3e} is below {tolerance:.0e}")]
    DivisionByNonUnit { modulus: f64, tolerance: f64 },

    /// A negative shift asked to cancel a z-power the series does not carry.
    #[error("series is not divisible by z^{power}: |c_{index}| = {modulus:.3e}")]
    NonDivisibleByZPower {
        power: usize,
        index: usize,
        modulus: f64,
    },

    /// Evaluation is only defined inside the open unit disk.
    #[error("evaluation point lies outside the open unit disk: |z| = {modulus}")]
    PointOutsideDisk { modulus: f64 },

    /// The integral-transform parameter must be nonnegative.
    #[error("transform parameter gamma must be nonnegative, got {gamma}")]
    InvalidGamma { gamma: f64 },

    /// The operator cannot be decomposed when 1 - lambda + mu vanishes.
    #[error("degenerate operator parameters: 1 - lambda + mu = {value:.3e}")]
    DegenerateParams { value: f64 },

    #[error("unknown catalog name: {name}")]
    UnknownCatalogName { name: String },

    /// A documented precondition or domain constraint was violated.
    #[error("invariant violation: {0}")]
    InvariantViolation(String),
}

impl Error {
    pub fn invariant(msg: impl Into<String>) -> Self {
        Error::InvariantViolation(msg.into())
    }
}
