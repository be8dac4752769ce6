use thiserror::Error;

/// Errors raised by the library. The CLI maps each variant onto an exit code.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// A parameter lies outside the admissible region (q, N, labels, shifts).
    #[error("domain error: {0}")]
    Domain(String),

    /// The requested quantity is singular in the degenerate q = 1 regime.
    #[error("degenerate regime: {0}")]
    Degenerate(String),

    /// A spectral vector carries an index outside `1..=n_alpha`.
    #[error("invalid spectral vector: {0}")]
    InvalidVector(String),

    /// A configured size limit would be exceeded.
    #[error("resource limit: {0}")]
    Resource(String),

    /// A numerical self-check failed; `residual` is the worst one observed.
    #[error("numerical degradation in {context}: residual {residual:e} exceeds {tolerance:e}")]
    NumericalDegradation {
        context: String,
        residual: f64,
        tolerance: f64,
    },

    /// A structural check that must hold by construction did not.
    #[error("internal consistency failure in {context}: residual {residual:e}")]
    InternalConsistency { context: String, residual: f64 },

    /// An input word has adjacent letters from the same algebra.
    #[error("word is not reduced: {0}")]
    NotReduced(String),

    #[error("empty spectrum")]
    EmptySpectrum,

    /// Eigenvalues must be supplied in ascending order.
    #[error("spectrum not sorted ascending at level {0}")]
    UnsortedSpectrum(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
