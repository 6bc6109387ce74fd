use thiserror::Error;

/// Errors produced by the numerical core.
#[derive(Debug, Error)]
pub enum Error {
    /// A parameter violated a documented precondition.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// The symmetric-tridiagonal eigensolver did not produce a usable rule.
    #[error("eigensolver failure: {0}")]
    Eigensolver(String),

    /// A kernel truncation degree hit its cap before the tail bound was met.
    #[error("truncation cap exceeded: needed degree beyond {cap}, tail bound {tail:.3e}")]
    TruncationCap { cap: usize, tail: f64 },

    /// A sphere grid cannot integrate the requested product degrees accurately.
    #[error("grid under-resolved: aliasing bound {bound:.3e} exceeds tolerance {tol:.3e}")]
    GridUnderResolved { bound: f64, tol: f64 },

    /// Malformed data (serialized coefficients, mismatched sequences, ...).
    #[error("data error: {0}")]
    Data(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }
}
