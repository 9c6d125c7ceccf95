use thiserror::Error;

/// Errors raised by state construction, channels, tomography and the protocol.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not Hermitian (max deviation {0:e})")]
    NotHermitian(f64),

    #[error("trace is not 1 (got {0})")]
    InvalidTrace(f64),

    #[error("matrix is not positive semidefinite (min eigenvalue {0:e})")]
    NotPositive(f64),

    #[error("operator is not unitary (max deviation {0:e})")]
    NotUnitary(f64),

    #[error("invalid subsystem dims {dims:?} for a {size}x{size} matrix")]
    BadDims { dims: Vec<usize>, size: usize },

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("invalid measurement setting: {0}")]
    InvalidSetting(String),

    #[error("outcome probabilities drift from a distribution by {0:e}")]
    ProbabilityDrift(f64),

    #[error("tomography design matrix is singular")]
    SingularDesign,

    #[error("eigensolver did not converge after {0} sweeps")]
    NoConvergence(usize),

    #[error("discord quantifier forms disagree: {first} vs {second}")]
    QuantifierMismatch { first: f64, second: f64 },

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for errors caused by bad input rather than a numerical failure.
    pub fn is_input_error(&self) -> bool {
        !matches!(
            self,
            Error::NoConvergence(_) | Error::QuantifierMismatch { .. } | Error::SingularDesign
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
