use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("root iteration did not converge: {0}")]
    NonConvergence(String),
    #[error("polynomial is identically zero")]
    ZeroPolynomial,
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("winding methods disagree at lambda = {lambda}: roots give {by_roots}, argument variation gives {by_arg}")]
    CrossCheckMismatch {
        lambda: String,
        by_roots: i64,
        by_arg: i64,
    },
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("indeterminate: {0}")]
    Indeterminate(String),
    #[error("unsupported degree {0}: inclusion is only asserted for degree <= 2")]
    UnsupportedDegree(usize),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("validation failed: {0}")]
    ValidationFailed(String),
    #[error("size mismatch: {0}")]
    SizeMismatch(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Numeric failures (as opposed to validation or usage problems).
    pub fn is_numeric(&self) -> bool {
        matches!(
            self,
            Error::NonConvergence(_) | Error::CrossCheckMismatch { .. } | Error::Indeterminate(_)
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
