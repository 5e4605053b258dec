use serde::Serialize;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("parameter mismatch: {0}")]
    ParameterMismatch(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("unsupported coefficient: {0}")]
    UnsupportedCoefficient(String),
    #[error("resolution is not minimal: {0}")]
    NotMinimal(String),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("intersection matrix is not negative definite")]
    NotNegativeDefinite,
    #[error("matrix is singular")]
    Singular,
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

impl Error {
    /// Stable machine-readable code, used in CLI error reports.
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidParameters(_) => "invalid_parameters",
            Error::ParameterMismatch(_) => "parameter_mismatch",
            Error::Precondition(_) => "precondition",
            Error::UnsupportedCoefficient(_) => "unsupported_coefficient",
            Error::NotMinimal(_) => "not_minimal",
            Error::Degenerate(_) => "degenerate",
            Error::NotNegativeDefinite => "not_negative_definite",
            Error::Singular => "singular",
            Error::Internal(_) => "internal",
        }
    }

    pub fn report(&self) -> ErrorReport {
        ErrorReport {
            code: self.code().to_string(),
            message: self.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ErrorReport {
    pub code: String,
    pub message: String,
}
