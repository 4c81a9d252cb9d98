use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Input outside the mathematical domain of the operation (valuation of
    /// zero, mismatched radicands, division by zero).
    #[error("domain error: {0}")]
    Domain(String),
    #[error("shape error: {0}")]
    Shape(String),
    #[error("validity error: {0}")]
    Validity(String),
    /// The action has a zero eigenvalue, i.e. `P(0) = 0`.
    #[error("singular action: {0}")]
    SingularAction(String),
    #[error("inconsistent input: {0}")]
    Inconsistent(String),
    #[error("duality violation: {0}")]
    DualityViolation(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("numeric failure: {0}")]
    Numeric(String),
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
