use thiserror::Error;

/// Errors raised by constructions whose inputs are structurally wrong or
/// whose internal cross-checks disagree.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("could not parse scalar `{0}`")]
    Parse(String),
    #[error("antipode not bijective")]
    AntipodeNotBijective,
    #[error("not a group table: {0}")]
    InvalidGroup(String),
    #[error("inconsistent complex: {0}")]
    Inconsistent(String),
    #[error("invalid structure: {0}")]
    Invalid(String),
    #[error("cross-check failed: {0}")]
    CrossCheck(String),
    #[error("unknown name `{0}`")]
    UnknownName(String),
}

pub type Result<T> = std::result::Result<T, Error>;
