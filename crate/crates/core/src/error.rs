use thiserror::Error;

/// Errors raised by constructors and operations of this crate.
///
/// Axiom violations of otherwise well-formed objects (simplicial relations,
/// metric axioms) are not errors; they are reported as data by the
/// respective `validate` functions.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("membership {0} is outside (0, 1]")]
    Membership(f64),

    #[error("norm {0} is not a finite non-negative real")]
    Norm(f64),

    #[error("distance {0} is outside [0, inf]")]
    Distance(f64),

    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),

    #[error("unknown label `{0}`")]
    UnknownLabel(String),

    #[error("invalid level function: {0}")]
    LevelFunction(String),

    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { dim: usize, index: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("malformed structure: {0}")]
    Structure(String),

    #[error("invalid parameter `{name}`: {reason}")]
    Parameter { name: &'static str, reason: String },

    #[error("invalid input: {0} violation(s), first: {1}")]
    Invalid(usize, String),

    #[error("enumeration too large: {0}")]
    TooLarge(String),

    #[error("json: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn param(name: &'static str, reason: impl Into<String>) -> Error {
    Error::Parameter { name, reason: reason.into() }
}
