use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("division by the zero function")]
    DivisionByZero,
    #[error("denominator vanishes identically after substitution")]
    SubstitutionPole,
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("function does not vanish at zero")]
    NonvanishingAtZero,
    #[error("denominator vanishes at zero")]
    PoleAtZero,
    #[error("denominator has factors other than the requested pole")]
    UnsupportedPoleStructure,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("malformed json: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, AlgebraError>;
