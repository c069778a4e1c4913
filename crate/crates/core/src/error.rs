use cbeta_algebra::AlgebraError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CoreError {
    #[error("missing dependency: {0}")]
    MissingDependency(String),
    #[error("unknown does not isolate linearly: {0}")]
    NonlinearIsolation(String),
    #[error("order exceeds engine maximum ({0} > {max})", max = crate::loops::MAX_ORDER)]
    OrderTooHigh(usize),
    #[error("series alphabets differ")]
    AlphabetMismatch,
    #[error("coefficient {requested} requested from a series truncated at order {order}")]
    TruncationExceeded { requested: usize, order: usize },
    #[error("Padé system of order {0} is rank deficient and inconsistent")]
    DegenerateSystem(usize),
    #[error("insufficient orders: need {needed}, have {available}")]
    InsufficientOrders { needed: usize, available: usize },
    #[error("pole at the supplied parameter")]
    PoleAtParameter,
    #[error("recurrence leading coefficient vanishes at k = {0}")]
    RecurrenceSingular(i64),
    #[error("invalid sampler configuration: {0}")]
    InvalidConfig(String),
    #[error("k = 0 is exact (m_0 = -N) and is not estimated")]
    ZeroModeRequested,
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}
