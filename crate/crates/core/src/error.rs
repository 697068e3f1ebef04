use thiserror::Error;

/// Errors raised by the valuation toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("not a MacLane-Vaquie key polynomial: {0}")]
    KeyRequired(String),
    #[error("augmentation value must exceed the current value {current}")]
    MonotonicityViolation { current: String },
    #[error("valuations are not comparable as nested chains")]
    NotComparable,
    #[error("quotient is not homogeneous of degree zero")]
    NotDegreeZero,
    #[error("initial term is not a unit")]
    NotAUnit,
    #[error("bad normalizer: {0}")]
    BadNormalizer(String),
    #[error("value {0} is incommensurable with the lower value group")]
    Incommensurable(String),
    #[error("residue field is not a finite field; residual data unavailable")]
    ResidueUnsupported,
    #[error("sequence is not classifiable: {0}")]
    NotClassifiable(String),
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("not a limit key polynomial candidate: {0}")]
    NotALimitCandidate(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
