use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed rational {text:?}: {reason}")]
    Parse { text: String, reason: String },

    #[error("zero denominator")]
    ZeroDenominator,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("point {point} is not an element of the group: {reason}")]
    NotInGroup { point: String, reason: String },

    #[error("sets live in different groups")]
    ContextMismatch,

    #[error("operation requires a nonempty set")]
    EmptySet,

    #[error("enumeration of {required} items exceeds the budget of {cap}")]
    BudgetExceeded { required: String, cap: u64 },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("precondition violated: {0}")]
    Precondition(String),
}
