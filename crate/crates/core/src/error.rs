use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("ground set size {0} outside 1..=63")]
    GroundSize(usize),
    #[error("subset {mask:#x} has bits outside a ground set of size {size}")]
    InvalidSubset { mask: u64, size: usize },
    #[error("element {element} is not in the queried set")]
    NotMember { element: usize },
    #[error("element {element} outside 1..={size}")]
    ElementOutOfRange { element: usize, size: usize },
    #[error("invalid instance: {0}")]
    InvalidSpec(String),
    #[error("seed set does not satisfy the predicate")]
    SeedNotSatisfying,
    #[error("seed set already satisfies the predicate")]
    SeedSatisfying,
    #[error("ground set of size {size} exceeds the exhaustive cap of {cap}")]
    SizeCap { size: usize, cap: usize },
    #[error("family is empty")]
    EmptyFamily,
    #[error("family is not an antichain: {0}")]
    NotAntichain(String),
    #[error("ground sizes differ ({0} vs {1})")]
    GroundMismatch(usize, usize),
    #[error("method `{method}` does not apply: {reason}")]
    InapplicableMethod { method: &'static str, reason: String },
    #[error("{0} is unavailable for this report")]
    Unavailable(&'static str),
    #[error("invalid sampling configuration: {0}")]
    InvalidConfig(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

impl Error {
    pub(crate) fn spec(msg: impl Into<String>) -> Self {
        Error::InvalidSpec(msg.into())
    }
}
