use thiserror::Error;

use crate::algebra::Violation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("universe must contain at least one element")]
    EmptyUniverse,

    #[error("element {element} is out of range for a universe of size {size}")]
    OutOfRange { element: usize, size: usize },

    #[error("unknown operation symbol `{0}`")]
    UnknownSymbol(String),

    #[error("operation `{symbol}` has arity {expected}, but {found} arguments were given")]
    ArityMismatch {
        symbol: String,
        expected: usize,
        found: usize,
    },

    #[error("variable x{0} is not bound by the assignment")]
    UnboundVariable(usize),

    #[error("size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },

    #[error("{what} exceeds the resource guard ({actual} > {limit})")]
    LimitExceeded {
        what: &'static str,
        limit: u64,
        actual: u64,
    },

    #[error("the partition {0} is not a congruence of the algebra")]
    NotACongruence(String),

    #[error("the partition {0} is not a congruence in the computed lattice")]
    NotInLattice(String),

    #[error("{inner} does not contain {outer}")]
    NotAbove { outer: String, inner: String },

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("unsupported signature: {0}")]
    Signature(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    /// Two decision routes that must agree did not.
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),

    #[error("invalid algebra: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Violation>),
}

impl Error {
    pub(crate) fn syntax(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Syntax {
            line,
            column,
            message: message.into(),
        }
    }

    pub fn is_resource_limit(&self) -> bool {
        matches!(self, Error::LimitExceeded { .. })
    }
}
