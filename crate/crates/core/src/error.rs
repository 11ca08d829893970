use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed table: {0}")]
    MalformedTable(String),
    #[error("entry {value} at ({row}, {col}) is out of range for order {n}")]
    OutOfRange {
        row: usize,
        col: usize,
        value: i64,
        n: usize,
    },
    #[error("{0} is not a bijection")]
    NotBijective(String),
    #[error("division {0} has no unique solution")]
    NonUniqueDivision(String),
    #[error("order must be odd, got {0}")]
    EvenOrder(usize),
    #[error("multiplier {multiplier} is not a unit modulo {n}")]
    NotUnit { multiplier: usize, n: usize },
    #[error("order cap exceeded: {0}")]
    OrderCapExceeded(String),
    #[error("not a subgroup of the ambient group")]
    NotSubgroup,
    #[error("table is not a P-groupoid: {0}")]
    NotPGroupoid(String),
    #[error("invalid decomposition: {0}")]
    InvalidDecomposition(String),
    #[error("vertex map is not surjective onto {0} vertices")]
    NotSurjective(usize),
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
