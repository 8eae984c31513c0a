use thiserror::Error;

/// Errors produced across the crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u32, u32),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("invalid group spec: {0}")]
    InvalidGroupSpec(String),
    #[error("group order {order} exceeds the configured maximum {max}")]
    GroupTooLarge { order: u64, max: u64 },
    #[error("operands belong to different groups")]
    GroupMismatch,
    #[error("exponent out of range: {0}")]
    ExponentOutOfRange(String),
    #[error("unsupported group family: {0}")]
    UnsupportedFamily(String),
    #[error("invalid degree filter: {0}")]
    InvalidFilter(String),
    #[error("invalid equation: {0}")]
    InvalidEquation(String),
    #[error("exponent {exponent} is not coprime to |G| = {order}")]
    NotCoprime { exponent: i64, order: usize },
    #[error("subspaces do not form a zero-product family")]
    NotZeroProduct,
    #[error("linear system is inconsistent")]
    Inconsistent,
    #[error("instance too large: {0}")]
    TooLarge(String),
    #[error("invalid word: {0}")]
    InvalidWord(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
