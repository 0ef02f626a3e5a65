use thiserror::Error;

/// Errors produced anywhere in the compile / solve / certify pipeline.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("state does not encode a permutation: {0}")]
    NotAPermutation(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("vector length {0} is not a perfect square")]
    NonSquareLength(usize),

    #[error("invalid problem size {0}; need at least 1 element")]
    InvalidSize(usize),

    #[error("branching factor {branching} is not supported for {kind}")]
    UnsupportedBranching { kind: &'static str, branching: usize },

    #[error("input vector is all zeros and cannot be L1-normalized")]
    ZeroVector,

    #[error("quadratic matrix has non-zero diagonal entry at {index}; fold the diagonal first")]
    NonZeroDiagonal { index: usize },

    #[error("matrix is not symmetric at ({row}, {col})")]
    NotSymmetric { row: usize, col: usize },

    #[error("entry {value} at index {index} is outside the expected alphabet")]
    DomainError { index: usize, value: i64 },

    #[error("index {index} out of range for length {len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("no convergence within {max_steps} flips")]
    MaxStepsExceeded { max_steps: usize },

    #[error("size {size} exceeds the enumeration budget of {limit}")]
    SizeBudgetExceeded { size: usize, limit: usize },

    #[error("invalid order program: {0}")]
    InvalidProgram(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("non-finite value at index {0}")]
    NonFinite(usize),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
