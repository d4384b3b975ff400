use thiserror::Error;

/// Errors raised by the group and geometry routines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("empty generator list")]
    NoGenerators,

    #[error("group order {order} exceeds the enumeration bound {bound}")]
    BoundExceeded { order: String, bound: u64 },

    #[error("memory budget of {budget} bytes exhausted after {partial} items")]
    MemoryBudget { budget: usize, partial: usize },

    #[error("iteration cap of {cap} reached: {detail}")]
    IterationCap { cap: usize, detail: String },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("field error: {0}")]
    Field(String),

    #[error("construction failed: {0}")]
    Construction(String),

    #[error("verification failed: {0}")]
    Verification(String),

    #[error("unsupported parameters: {0}")]
    Unsupported(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
