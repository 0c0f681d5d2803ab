use thiserror::Error;

/// Errors raised by group construction, set algebra and the solvers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("not a standard set: {0}")]
    NotStandard(String),
    #[error("group mismatch: {0}")]
    GroupMismatch(String),
    #[error("not a subgroup: {0}")]
    NotSubgroup(String),
    #[error("not an injective homomorphism: {0}")]
    NotEmbedding(String),
    #[error("not a supported automorphism: {0}")]
    NotAutomorphism(String),
    #[error("argument out of range: {0}")]
    OutOfRange(String),
    #[error("exact mode unavailable: {0}")]
    ModeUnavailable(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("size guard: {0}")]
    SizeGuard(String),
    #[error("solver failure: {0}")]
    Solver(String),
    #[error("internal consistency check failed: {0}")]
    Consistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
