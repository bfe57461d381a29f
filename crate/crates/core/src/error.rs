use thiserror::Error;

/// Errors surfaced by every public entry point of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed or out-of-range input (self-loops, bad indices, bad parameters).
    #[error("invalid input: {0}")]
    InvalidInput(String),
    /// The input is well-formed but lies outside the algorithm's domain
    /// (for example a vertex-integrity bound that the fast path requires).
    #[error("precondition violated: {0}")]
    Precondition(String),
    /// An exhaustive oracle refused an instance larger than its budget.
    #[error("oracle budget exceeded: {0}")]
    BudgetExceeded(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidInput(msg.into()))
}
