use thiserror::Error;

/// Errors produced by the toolkit.
///
/// Variants split into two families: domain errors (the input is malformed or
/// violates a precondition) and budget errors (the input is valid but the
/// requested computation exceeds a configured resource limit). The CLI maps
/// these to different exit codes.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("{what} exceeds budget ({actual} > {limit})")]
    BudgetExceeded {
        what: &'static str,
        limit: String,
        actual: String,
    },

    #[error("characteristic polynomial has a non-cyclotomic factor")]
    NotOmega,

    #[error("moduli {0} and {1} are not coprime")]
    NonCoprimeModuli(String, String),

    #[error("could not fill {needed} progression rows; failed moduli: {failed:?}")]
    InsufficientPrimes { needed: usize, failed: Vec<u64> },

    #[error("internal verification failed: {0}")]
    VerificationFailed(String),
}

impl Error {
    pub(crate) fn budget(what: &'static str, limit: impl ToString, actual: impl ToString) -> Self {
        Error::BudgetExceeded {
            what,
            limit: limit.to_string(),
            actual: actual.to_string(),
        }
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    /// True for resource-limit failures, false for domain failures.
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::BudgetExceeded { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
