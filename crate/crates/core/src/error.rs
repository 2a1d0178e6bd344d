use thiserror::Error;

/// Coarse classification used by the command-line front end to pick an exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Precondition,
    Budget,
    Internal,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("budget exceeded for {what}: need {needed}, limit {limit}")]
    BudgetExceeded {
        what: &'static str,
        needed: u128,
        limit: u128,
    },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("level mismatch: {0} vs {1} (lift to a common level first)")]
    LevelMismatch(u32, u32),

    #[error("{m} does not divide q - 1 = {q_minus_one}")]
    CharacterOrder { m: u32, q_minus_one: u64 },

    #[error("gcd({a}, {b}) != 1")]
    NotCoprime { a: u64, b: u64 },

    #[error("weight contract violated: a * conj(a) != q^{weight}")]
    WeightContract { weight: u32 },

    #[error("internal: {0}")]
    Internal(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::BudgetExceeded { .. } => ErrorKind::Budget,
            Error::Internal(_) | Error::Io(_) => ErrorKind::Internal,
            _ => ErrorKind::Precondition,
        }
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
