use thiserror::Error;

/// Errors raised by the workbench.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("extension degree must be at least 1, got {0}")]
    InvalidDegree(u32),

    #[error("field of size {0} exceeds the supported bound 2^20")]
    FieldTooLarge(u64),

    #[error("modulus is not irreducible over the prime field")]
    Reducible,

    #[error("base field of size {base} is not a subfield of the field of size {ext}")]
    NotSubfield { base: u32, ext: u32 },

    #[error("polynomial is not squarefree")]
    NotSquarefree,

    #[error("polynomial is not monic")]
    NotMonic,

    #[error("gcd(n, q) != 1 for n = {n}, q = {q}")]
    NotCoprime { n: usize, q: u32 },

    #[error("value {0} outside the domain")]
    Domain(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("work of {needed} exceeds the budget of {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },

    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
