use thiserror::Error;

/// Errors raised by the arithmetic and lattice routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CslError {
    #[error("zero input: {0}")]
    ZeroInput(&'static str),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("not an icosian: {0}")]
    NotIcosian(String),

    #[error("not admissible: N(nr(q)) = {0} is not a perfect square")]
    NotAdmissible(String),

    #[error("not primitive: {0}")]
    NotPrimitive(String),

    #[error("vector is not in L: {0}")]
    NotInLattice(String),

    #[error("rank deficient: expected rank {expected}, found {found}")]
    RankDeficient { expected: usize, found: usize },

    #[error("non-integer coordinates")]
    NonInteger,

    #[error("inconsistent data: {0}")]
    Inconsistent(String),

    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),
}

pub type Result<T> = std::result::Result<T, CslError>;
