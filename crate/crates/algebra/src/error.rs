use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("no irreducible modulus available for GF({p}^{k})")]
    UnsupportedField { p: u64, k: u32 },
    #[error("field characteristic mismatch: expected {expected}, got {got}")]
    CharacteristicMismatch { expected: u64, got: u64 },
    #[error("coefficients live in GF({p}^{k}) which does not embed in the evaluation field")]
    NoEmbedding { p: u64, k: u32 },
    #[error("polynomials belong to different rings")]
    RingMismatch,
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("search space of {needed} evaluations exceeds the budget of {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("empty generator list")]
    EmptyIdeal,
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, AlgebraError>;
