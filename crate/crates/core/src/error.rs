use thiserror::Error;

use vuf_algebra::AlgebraError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoreError {
    #[error("unsupported root system {family}{rank}")]
    UnsupportedSystem { family: String, rank: usize },
    #[error("simple root index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("operands belong to different root systems")]
    SystemMismatch,
    #[error("invalid Levi subset: {0}")]
    InvalidLevi(String),
    #[error("invalid parabolic datum: {0}")]
    InvalidDatum(String),
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("{0} is not a minimal coset representative")]
    NotMinimalRep(String),
    #[error("{v} is not below {w} in Bruhat order")]
    NotBruhatBelow { v: String, w: String },
    #[error("operation requires P_red = B")]
    NonBorel,
    #[error("concatenated word is not reduced: length {product} < {sum}")]
    NonReducedConcatenation { product: usize, sum: usize },
    #[error("invalid BSDH word: {0}")]
    InvalidWord(String),
    #[error("malformed grouping: {0}")]
    MalformedGrouping(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("bad indices: {0}")]
    BadIndices(String),
    #[error("invariant violated: {0}")]
    InvariantBreach(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

pub type Result<T> = std::result::Result<T, CoreError>;
