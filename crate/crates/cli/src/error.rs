use thiserror::Error;

use vuf_algebra::AlgebraError;
use vuf_core::CoreError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("cannot read or write {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("bad config: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, CliError>;

impl From<AlgebraError> for CliError {
    fn from(e: AlgebraError) -> Self {
        CliError::Core(CoreError::Algebra(e))
    }
}

impl CliError {
    /// 2 for unparsable or invalid input, 3 when a count exceeds its budget,
    /// 4 on a broken internal invariant, 1 for anything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Config(_) => 2,
            CliError::Io { .. } => 1,
            CliError::Core(e) => match e {
                CoreError::Algebra(AlgebraError::BudgetExceeded { .. }) => 3,
                CoreError::InvariantBreach(_) => 4,
                _ => 2,
            },
        }
    }
}
