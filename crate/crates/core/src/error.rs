use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("unknown term `{0}`")]
    UnknownTerm(String),

    #[error("invalid pattern: {0}")]
    InvalidPattern(String),

    #[error("pattern too large to canonicalize: {vars} variable nodes (limit {limit})")]
    PatternTooLarge { vars: usize, limit: usize },

    #[error("no transition applies to the current pattern")]
    Stuck,

    #[error("cannot initialise search: {0}")]
    Initialization(String),

    #[error("injection failed: {0}")]
    Injection(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
