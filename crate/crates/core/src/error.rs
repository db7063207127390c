use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("code dimension {k} exceeds the enumeration cap {cap}")]
    DimensionTooLarge { k: usize, cap: usize },

    #[error("code length {n} exceeds the subset enumeration cap {cap}")]
    LengthTooLarge { n: usize, cap: usize },

    #[error("value outside its domain: {0}")]
    Domain(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("no set found: {0}")]
    NotFound(String),

    /// A guaranteed bound failed to hold. Carries a machine-readable witness.
    #[error("theorem violation: {statement} (witness: {witness})")]
    TheoremViolation { statement: String, witness: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }

    pub(crate) fn violation(statement: impl Into<String>, witness: impl Into<String>) -> Self {
        Error::TheoremViolation {
            statement: statement.into(),
            witness: witness.into(),
        }
    }
}
