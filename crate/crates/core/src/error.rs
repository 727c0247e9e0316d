use thiserror::Error;

/// Errors raised while building, loading or running machines.
#[derive(Debug, Error)]
pub enum Error {
    /// An input symbol that is not part of the alphabet.
    #[error("invalid symbol at position {position}: {found:?}")]
    InvalidSymbol { position: usize, found: String },

    /// A machine description violates a structural requirement.
    #[error("construction error: {0}")]
    Construction(String),

    /// A caller passed arguments outside an operation's domain.
    #[error("usage error: {0}")]
    Usage(String),

    /// A machine or claim file could not be interpreted.
    #[error("parse error: {0}")]
    Parse(String),

    /// Probability mass reached a configuration outside the simulated space.
    #[error("runtime error: {0}")]
    Runtime(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn construction(msg: impl Into<String>) -> Self {
        Error::Construction(msg.into())
    }

    pub(crate) fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    pub(crate) fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }
}
