use thiserror::Error;

/// Error type shared by every module of the toolkit.
#[derive(Debug, Error)]
pub enum Error {
    /// A caller-supplied value is outside the operation's domain.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A quantity was requested outside the regime where it is defined
    /// (e.g. giant-component targets at c <= 1).
    #[error("domain error: {0}")]
    Domain(String),

    /// A walk was too short for the requested marker or decomposition;
    /// the caller should rebuild it with a larger `k_max`.
    #[error("walk truncated: {0}")]
    Truncated(String),

    /// Bad experiment or CLI configuration.
    #[error("config error: {0}")]
    Config(String),

    /// Malformed serialized data (edge lists, config files).
    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }
}
