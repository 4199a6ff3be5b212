use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// Arguments outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// An exact identity that must hold by construction did not.
    #[error("internal consistency violated: {0}")]
    Consistency(String),

    #[error("singular linear system")]
    Singular,

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("unsupported table version: {0}")]
    Version(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
