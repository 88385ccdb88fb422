use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    /// Point outside the domain of validity of a map primitive.
    #[error("domain error in primitive {index}: {message}")]
    Domain { index: usize, message: String },
    #[error("branch error: {0}")]
    Branch(String),
    #[error("construction error: {0}")]
    Construction(String),
    #[error("numeric error: {0}")]
    Numeric(String),
    #[error("not found: {0}")]
    NotFound(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("mismatch: {0}")]
    Mismatch(String),
    /// An iteration that ran out of budget, with its last iterate.
    #[error("not converged: {message}")]
    Unconverged { message: String, last: Vec<f64> },
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub fn numeric(msg: impl Into<String>) -> Self {
        Error::Numeric(msg.into())
    }

    pub fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    /// Re-tags a domain error with the position of the failing primitive in a chain.
    pub(crate) fn at_index(self, index: usize) -> Self {
        match self {
            Error::Domain { message, .. } => Error::Domain { index, message },
            other => other,
        }
    }
}
