use thiserror::Error;

/// Crate-wide error type.  The CLI maps these onto exit codes: domain
/// errors are invalid input (2), precision exhaustion is 3, unsupported
/// or deferred cases are 4.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("resource limit exceeded: {0}")]
    Resource(String),
    #[error("p-adic precision exhausted: {0}")]
    Precision(String),
    #[error("no root: {0}")]
    NoRoot(String),
    #[error("unsupported case: {0}")]
    Unsupported(String),
    #[error("internal consistency error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
    pub fn resource(msg: impl Into<String>) -> Self {
        Error::Resource(msg.into())
    }
    pub fn precision(msg: impl Into<String>) -> Self {
        Error::Precision(msg.into())
    }
    pub fn no_root(msg: impl Into<String>) -> Self {
        Error::NoRoot(msg.into())
    }
    pub fn unsupported(msg: impl Into<String>) -> Self {
        Error::Unsupported(msg.into())
    }
    pub fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }
}
