use thiserror::Error;

/// Failure modes shared by every engine in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("inconsistent surface invariants: {0}")]
    InconsistentInvariants(String),

    #[error("enumeration cap exceeded: {what} requires {required} items, cap is {cap}")]
    CapExceeded {
        what: String,
        required: String,
        cap: usize,
    },

    #[error("regime mismatch: {0}")]
    RegimeMismatch(String),

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParams(msg.into())
    }
}
