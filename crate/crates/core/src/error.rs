use thiserror::Error;

/// Errors raised by the exact solvers and the simulation harness.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum UrnError {
    /// An argument lies outside the operation's domain.
    #[error("domain error: {0}")]
    Domain(String),
    /// The conditioning event has probability zero.
    #[error("conditioning error: {0}")]
    Conditioning(String),
    /// A simulation produced no usable samples.
    #[error("estimation error: {0}")]
    Estimation(String),
    /// An internal structural identity did not hold.
    #[error("invariant violated: {0}")]
    Invariant(String),
}

impl UrnError {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Self::Domain(msg.into())
    }

    pub(crate) fn conditioning(msg: impl Into<String>) -> Self {
        Self::Conditioning(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, UrnError>;
