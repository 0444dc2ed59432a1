use thiserror::Error;

/// Errors raised anywhere in the engine.
///
/// The variants map onto distinct failure classes so that front ends can
/// translate them into exit codes: malformed input, requests outside a
/// documented size or capacity limit, exhausted search budgets, and broken
/// internal invariants.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("graph6 parse error at byte {offset}: {reason}")]
    Parse { offset: usize, reason: String },

    #[error("syntax error: {0}")]
    Syntax(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("capacity exceeded: {0}")]
    Capacity(String),

    #[error("size limit exceeded: {0}")]
    Size(String),

    #[error("search budget exceeded: {0}")]
    Budget(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn size(msg: impl Into<String>) -> Self {
        Error::Size(msg.into())
    }

    pub(crate) fn syntax(msg: impl Into<String>) -> Self {
        Error::Syntax(msg.into())
    }

    /// True for errors caused by a size, capacity or budget limit rather than
    /// by malformed input.
    pub fn is_limit(&self) -> bool {
        matches!(self, Error::Capacity(_) | Error::Size(_) | Error::Budget(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
