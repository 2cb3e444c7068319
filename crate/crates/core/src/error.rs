use thiserror::Error;

/// Errors produced anywhere in the engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    /// A configured cap would be exceeded; `needed` is what the request required.
    #[error("{what} cap exceeded: need {needed}, limit {limit}")]
    CapExceeded { what: &'static str, needed: u128, limit: u128 },

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("division by zero in {0}")]
    ZeroInverse(String),

    #[error("{0} does not generate the group")]
    NotGenerating(String),

    /// A construction produced a word longer than its claimed closed-form bound.
    #[error("length bound violated by {constructor}: length {length} > bound {bound}")]
    BoundViolated { constructor: &'static str, length: u64, bound: u128 },
}

impl Error {
    pub(crate) fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    pub(crate) fn unsupported(msg: impl Into<String>) -> Self {
        Error::Unsupported(msg.into())
    }

    /// True for errors raised because a cap or budget was exceeded.
    pub fn is_cap(&self) -> bool {
        matches!(self, Error::CapExceeded { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn check_cap(what: &'static str, needed: u128, limit: u128) -> Result<()> {
    if needed > limit {
        Err(Error::CapExceeded { what, needed, limit })
    } else {
        Ok(())
    }
}
