use thiserror::Error;

/// Errors raised by every fallible operation in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Caller supplied an invalid argument (bad vertex id, loops where
    /// none are allowed, out-of-range parameter, ...).
    #[error("input error: {0}")]
    Input(String),

    /// Text input failed to parse.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    /// A documented precondition (class membership, NAE 0-1 shape) does not hold.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A generator's own structural self-check failed.
    #[error("structural guarantee violated: {0}")]
    Structural(String),

    /// An internal invariant that the underlying theory guarantees did not hold.
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn input<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Input(msg.into()))
}
