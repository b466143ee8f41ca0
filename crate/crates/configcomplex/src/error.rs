use thiserror::Error;

/// Crate-wide error type.
///
/// Validation of mathematical objects (configurations, colorings, difference
/// sets, ...) does not go through this type: validators return structured
/// reports listing every violation.  `Error` is reserved for conditions that
/// make an operation meaningless or unsafe to continue: malformed input,
/// precondition failures, resource guards, integer overflow, and I/O.
#[derive(Debug, Error)]
pub enum Error {
    /// A 64-bit integer operation overflowed.  All matrix arithmetic is
    /// checked; desk-scale inputs never trigger this.
    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    /// The input violates a documented precondition.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A resource guard (face cap, search size, isomorphism degree) tripped.
    #[error("limit exceeded: {0}")]
    LimitExceeded(String),

    /// A file could not be parsed.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    /// A postcondition check inside an operation failed.  Indicates a bug.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
