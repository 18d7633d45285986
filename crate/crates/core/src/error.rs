use thiserror::Error;

/// Errors raised by the algebraic routines.
///
/// Verification operations never fail with an `Error`; they return a
/// [`Report`](crate::report::Report) instead. Errors are reserved for
/// malformed input and violated preconditions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("shape error: {0}")]
    Shape(String),
    #[error("singular matrix")]
    Singular,
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("validation failed: {0}")]
    Validation(String),
    #[error("unknown name: {0}")]
    UnknownName(String),
    #[error("invalid rational literal: {0:?}")]
    Rational(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn check_dim(expected: usize, got: usize) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(Error::Dimension { expected, got })
    }
}
