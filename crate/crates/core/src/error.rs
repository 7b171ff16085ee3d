use thiserror::Error;

/// Everything that can go wrong while building codes or checking their spectra.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// A size parameter (extension degree, enumeration budget, ...) is out of range.
    #[error("size error: {0}")]
    Size(String),

    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// An exact computation produced a value that cannot be right
    /// (a fractional count, a negative frequency, a rank deficit).
    #[error("inconsistency: {0}")]
    Inconsistent(String),

    /// A linear system that was expected to be nonsingular is not.
    #[error("degenerate input: {0}")]
    Degenerate(String),
}

pub type Result<T> = std::result::Result<T, Error>;
