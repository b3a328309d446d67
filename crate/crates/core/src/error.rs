//! Crate-wide error type.
//!
//! Every fallible public operation returns [`Result`]. Variants are coarse
//! enough to map cleanly onto CLI exit codes while keeping the offending
//! values in the message.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A documented precondition was violated by the caller (bad field
    /// order, gcd constraint, dimension mismatch, ...).
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// None of the implemented equivalence criteria applies to the pair.
    #[error("no equivalence criterion applies: {0}")]
    NoCriterion(String),

    /// A quantum derivation was requested for a code that is not
    /// Hermitian dual-containing.
    #[error("Hermitian dual containment fails: {0}")]
    NotDualContaining(String),

    /// An enumeration budget would be exceeded.
    #[error("enumeration budget exceeded: {0}")]
    Budget(String),

    /// Text input (code spec, constant notation, job file, ...) failed to parse.
    #[error("parse error: {0}")]
    Parse(String),

    /// A best-known-codes table row is malformed.
    #[error("malformed table row at line {line}: {msg}")]
    Table { line: usize, msg: String },

    /// Invariant breakage that indicates a bug rather than bad input.
    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),

    #[error("serialization error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }

    pub fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }
}
