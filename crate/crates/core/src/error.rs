//! Crate-wide error type.

use thiserror::Error;

/// Failure modes shared by every module.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("capacity exceeded: {0}")]
    Capacity(String),
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("type error: {0}")]
    Type(String),
    #[error("malformed point: {0}")]
    MalformedPoint(String),
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
    #[error("oracle returned UNKNOWN: {0}")]
    OracleUnknown(String),
}

pub type Result<T> = std::result::Result<T, Error>;
