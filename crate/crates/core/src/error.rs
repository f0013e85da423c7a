//! Error type shared by every module.

use thiserror::Error;

/// Failures reported by the library. The CLI maps each variant to an exit code.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("usage error: {0}")]
    Usage(String),

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("maximal contact not solvable: {0}")]
    MaximalContactNotSolvable(String),

    #[error("candidate set incomplete: {0}")]
    CandidateIncomplete(String),

    #[error("year cap of {0} exceeded")]
    YearCapExceeded(usize),

    #[error("point left the transformed presentation: {0}")]
    NotInTransform(String),

    #[error("unsupported input: {0}")]
    Unsupported(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::CandidateIncomplete(_) => 2,
            Error::MaximalContactNotSolvable(_) => 3,
            Error::YearCapExceeded(_) => 4,
            Error::Io(_) => 10,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
