use std::io;

use thiserror::Error;

use crate::index::Index;

pub type Result<T, E = MzvError> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum MzvError {
    #[error("invalid index `{0}`: entries must be positive integers")]
    InvalidIndex(String),

    #[error("index {0} is not admissible")]
    NotAdmissible(Index),

    #[error("the empty index is not allowed here")]
    EmptyIndex,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("truncation orders differ ({left} vs {right})")]
    OrderMismatch { left: u32, right: u32 },

    #[error("constant term must be {expected}")]
    ConstantTerm { expected: &'static str },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("series diverges: {0}")]
    Divergence(String),

    #[error("requested accuracy not reached: {0}")]
    Accuracy(String),

    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),

    #[error("cache file {path} is corrupt at line {line}: {reason}")]
    CacheCorrupt {
        path: String,
        line: usize,
        reason: String,
    },

    #[error(
        "cache format version {found} does not match {expected}; clear the cache to rebuild it"
    )]
    CacheVersion { found: u32, expected: u32 },

    #[error(transparent)]
    Io(#[from] io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
