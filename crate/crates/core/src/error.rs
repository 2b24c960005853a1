use thiserror::Error;

use crate::graph::ValidationReport;

#[derive(Debug, Error)]
pub enum Error {
    #[error("graph6 parse error at byte {offset}: {kind}")]
    Graph6 { offset: usize, kind: Graph6ErrorKind },

    #[error("graph is not a valid cubic graph: {0}")]
    NotCubic(ValidationReport),

    #[error("graph has {n} vertices; at most {max} are supported here")]
    TooLarge { n: usize, max: usize },

    #[error("invalid embedding scheme: {0}")]
    InvalidScheme(String),

    #[error("malformed facial system: {0}")]
    MalformedSystem(String),

    #[error("corrupt facial system: {0}")]
    CorruptSystem(String),

    #[error("invalid extended graph: {0}")]
    InvalidExtended(String),

    #[error("extended graphs are over different underlying graphs")]
    GraphMismatch,

    #[error("walk assembly failed: {0}")]
    Assembly(String),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Graph6ErrorKind {
    Empty,
    BadHeader,
    ByteOutOfRange(u8),
    Truncated,
    TrailingData,
    NonZeroPadding,
}

impl std::fmt::Display for Graph6ErrorKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Graph6ErrorKind::Empty => write!(f, "empty input"),
            Graph6ErrorKind::BadHeader => write!(f, "malformed header"),
            Graph6ErrorKind::ByteOutOfRange(b) => write!(f, "byte 0x{b:02x} outside 63..=126"),
            Graph6ErrorKind::Truncated => write!(f, "truncated bit field"),
            Graph6ErrorKind::TrailingData => write!(f, "trailing bytes after bit field"),
            Graph6ErrorKind::NonZeroPadding => write!(f, "non-zero padding bits"),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
