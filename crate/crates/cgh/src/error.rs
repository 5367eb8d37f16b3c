use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Error)]
pub enum CghError {
    /// A vertex id outside the ground set `0..n`.
    #[error("vertex {vertex} out of range for a ground set of {n} points")]
    InvalidVertex { vertex: u32, n: u32 },

    /// A precondition on the arguments was violated.
    #[error("{0}")]
    Domain(String),

    /// The requested combination is not defined (e.g. zigzags of odd
    /// uniformity, or a stack search on an abstract hypergraph).
    #[error("{0}")]
    Unsupported(String),

    /// `extend_f` was called on an end whose extension set is empty.
    #[error("stuck end: the extension set X is empty")]
    StuckEnd,

    /// Malformed hypergraph text input.
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

impl CghError {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        CghError::Domain(msg.into())
    }

    pub(crate) fn unsupported(msg: impl Into<String>) -> Self {
        CghError::Unsupported(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, CghError>;
