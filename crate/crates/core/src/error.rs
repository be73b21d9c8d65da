use thiserror::Error;

use crate::multigraph::VertexId;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// A graph or decomposition file failed to parse.
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// The graph has no Euler tour (disconnected or odd-degree vertices).
    #[error("graph is not eulerian: {reason}")]
    NotEulerian { reason: String },

    /// A vertex with odd degree where an even one is required.
    #[error("vertex {0} has odd degree")]
    OddDegree(VertexId),

    /// Self-loops are rejected: the counting semantics are defined for
    /// loopless multigraphs only.
    #[error("self-loop at vertex {0}")]
    SelfLoop(VertexId),

    /// Vertex id outside the graph's range.
    #[error("vertex {0} out of range (graph has {1} vertices)")]
    VertexOutOfRange(VertexId, usize),

    /// A tree decomposition violates one of its defining properties.
    #[error("invalid tree decomposition: {0}")]
    InvalidDecomposition(String),

    /// A nice decomposition node of the wrong kind was handed to a table rule.
    #[error("decomposition node mismatch: {0}")]
    NodeMismatch(String),

    /// A brute-force oracle was asked for more edges than its cap allows.
    #[error("graph has {m} edges, exceeding the brute-force cap of {cap}")]
    CapExceeded { m: usize, cap: usize },
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}
