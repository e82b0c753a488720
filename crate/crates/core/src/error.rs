use thiserror::Error;

/// Crate-wide error type. Variants mirror the failure modes of the
/// individual pipeline stages.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("invalid braid word: {0}")]
    Parse(String),
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("bounded face is not a coherently oriented induced cycle: {0}")]
    Condition1Violation(String),
    #[error("reversing the selection leaves a directed cycle")]
    CyclicResult,
    #[error("vertex {0} is not a sink")]
    NotASink(u32),
    #[error("invalid checkerboard graph: {0}")]
    InvalidGraph(String),
    #[error("no vertex on the outer face can be peeled off")]
    NoPeelableVertex,
    #[error("monodromy minus identity is singular (two or more link components)")]
    SingularMonodromy,
    #[error("edge {0} is not a bridge")]
    NotABridge(u32),
    #[error("vertex {0} is not a cut vertex")]
    NotACutVertex(u32),
    #[error("vertex set must contain exactly one endpoint of every edge")]
    InvalidVertexCover,
    #[error("generator {0} does not appear in the word")]
    UnusedGenerator(u32),
    #[error("parameter out of range: {0}")]
    ParameterRange(String),
    #[error("malformed graph description: {0}")]
    Json(String),
    #[error("internal defect: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
