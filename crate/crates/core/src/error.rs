use std::time::Duration;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("graph must have at least one vertex")]
    EmptyGraph,
    #[error("graph has {0} vertices; at most {max} are supported", max = crate::MAX_VERTICES)]
    TooManyVertices(usize),
    #[error("edge ({u}, {v}) has an endpoint outside 0..{n}")]
    VertexOutOfRange { u: usize, v: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("source set is empty")]
    EmptySourceSet,
    #[error("graph is disconnected")]
    Disconnected,

    #[error("graph6: {0}")]
    Graph6(String),
    #[error("edge list: {0}")]
    EdgeList(String),

    #[error("invalid path: {0}")]
    InvalidPath(String),
    #[error("vertex {0} is not on the path")]
    NotOnPath(usize),
    #[error("path index {0} out of range (expected 0, 1 or 2)")]
    PathIndex(usize),
    #[error("pairwise intersection needs two different indices, got {0} twice")]
    SameIndex(usize),
    #[error("triple paths must be pairwise distinct")]
    DuplicatePath,
    #[error("path {0:?} is not a longest path (expected {1} vertices)")]
    NotLongest(Vec<usize>, usize),
    #[error("longest-path enumeration truncated at cap {0}")]
    Truncated(usize),
    #[error("path with a single vertex has no two distinct ends to extend")]
    DegeneratePath,

    #[error("exact search budget exceeded: {0}")]
    Budget(String),
    #[error("search exceeded its {0:?} wall-clock ceiling")]
    Timeout(Duration),

    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("i/o: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
