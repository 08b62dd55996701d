use thiserror::Error;

use crate::graph::{Edge, Vertex};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("vertex {0} out of range")]
    VertexOutOfRange(Vertex),
    #[error("edge {0} is not present")]
    MissingEdge(Edge),
    #[error("edge {0} is already present")]
    DuplicateEdge(Edge),
    #[error("component too small for a cut: {0} vertices")]
    ComponentTooSmall(usize),
    #[error("vertex set is not connected")]
    NotConnected,
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("expected {expected} labels, got {got}")]
    InvalidLabels { expected: usize, got: usize },
    #[error("edge crosses outside the bipartition: {0}")]
    NotBipartite(Edge),
    #[error("corrupt graph: {0}")]
    Corrupt(String),
}
