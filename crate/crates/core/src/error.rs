use thiserror::Error;

use crate::graph::Vertex;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid vertex {0}: unknown or deleted")]
    InvalidVertex(Vertex),
    #[error("graph has no live vertices")]
    EmptyGraph,
    #[error("invalid vertex pair ({0}, {1})")]
    InvalidPair(Vertex, Vertex),
    #[error("not a simple graph: {0}")]
    NotSimple(String),
    #[error("instance with {n} vertices exceeds the solver cap of {cap}")]
    InstanceTooLarge { n: usize, cap: usize },
    #[error("search aborted after exploring {0} nodes")]
    SearchLimit(u64),
    #[error("rotation system is not planar: {0}")]
    NotPlanar(String),
    #[error("invalid embedding: {0}")]
    InvalidEmbedding(String),
    #[error("invalid region: {0}")]
    InvalidRegion(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("internal consistency violation: {0}")]
    Internal(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
