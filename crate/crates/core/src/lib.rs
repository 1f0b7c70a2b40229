//! Kernelization toolkit for double, k-tuple and liar's domination on planar
//! graphs: exact solvers, the common-neighborhood reduction rule, rotation
//! system embeddings, region decompositions and the hardness gadgets.

pub mod domination;
pub mod error;
pub mod format;
pub mod gadgets;
pub mod generators;
pub mod graph;
pub mod harness;
pub mod kernelize;
pub mod plane;
pub mod regions;

pub use error::{Error, Result};
pub use graph::{Graph, Vertex, VertexSet};
