use thiserror::Error;

use crate::graph::{EdgeId, VertexId};

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("graph6 parse error at byte {offset}: {reason}")]
    Graph6 { offset: usize, reason: String },

    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),

    #[error("unknown edge {0}")]
    UnknownEdge(EdgeId),

    #[error("loop at vertex {0}")]
    Loop(VertexId),

    #[error("parallel edge between {0} and {1}")]
    ParallelEdge(VertexId, VertexId),

    #[error("graph is not cubic (vertex {vertex} has degree {degree})")]
    NotCubic { vertex: VertexId, degree: usize },

    #[error("graph is not 4-regular (vertex {vertex} has degree {degree})")]
    NotFourRegular { vertex: VertexId, degree: usize },

    #[error("structural error: {0}")]
    Structure(String),

    #[error("anchor error: {0}")]
    Anchor(String),

    #[error("block error: {0}")]
    Block(String),

    #[error("assembly rejected: {0}")]
    Assembly(String),

    #[error("construction error: {0}")]
    Construction(String),

    #[error("certification failed at level {level}: {check}")]
    Certification { level: usize, check: String },

    #[error("subgraph is not 2-regular: {0}")]
    NotTwoRegular(String),

    #[error("graph has a bridge ({0})")]
    Bridge(EdgeId),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("cyclic edge connectivity undefined: graph has no two vertex-disjoint circuits")]
    CyclicConnectivityUndefined,

    #[error("spoke contraction produced parallel edges between {0} and {1}")]
    ContractionParallel(VertexId, VertexId),

    #[error("not a cyclic 4-edge cut: {0}")]
    NotCyclicFourCut(String),

    #[error("invalid transition system: {0}")]
    Transition(String),

    #[error("fixture error: {0}")]
    Fixture(String),
}
