//! Construction and exact verification of cyclically 5-edge-connected
//! permutation snarks.

pub mod connectivity;
pub mod construction;
pub mod cover;
pub mod error;
pub mod factor;
pub mod graph;

pub use error::{Error, Result};
pub use factor::{PermutationGraph, TwoFactor};
pub use graph::{EdgeId, Graph, Subgraph, VertexId};
