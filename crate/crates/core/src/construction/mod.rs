//! Building the permutation snark family: anchors, blocks, four-block
//! assembly, the recursive family, and spoke contraction to transitioned
//! 4-regular graphs.

mod anchor;
mod block;
mod contract;
mod family;
mod gluing;

use crate::factor::{PermutationGraph, TwoFactor};
use crate::graph::{Graph, VertexId};

pub use anchor::{canonical_anchor, select_anchor, Anchor, Orientation};
pub use block::{build_block, Block, Retained};
pub use contract::{
    contract_spokes, contract_spokes_multigraph, ContractionProvenance, TransitionedFourRegular,
};
pub use family::{
    build_family, Certify, CheckOutcome, FamilyMember, LevelCertificate, DESK_CERTIFY_LIMIT,
};
pub use gluing::{
    assemble_h, discover_gluing, gluing_candidate, Assembly, GluingTable, Origin, PendantRef,
    CANDIDATE_COUNT, CANONICAL_TABLE_JSON, RETAINED,
};

/// Petersen graph: outer 5-circuit `0..4`, inner pentagram `5-7-9-6-8`,
/// spokes `i -- i+5`. Edge ids: outer edges, then spokes, then inner edges.
pub fn petersen() -> PermutationGraph {
    let mut edges: Vec<(u32, u32)> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
    edges.extend((0..5).map(|i| (i, i + 5)));
    edges.extend((0..5).map(|i| (5 + i, 5 + (i + 2) % 5)));
    let g = Graph::from_edges(10, &edges).expect("Petersen is simple");
    let outer = (0..5).map(VertexId).collect();
    let inner = [5, 7, 9, 6, 8].map(VertexId).to_vec();
    let f = TwoFactor::new(&g, vec![outer, inner]).expect("vertices exist");
    PermutationGraph::new(g, f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn petersen_shape() {
        let p = petersen();
        assert_eq!((p.graph.order(), p.graph.size()), (10, 15));
        assert!(p.verify().unwrap().overall);
        assert_eq!(p.graph.girth(), Some(5));
        assert_eq!(p.factor.spokes()[0], crate::graph::EdgeId(5));
    }
}
