use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::factor::PermutationGraph;
use crate::graph::{EdgeId, Graph, VertexId};

/// Where the pieces of a spoke contraction came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContractionProvenance {
    /// Spoke of the cubic source contracted into each vertex.
    pub vertex_spoke: Vec<EdgeId>,
    /// Circuit edge of the source behind each edge.
    pub edge_source: Vec<EdgeId>,
    /// Edge indices of the two Hamiltonian circuits, in circuit order.
    pub circuits: [Vec<usize>; 2],
}

/// A 4-regular multigraph (no loops) with at most two disjoint transitions per
/// vertex. Edges are index pairs; vertices are `0..order`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransitionedFourRegular {
    order: usize,
    edges: Vec<[u32; 2]>,
    transitions: Vec<Vec<[usize; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    provenance: Option<ContractionProvenance>,
    #[serde(skip)]
    incident: Vec<Vec<usize>>,
}

impl TransitionedFourRegular {
    /// Requires exactly two disjoint transitions at every vertex.
    pub fn new(order: usize, edges: Vec<[u32; 2]>, transitions: Vec<Vec<[usize; 2]>>) -> Result<Self> {
        Self::build(order, edges, transitions, true)
    }

    /// Allows zero, one or two transitions per vertex.
    pub fn new_relaxed(
        order: usize,
        edges: Vec<[u32; 2]>,
        transitions: Vec<Vec<[usize; 2]>>,
    ) -> Result<Self> {
        Self::build(order, edges, transitions, false)
    }

    fn build(
        order: usize,
        edges: Vec<[u32; 2]>,
        transitions: Vec<Vec<[usize; 2]>>,
        strict: bool,
    ) -> Result<Self> {
        let mut incident = vec![Vec::new(); order];
        for (i, &[a, b]) in edges.iter().enumerate() {
            if a as usize >= order || b as usize >= order {
                return Err(Error::Transition(format!("edge {i} leaves the vertex range")));
            }
            if a == b {
                return Err(Error::Loop(VertexId(a)));
            }
            incident[a as usize].push(i);
            incident[b as usize].push(i);
        }
        for (v, inc) in incident.iter().enumerate() {
            if inc.len() != 4 {
                return Err(Error::NotFourRegular {
                    vertex: VertexId(v as u32),
                    degree: inc.len(),
                });
            }
        }
        if transitions.len() != order {
            return Err(Error::Transition(format!(
                "{} transition lists for {order} vertices",
                transitions.len()
            )));
        }
        for (v, ts) in transitions.iter().enumerate() {
            if ts.len() > 2 || (strict && ts.len() != 2) {
                return Err(Error::Transition(format!("vertex {v} has {} transitions", ts.len())));
            }
            let mut used = Vec::new();
            for t in ts {
                for e in t {
                    if !incident[v].contains(e) {
                        return Err(Error::Transition(format!("edge {e} is not incident to vertex {v}")));
                    }
                    if used.contains(e) {
                        return Err(Error::Transition(format!("transitions at vertex {v} overlap")));
                    }
                    used.push(*e);
                }
            }
        }
        Ok(Self {
            order,
            edges,
            transitions,
            provenance: None,
            incident,
        })
    }

    /// Rebuilds derived tables after deserialization.
    pub fn revalidated(self) -> Result<Self> {
        let strict = self.transitions.iter().all(|t| t.len() == 2);
        let provenance = self.provenance;
        let mut t = Self::build(self.order, self.edges, self.transitions, strict)?;
        t.provenance = provenance;
        Ok(t)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn edges(&self) -> &[[u32; 2]] {
        &self.edges
    }

    pub fn incident(&self, v: usize) -> &[usize] {
        &self.incident[v]
    }

    pub fn transitions(&self, v: usize) -> &[[usize; 2]] {
        &self.transitions[v]
    }

    pub fn provenance(&self) -> Option<&ContractionProvenance> {
        self.provenance.as_ref()
    }

    /// First pair of parallel edges, if any.
    pub fn parallel_pair(&self) -> Option<(u32, u32)> {
        let mut seen: Vec<[u32; 2]> = self.edges.iter().map(|&[a, b]| [a.min(b), a.max(b)]).collect();
        seen.sort_unstable();
        seen.windows(2).find(|w| w[0] == w[1]).map(|w| (w[0][0], w[0][1]))
    }

    /// The underlying simple graph; edge ids equal edge indices.
    pub fn graph(&self) -> Result<Graph> {
        let pairs: Vec<(u32, u32)> = self.edges.iter().map(|&[a, b]| (a, b)).collect();
        Graph::from_edges(self.order, &pairs)
    }
}

/// Contracts every spoke, allowing parallel edges in the result.
///
/// Vertex `i` is the `i`-th spoke in id order. Edges are the edges of circuit 1
/// in circuit order followed by those of circuit 2; the two transitions at a
/// vertex are its circuit-1 pair and its circuit-2 pair.
pub fn contract_spokes_multigraph(g: &PermutationGraph) -> Result<TransitionedFourRegular> {
    let report = g.verify()?;
    if !report.overall {
        return Err(Error::Precondition(format!(
            "spoke contraction needs a permutation 2-factor: {report:?}"
        )));
    }
    let f = &g.factor;
    let mut vertex_of = vec![u32::MAX; g.graph.vertex_bound()];
    for (i, &s) in f.spokes().iter().enumerate() {
        for end in g.graph.endpoints(s) {
            vertex_of[end.index()] = i as u32;
        }
    }
    let order = f.spokes().len();
    let mut edges = Vec::new();
    let mut edge_source = Vec::new();
    let mut circuits: [Vec<usize>; 2] = Default::default();
    let mut transitions = vec![Vec::new(); order];
    for (k, c) in f.circuits().iter().enumerate() {
        let n = c.len();
        for i in 0..n {
            let (a, b) = (c[i], c[(i + 1) % n]);
            let idx = edges.len();
            edges.push([vertex_of[a.index()], vertex_of[b.index()]]);
            edge_source.push(g.graph.edge_between(a, b).expect("circuit edge"));
            circuits[k].push(idx);
        }
        for (i, v) in c.iter().enumerate() {
            let before = circuits[k][(i + n - 1) % n];
            let after = circuits[k][i];
            let x = vertex_of[v.index()] as usize;
            transitions[x].push([before, after]);
        }
    }
    let mut t = TransitionedFourRegular::new(order, edges, transitions)?;
    t.provenance = Some(ContractionProvenance {
        vertex_spoke: f.spokes().to_vec(),
        edge_source,
        circuits,
    });
    Ok(t)
}

/// As [`contract_spokes_multigraph`], rejecting results with parallel edges.
pub fn contract_spokes(g: &PermutationGraph) -> Result<TransitionedFourRegular> {
    let t = contract_spokes_multigraph(g)?;
    if let Some((a, b)) = t.parallel_pair() {
        return Err(Error::ContractionParallel(VertexId(a), VertexId(b)));
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construction::petersen;
    use crate::factor::TwoFactor;

    #[test]
    fn petersen_contracts_to_k5() {
        let t = contract_spokes(&petersen()).unwrap();
        assert_eq!(t.order(), 5);
        assert_eq!(t.edges().len(), 10);
        let g = t.graph().unwrap();
        for v in g.vertices() {
            assert_eq!(g.degree(v), 4);
        }
        for v in 0..5 {
            assert_eq!(t.transitions(v).len(), 2);
        }
    }

    #[test]
    fn prism_contraction_is_parallel() {
        let g = Graph::from_edges(
            6,
            &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)],
        )
        .unwrap();
        let f = TwoFactor::new(&g, vec![[0, 1, 2].map(VertexId).to_vec(), [3, 4, 5].map(VertexId).to_vec()])
            .unwrap();
        let pg = PermutationGraph::new(g, f);
        assert!(matches!(contract_spokes(&pg), Err(Error::ContractionParallel(..))));
        let t = contract_spokes_multigraph(&pg).unwrap();
        assert_eq!((t.order(), t.edges().len()), (3, 6));
    }

    #[test]
    fn relaxed_mode_allows_empty_transitions() {
        let edges = vec![[0, 1], [1, 2], [2, 0], [0, 1], [1, 2], [2, 0]];
        assert!(TransitionedFourRegular::new(3, edges.clone(), vec![vec![]; 3]).is_err());
        TransitionedFourRegular::new_relaxed(3, edges, vec![vec![]; 3]).unwrap();
    }

    #[test]
    fn json_round_trip() {
        let t = contract_spokes(&petersen()).unwrap();
        let s = serde_json::to_string(&t).unwrap();
        let back: TransitionedFourRegular = serde_json::from_str(&s).unwrap();
        assert_eq!(back.revalidated().unwrap(), t);
    }
}
