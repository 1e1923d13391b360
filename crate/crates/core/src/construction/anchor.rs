use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::factor::PermutationGraph;
use crate::graph::{EdgeId, VertexId};

/// Which circuit neighbor of a spoke end becomes `x2` (resp. `x4`).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    /// The smaller neighbor id.
    #[default]
    Ascending,
    Descending,
}

/// Marked configuration around a spoke `z1 z2`: `x1 x2 z2 x6` consecutive on
/// circuit 1 and `x4 z1 x5` consecutive on circuit 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Anchor {
    pub spoke: EdgeId,
    pub x1: VertexId,
    pub x2: VertexId,
    pub z2: VertexId,
    pub x6: VertexId,
    pub x4: VertexId,
    pub z1: VertexId,
    pub x5: VertexId,
}

impl Anchor {
    pub fn marks(&self) -> [VertexId; 7] {
        [self.x1, self.x2, self.z2, self.x6, self.x4, self.z1, self.x5]
    }
}

fn circuit_neighbors(c: &[VertexId], v: VertexId) -> [VertexId; 2] {
    let n = c.len();
    let i = c.iter().position(|&u| u == v).expect("vertex on circuit");
    [c[(i + n - 1) % n], c[(i + 1) % n]]
}

fn oriented(mut pair: [VertexId; 2], o: Orientation) -> [VertexId; 2] {
    pair.sort_unstable();
    if o == Orientation::Descending {
        pair.reverse();
    }
    pair
}

pub fn select_anchor(
    g: &PermutationGraph,
    spoke: EdgeId,
    orient1: Orientation,
    orient2: Orientation,
) -> Result<Anchor> {
    let f = &g.factor;
    if f.circuits().len() != 2 {
        return Err(Error::Anchor("host factor does not have two circuits".into()));
    }
    if !g.graph.contains_edge(spoke) || !f.is_spoke(spoke) {
        return Err(Error::Anchor(format!("{spoke} is not a spoke")));
    }
    let [a, b] = g.graph.endpoints(spoke);
    let (z2, z1) = match (f.circuit_of(a), f.circuit_of(b)) {
        (Some(0), Some(1)) => (a, b),
        (Some(1), Some(0)) => (b, a),
        _ => return Err(Error::Anchor(format!("{spoke} does not join the two circuits"))),
    };
    for (k, c) in f.circuits().iter().enumerate() {
        if c.len() < 4 {
            return Err(Error::Anchor(format!(
                "circuit {} has length {} < 4, marks would collide",
                k + 1,
                c.len()
            )));
        }
    }
    let (c1, c2) = (f.circuit(0), f.circuit(1));
    let [x2, x6] = oriented(circuit_neighbors(c1, z2), orient1);
    let [p, q] = circuit_neighbors(c1, x2);
    let x1 = if p == z2 { q } else { p };
    let [x4, x5] = oriented(circuit_neighbors(c2, z1), orient2);
    let anchor = Anchor {
        spoke,
        x1,
        x2,
        z2,
        x6,
        x4,
        z1,
        x5,
    };
    let mut marks = anchor.marks().to_vec();
    marks.sort_unstable();
    marks.dedup();
    if marks.len() != 7 {
        return Err(Error::Anchor("marked vertices are not distinct".into()));
    }
    if g.graph.girth().is_some_and(|girth| girth >= 5)
        && [x4, x5].iter().any(|&x| g.graph.edge_between(x2, x).is_some())
    {
        return Err(Error::Anchor("x2 adjacent to x4 or x5 in a graph of girth >= 5".into()));
    }
    Ok(anchor)
}

/// Lowest-id spoke, both orientations ascending.
pub fn canonical_anchor(g: &PermutationGraph) -> Result<Anchor> {
    let spoke = *g
        .factor
        .spokes()
        .first()
        .ok_or_else(|| Error::Anchor("host has no spokes".into()))?;
    select_anchor(g, spoke, Orientation::Ascending, Orientation::Ascending)
}
