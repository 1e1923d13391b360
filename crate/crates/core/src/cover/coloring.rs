use std::time::Instant;

use super::{AsMembers, Budget, SearchStats, Verdict};
use crate::error::Result;
use crate::graph::{EdgeId, Graph};

/// A proper 3-edge-coloring as three perfect matchings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeColoring {
    pub classes: [Vec<EdgeId>; 3],
}

impl AsMembers for EdgeColoring {
    fn member_edges(&self) -> Vec<Vec<EdgeId>> {
        self.classes.to_vec()
    }
}

const UNSET: u8 = 3;

struct Search<'g> {
    g: &'g Graph,
    color: Vec<u8>,
    nodes: u64,
    budget: Budget,
    aborted: bool,
}

impl Search<'_> {
    fn used_at(&self, v: crate::graph::VertexId) -> u8 {
        self.g
            .incident(v)
            .iter()
            .filter(|e| self.color[e.index()] != UNSET)
            .fold(0u8, |m, e| m | 1 << self.color[e.index()])
    }

    fn allowed(&self, e: EdgeId) -> u8 {
        let [a, b] = self.g.endpoints(e);
        !(self.used_at(a) | self.used_at(b)) & 0b111
    }

    /// Most constrained uncolored edge, lowest id on ties.
    fn pick(&self) -> Option<(EdgeId, u8)> {
        let mut best: Option<(EdgeId, u8)> = None;
        for e in self.g.edge_ids() {
            if self.color[e.index()] != UNSET {
                continue;
            }
            let mask = self.allowed(e);
            if best.is_none_or(|(_, m)| mask.count_ones() < m.count_ones()) {
                best = Some((e, mask));
                if mask.count_ones() <= 1 {
                    break;
                }
            }
        }
        best
    }

    fn run(&mut self) -> bool {
        let Some((e, mask)) = self.pick() else {
            return true;
        };
        for c in 0..3u8 {
            if mask & (1 << c) == 0 {
                continue;
            }
            self.nodes += 1;
            if self.budget.exceeded(self.nodes) {
                self.aborted = true;
                return false;
            }
            self.color[e.index()] = c;
            if self.run() {
                return true;
            }
            self.color[e.index()] = UNSET;
            if self.aborted {
                return false;
            }
        }
        false
    }
}

/// Exhaustive backtracking for a proper 3-edge-coloring of a cubic graph.
///
/// The three edges at the smallest vertex are fixed to colors 0, 1, 2 (any
/// coloring can be permuted into this form); the remaining edges are branched
/// most-constrained-first.
pub fn three_edge_coloring(g: &Graph, budget: Budget) -> Result<Verdict<EdgeColoring>> {
    g.check_regular(3)?;
    let started = Instant::now();
    let mut s = Search {
        g,
        color: vec![UNSET; g.edge_bound()],
        nodes: 0,
        budget,
        aborted: false,
    };
    if let Some(v0) = g.vertices().next() {
        for (c, &e) in g.incident(v0).iter().enumerate() {
            s.color[e.index()] = c as u8;
        }
    }
    let space = format!(
        "proper 3-edge-colorings of a cubic graph on {} vertices / {} edges, colors at the smallest vertex fixed",
        g.order(),
        g.size()
    );
    let found = s.run();
    let stats = SearchStats::new(s.nodes, space, started);
    if found {
        let mut classes: [Vec<EdgeId>; 3] = Default::default();
        for e in g.edge_ids() {
            classes[s.color[e.index()] as usize].push(e);
        }
        Ok(Verdict::Sat {
            witness: EdgeColoring { classes },
            stats,
        })
    } else if s.aborted {
        Ok(Verdict::Indeterminate { stats })
    } else {
        Ok(Verdict::Unsat { stats })
    }
}
