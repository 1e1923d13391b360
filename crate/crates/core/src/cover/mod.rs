//! Exact searches: proper 3-edge-colorings, circuit double covers (plain,
//! containing a prescribed 2-regular subgraph, member-bounded), path-circuit
//! double covers of blocks, and compatible cycle decompositions.
//!
//! Every search is complete and deterministic. An UNSAT verdict is only
//! returned after the whole search space has been exhausted; if a node budget
//! runs out first the verdict is INDETERMINATE.

mod ccd;
mod cdc;
mod coloring;
mod pcdc;
mod strand;
mod union;

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::graph::{EdgeId, Graph, VertexId};

pub use ccd::{ccd_search, ccd_search_with, CcdSolution};
pub use cdc::{
    cdc_route, find_any_cdc, find_cdc_containing, find_cdc_containing_direct, find_cdc_via_ccd,
    lemma_2_3_check, ReductionRoute,
};
pub use coloring::{three_edge_coloring, EdgeColoring};
pub use pcdc::{pcdc_enumerate, PcdcEnumeration, PcdcSolution, PendantProperties};

/// Node budget for a search. `None` means unlimited.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    pub max_nodes: Option<u64>,
}

impl Budget {
    pub const UNLIMITED: Budget = Budget { max_nodes: None };

    pub fn nodes(n: u64) -> Self {
        Self { max_nodes: Some(n) }
    }

    #[inline]
    pub(crate) fn exceeded(&self, used: u64) -> bool {
        self.max_nodes.is_some_and(|m| used > m)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    pub nodes_expanded: u64,
    /// Plain-text description of the space that was searched, so a verdict can
    /// be cross-checked by an independent implementation.
    pub search_space: String,
    pub wall_time_ms: u64,
}

impl SearchStats {
    pub(crate) fn new(nodes: u64, space: impl Into<String>, started: Instant) -> Self {
        Self {
            nodes_expanded: nodes,
            search_space: space.into(),
            wall_time_ms: started.elapsed().as_millis() as u64,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Sat,
    Unsat,
    Indeterminate,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict<W> {
    Sat { witness: W, stats: SearchStats },
    Unsat { stats: SearchStats },
    Indeterminate { stats: SearchStats },
}

impl<W> Verdict<W> {
    pub fn status(&self) -> Status {
        match self {
            Verdict::Sat { .. } => Status::Sat,
            Verdict::Unsat { .. } => Status::Unsat,
            Verdict::Indeterminate { .. } => Status::Indeterminate,
        }
    }

    pub fn is_sat(&self) -> bool {
        matches!(self, Verdict::Sat { .. })
    }

    pub fn is_unsat(&self) -> bool {
        matches!(self, Verdict::Unsat { .. })
    }

    pub fn stats(&self) -> &SearchStats {
        match self {
            Verdict::Sat { stats, .. } | Verdict::Unsat { stats } | Verdict::Indeterminate { stats } => {
                stats
            }
        }
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Verdict::Sat { witness, .. } => Some(witness),
            _ => None,
        }
    }

    pub fn map<U>(self, f: impl FnOnce(W) -> U) -> Verdict<U> {
        match self {
            Verdict::Sat { witness, stats } => Verdict::Sat {
                witness: f(witness),
                stats,
            },
            Verdict::Unsat { stats } => Verdict::Unsat { stats },
            Verdict::Indeterminate { stats } => Verdict::Indeterminate { stats },
        }
    }
}

/// Anything that can be reported as a list of edge-id members.
pub trait AsMembers {
    fn member_edges(&self) -> Vec<Vec<EdgeId>>;
}

/// Wire form of a verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictJson {
    pub status: Status,
    pub members: Vec<Vec<u32>>,
    pub nodes_expanded: u64,
    pub wall_time_ms: u64,
    pub search_space: String,
}

impl<W: AsMembers> Verdict<W> {
    pub fn to_json(&self) -> VerdictJson {
        let stats = self.stats();
        VerdictJson {
            status: self.status(),
            members: self
                .witness()
                .map(|w| {
                    w.member_edges()
                        .into_iter()
                        .map(|m| m.into_iter().map(|e| e.0).collect())
                        .collect()
                })
                .unwrap_or_default(),
            nodes_expanded: stats.nodes_expanded,
            wall_time_ms: stats.wall_time_ms,
            search_space: stats.search_space.clone(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ComponentKind {
    Circuit,
    Path,
}

/// A circuit or an end-to-end path, as a vertex walk and its edges.
/// For a circuit the walk is closed implicitly (last vertex joins the first).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Component {
    pub kind: ComponentKind,
    pub vertices: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
}

/// One element of a cover: an edge-disjoint union of components.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Member {
    pub components: Vec<Component>,
}

impl Member {
    pub fn single(c: Component) -> Self {
        Self {
            components: vec![c],
        }
    }

    pub fn edges(&self) -> Vec<EdgeId> {
        let mut es: Vec<EdgeId> = self
            .components
            .iter()
            .flat_map(|c| c.edges.iter().copied())
            .collect();
        es.sort_unstable();
        es
    }

    pub fn contains(&self, e: EdgeId) -> bool {
        self.components.iter().any(|c| c.edges.contains(&e))
    }
}

/// A double cover of a host graph by members (CDC, PCDC or grouped k-CDC).
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverSolution {
    pub members: Vec<Member>,
}

impl CoverSolution {
    /// Per-edge coverage counts, indexed by edge id.
    pub fn coverage(&self, g: &Graph) -> Vec<u32> {
        let mut c = vec![0u32; g.edge_bound()];
        for m in &self.members {
            for comp in &m.components {
                for e in &comp.edges {
                    c[e.index()] += 1;
                }
            }
        }
        c
    }

    /// Number of circuit-level members (components).
    pub fn circuit_count(&self) -> usize {
        self.members.iter().map(|m| m.components.len()).sum()
    }

    /// Checks the double-cover conditions: every edge covered exactly twice,
    /// each component a genuine circuit or a path between degree-1 vertices,
    /// components of one member vertex-disjoint.
    pub fn validate(&self, g: &Graph) -> Result<(), String> {
        let cov = self.coverage(g);
        for e in g.edge_ids() {
            if cov[e.index()] != 2 {
                return Err(format!("{e} covered {} times", cov[e.index()]));
            }
        }
        for (mi, m) in self.members.iter().enumerate() {
            let mut seen = vec![false; g.vertex_bound()];
            for c in &m.components {
                check_component(g, c).map_err(|s| format!("member {mi}: {s}"))?;
                for v in &c.vertices {
                    if std::mem::replace(&mut seen[v.index()], true) {
                        return Err(format!("member {mi}: components share {v}"));
                    }
                }
            }
        }
        Ok(())
    }
}

fn check_component(g: &Graph, c: &Component) -> Result<(), String> {
    let n = c.vertices.len();
    let mut vs = c.vertices.clone();
    vs.sort_unstable();
    vs.dedup();
    if vs.len() != n {
        return Err("component repeats a vertex".into());
    }
    let closed = c.kind == ComponentKind::Circuit;
    let expected_edges = if closed { n } else { n.saturating_sub(1) };
    if c.edges.len() != expected_edges || (closed && n < 2) {
        return Err(format!("component with {n} vertices has {} edges", c.edges.len()));
    }
    for (i, &e) in c.edges.iter().enumerate() {
        let (a, b) = (c.vertices[i], c.vertices[(i + 1) % n]);
        let ends = g.try_endpoints(e).map_err(|x| x.to_string())?;
        if !(ends == [a.min(b), a.max(b)]) {
            return Err(format!("{e} does not join {a} and {b}"));
        }
    }
    if !closed {
        for end in [c.vertices[0], c.vertices[n - 1]] {
            if g.degree(end) != 1 {
                return Err(format!("path ends at {end} of degree {}", g.degree(end)));
            }
        }
    }
    Ok(())
}

impl AsMembers for CoverSolution {
    fn member_edges(&self) -> Vec<Vec<EdgeId>> {
        self.members.iter().map(Member::edges).collect()
    }
}

/// Edges in breadth-first discovery order from the smallest vertex, restricted
/// to `keep`. Consecutive edges tend to share vertices, which lets trail
/// conflicts surface early in the searches.
pub(crate) fn bfs_edge_order(g: &Graph, keep: impl Fn(EdgeId) -> bool) -> Vec<EdgeId> {
    let mut seen_v = vec![false; g.vertex_bound()];
    let mut seen_e = vec![false; g.edge_bound()];
    let mut out = Vec::new();
    let mut queue = std::collections::VecDeque::new();
    for s in g.vertices() {
        if seen_v[s.index()] {
            continue;
        }
        seen_v[s.index()] = true;
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            for &e in g.incident(u) {
                if !seen_e[e.index()] {
                    seen_e[e.index()] = true;
                    if keep(e) {
                        out.push(e);
                    }
                }
                let w = g.other_end(e, u);
                if !seen_v[w.index()] {
                    seen_v[w.index()] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    out
}

/// First bridge of `g` in edge-id order, if any.
pub fn find_bridge(g: &Graph) -> Option<EdgeId> {
    let base = g.components().len();
    g.edge_ids()
        .find(|&e| g.components_avoiding(|f| f == e).len() > base)
}
