//! Undirected simple graphs with stable vertex and edge identifiers.
//!
//! Identifiers are dense integers handed out in creation order. Removing a
//! vertex or an edge leaves a hole; [`Graph::compact`] renumbers the survivors
//! and returns the mapping. Every iterator walks ids in ascending order, so
//! searches built on top of a graph are reproducible.

mod dot;
mod graph6;

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use dot::{emit_dot, Highlight};
pub use graph6::{emit_graph6, parse_graph6};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(pub u32);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EdgeId(pub u32);

impl VertexId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl EdgeId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
struct VertexSlot {
    incident: Vec<EdgeId>,
    label: Option<String>,
    pendant: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct EdgeSlot {
    ends: [VertexId; 2],
    label: Option<String>,
}

/// Undirected simple graph. Loops and parallel edges are rejected on insertion.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Graph {
    vertices: Vec<Option<VertexSlot>>,
    edges: Vec<Option<EdgeSlot>>,
    live_vertices: usize,
    live_edges: usize,
}

/// Mapping produced by [`Graph::compact`]: old id index -> new id (if it survived).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Reindex {
    pub vertices: Vec<Option<VertexId>>,
    pub edges: Vec<Option<EdgeId>>,
}

/// JSON adjacency dump: `{order, edges: [[u, v], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdjacencyJson {
    pub order: usize,
    pub edges: Vec<[u32; 2]>,
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Graph with `n` isolated vertices `0..n`.
    pub fn with_vertices(n: usize) -> Self {
        let mut g = Self::new();
        for _ in 0..n {
            g.add_vertex();
        }
        g
    }

    /// Builds a graph on `n` vertices from an edge list given as index pairs.
    pub fn from_edges(n: usize, edges: &[(u32, u32)]) -> Result<Self> {
        let mut g = Self::with_vertices(n);
        for &(u, v) in edges {
            g.add_edge(VertexId(u), VertexId(v))?;
        }
        Ok(g)
    }

    pub fn add_vertex(&mut self) -> VertexId {
        let id = VertexId(self.vertices.len() as u32);
        self.vertices.push(Some(VertexSlot::default()));
        self.live_vertices += 1;
        id
    }

    pub fn add_labeled_vertex(&mut self, label: impl Into<String>) -> VertexId {
        let v = self.add_vertex();
        self.vertex_slot_mut(v).expect("fresh vertex").label = Some(label.into());
        v
    }

    pub fn add_edge(&mut self, u: VertexId, v: VertexId) -> Result<EdgeId> {
        if !self.contains_vertex(u) {
            return Err(Error::UnknownVertex(u));
        }
        if !self.contains_vertex(v) {
            return Err(Error::UnknownVertex(v));
        }
        if u == v {
            return Err(Error::Loop(u));
        }
        if self.edge_between(u, v).is_some() {
            return Err(Error::ParallelEdge(u.min(v), u.max(v)));
        }
        let id = EdgeId(self.edges.len() as u32);
        self.edges.push(Some(EdgeSlot {
            ends: [u.min(v), u.max(v)],
            label: None,
        }));
        self.live_edges += 1;
        self.vertex_slot_mut(u).unwrap().incident.push(id);
        self.vertex_slot_mut(v).unwrap().incident.push(id);
        Ok(id)
    }

    pub fn add_labeled_edge(
        &mut self,
        u: VertexId,
        v: VertexId,
        label: impl Into<String>,
    ) -> Result<EdgeId> {
        let e = self.add_edge(u, v)?;
        self.edges[e.index()].as_mut().unwrap().label = Some(label.into());
        Ok(e)
    }

    pub fn remove_edge(&mut self, e: EdgeId) -> Result<()> {
        let slot = self
            .edges
            .get_mut(e.index())
            .and_then(Option::take)
            .ok_or(Error::UnknownEdge(e))?;
        self.live_edges -= 1;
        for end in slot.ends {
            self.vertex_slot_mut(end)
                .expect("edge endpoint exists")
                .incident
                .retain(|&x| x != e);
        }
        Ok(())
    }

    /// Removes `v` together with its incident edges.
    pub fn remove_vertex(&mut self, v: VertexId) -> Result<()> {
        let incident = self
            .vertex_slot(v)
            .ok_or(Error::UnknownVertex(v))?
            .incident
            .clone();
        for e in incident {
            self.remove_edge(e)?;
        }
        self.vertices[v.index()] = None;
        self.live_vertices -= 1;
        Ok(())
    }

    /// Renumbers vertices and edges densely, preserving relative order.
    pub fn compact(&self) -> (Graph, Reindex) {
        let mut out = Graph::new();
        let mut map = Reindex {
            vertices: vec![None; self.vertices.len()],
            edges: vec![None; self.edges.len()],
        };
        for v in self.vertices() {
            let slot = self.vertex_slot(v).unwrap();
            let nv = out.add_vertex();
            let ns = out.vertex_slot_mut(nv).unwrap();
            ns.label = slot.label.clone();
            ns.pendant = slot.pendant;
            map.vertices[v.index()] = Some(nv);
        }
        for (e, [a, b]) in self.edges() {
            let na = map.vertices[a.index()].unwrap();
            let nb = map.vertices[b.index()].unwrap();
            let ne = out.add_edge(na, nb).expect("source graph is simple");
            out.edges[ne.index()].as_mut().unwrap().label = self.edge_label(e).map(str::to_owned);
            map.edges[e.index()] = Some(ne);
        }
        (out, map)
    }

    pub fn is_compact(&self) -> bool {
        self.live_vertices == self.vertices.len() && self.live_edges == self.edges.len()
    }

    /// Number of live vertices.
    pub fn order(&self) -> usize {
        self.live_vertices
    }

    /// Number of live edges.
    pub fn size(&self) -> usize {
        self.live_edges
    }

    /// One past the largest vertex id ever issued; use to size per-vertex arrays.
    pub fn vertex_bound(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_bound(&self) -> usize {
        self.edges.len()
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.vertex_slot(v).is_some()
    }

    pub fn contains_edge(&self, e: EdgeId) -> bool {
        matches!(self.edges.get(e.index()), Some(Some(_)))
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.vertices
            .iter()
            .enumerate()
            .filter(|(_, s)| s.is_some())
            .map(|(i, _)| VertexId(i as u32))
    }

    pub fn edges(&self) -> impl Iterator<Item = (EdgeId, [VertexId; 2])> + '_ {
        self.edges
            .iter()
            .enumerate()
            .filter_map(|(i, s)| s.as_ref().map(|s| (EdgeId(i as u32), s.ends)))
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.edges().map(|(e, _)| e)
    }

    /// Endpoints in ascending order. Panics on an unknown edge.
    pub fn endpoints(&self, e: EdgeId) -> [VertexId; 2] {
        self.edges[e.index()]
            .as_ref()
            .unwrap_or_else(|| panic!("unknown edge {e}"))
            .ends
    }

    pub fn try_endpoints(&self, e: EdgeId) -> Result<[VertexId; 2]> {
        self.edges
            .get(e.index())
            .and_then(Option::as_ref)
            .map(|s| s.ends)
            .ok_or(Error::UnknownEdge(e))
    }

    pub fn other_end(&self, e: EdgeId, v: VertexId) -> VertexId {
        let [a, b] = self.endpoints(e);
        if a == v {
            b
        } else {
            debug_assert_eq!(b, v);
            a
        }
    }

    /// Incident edges in ascending id order.
    pub fn incident(&self, v: VertexId) -> &[EdgeId] {
        &self
            .vertex_slot(v)
            .unwrap_or_else(|| panic!("unknown vertex {v}"))
            .incident
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.incident(v).len()
    }

    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.incident(v).iter().map(move |&e| self.other_end(e, v))
    }

    pub fn edge_between(&self, u: VertexId, v: VertexId) -> Option<EdgeId> {
        let slot = self.vertex_slot(u)?;
        slot.incident
            .iter()
            .copied()
            .find(|&e| self.other_end(e, u) == v)
    }

    pub fn vertex_label(&self, v: VertexId) -> Option<&str> {
        self.vertex_slot(v)?.label.as_deref()
    }

    pub fn set_vertex_label(&mut self, v: VertexId, label: impl Into<String>) {
        if let Some(s) = self.vertex_slot_mut(v) {
            s.label = Some(label.into());
        }
    }

    pub fn edge_label(&self, e: EdgeId) -> Option<&str> {
        self.edges.get(e.index())?.as_ref()?.label.as_deref()
    }

    pub fn set_edge_label(&mut self, e: EdgeId, label: impl Into<String>) {
        if let Some(Some(s)) = self.edges.get_mut(e.index()) {
            s.label = Some(label.into());
        }
    }

    /// Marks `v` as the free end of a half-edge.
    pub fn set_pendant(&mut self, v: VertexId, pendant: bool) {
        if let Some(s) = self.vertex_slot_mut(v) {
            s.pendant = pendant;
        }
    }

    pub fn is_pendant(&self, v: VertexId) -> bool {
        self.vertex_slot(v).is_some_and(|s| s.pendant)
    }

    pub fn max_degree(&self) -> usize {
        self.vertices().map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// Fails with the first vertex whose degree is not `d`.
    pub fn check_regular(&self, d: usize) -> Result<()> {
        for v in self.vertices() {
            let degree = self.degree(v);
            if degree != d {
                return Err(match d {
                    3 => Error::NotCubic { vertex: v, degree },
                    4 => Error::NotFourRegular { vertex: v, degree },
                    _ => Error::Precondition(format!("{v} has degree {degree}, expected {d}")),
                });
            }
        }
        Ok(())
    }

    pub fn is_cubic(&self) -> bool {
        self.order() > 0 && self.check_regular(3).is_ok()
    }

    /// Connected components as sorted vertex lists, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<VertexId>> {
        self.components_avoiding(|_| false)
    }

    /// Components of the graph with every edge for which `skip` holds removed.
    pub fn components_avoiding(&self, skip: impl Fn(EdgeId) -> bool) -> Vec<Vec<VertexId>> {
        let mut seen = vec![false; self.vertex_bound()];
        let mut out = Vec::new();
        let mut queue = VecDeque::new();
        for s in self.vertices() {
            if seen[s.index()] {
                continue;
            }
            seen[s.index()] = true;
            queue.push_back(s);
            let mut comp = Vec::new();
            while let Some(u) = queue.pop_front() {
                comp.push(u);
                for &e in self.incident(u) {
                    if skip(e) {
                        continue;
                    }
                    let w = self.other_end(e, u);
                    if !seen[w.index()] {
                        seen[w.index()] = true;
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Length of a shortest circuit, `None` for forests.
    pub fn girth(&self) -> Option<usize> {
        let n = self.vertex_bound();
        let mut best: Option<usize> = None;
        let mut dist = vec![usize::MAX; n];
        let mut parent_edge = vec![None::<EdgeId>; n];
        let mut queue = VecDeque::new();
        for s in self.vertices() {
            dist.iter_mut().for_each(|d| *d = usize::MAX);
            dist[s.index()] = 0;
            parent_edge[s.index()] = None;
            queue.clear();
            queue.push_back(s);
            while let Some(u) = queue.pop_front() {
                if let Some(b) = best {
                    if 2 * dist[u.index()] >= b {
                        break;
                    }
                }
                for &e in self.incident(u) {
                    if Some(e) == parent_edge[u.index()] {
                        continue;
                    }
                    let w = self.other_end(e, u);
                    if dist[w.index()] == usize::MAX {
                        dist[w.index()] = dist[u.index()] + 1;
                        parent_edge[w.index()] = Some(e);
                        queue.push_back(w);
                    } else {
                        let len = dist[u.index()] + dist[w.index()] + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best
    }

    /// Dense adjacency dump. Vertex ids are renumbered if the graph has holes.
    pub fn to_adjacency_json(&self) -> AdjacencyJson {
        let (c, _) = self.compact();
        AdjacencyJson {
            order: c.order(),
            edges: c.edges().map(|(_, [a, b])| [a.0, b.0]).collect(),
        }
    }

    pub fn from_adjacency_json(j: &AdjacencyJson) -> Result<Self> {
        let mut g = Self::with_vertices(j.order);
        for &[a, b] in &j.edges {
            g.add_edge(VertexId(a), VertexId(b))?;
        }
        Ok(g)
    }

    /// Dense boolean adjacency matrix over live vertices in ascending order.
    pub fn adjacency_matrix(&self) -> Vec<Vec<bool>> {
        let (c, _) = self.compact();
        let n = c.order();
        let mut m = vec![vec![false; n]; n];
        for (_, [a, b]) in c.edges() {
            m[a.index()][b.index()] = true;
            m[b.index()][a.index()] = true;
        }
        m
    }

    fn vertex_slot(&self, v: VertexId) -> Option<&VertexSlot> {
        self.vertices.get(v.index())?.as_ref()
    }

    fn vertex_slot_mut(&mut self, v: VertexId) -> Option<&mut VertexSlot> {
        self.vertices.get_mut(v.index())?.as_mut()
    }
}

/// Edge subset of a host graph. The vertex set is induced by the endpoints.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Subgraph {
    edges: Vec<EdgeId>,
}

impl Subgraph {
    pub fn new(host: &Graph, edges: impl IntoIterator<Item = EdgeId>) -> Result<Self> {
        let mut edges: Vec<EdgeId> = edges.into_iter().collect();
        edges.sort_unstable();
        edges.dedup();
        if let Some(&e) = edges.iter().find(|&&e| !host.contains_edge(e)) {
            return Err(Error::UnknownEdge(e));
        }
        Ok(Self { edges })
    }

    /// Subgraph spanned by a closed vertex sequence (consecutive vertices adjacent).
    pub fn from_cycle(host: &Graph, cycle: &[VertexId]) -> Result<Self> {
        let mut edges = Vec::with_capacity(cycle.len());
        for i in 0..cycle.len() {
            let (a, b) = (cycle[i], cycle[(i + 1) % cycle.len()]);
            edges.push(host.edge_between(a, b).ok_or_else(|| {
                Error::Structure(format!("{a} and {b} are consecutive but not adjacent"))
            })?);
        }
        Self::new(host, edges)
    }

    /// Subgraph spanned by an open vertex sequence.
    pub fn from_path(host: &Graph, path: &[VertexId]) -> Result<Self> {
        let mut edges = Vec::with_capacity(path.len().saturating_sub(1));
        for w in path.windows(2) {
            edges.push(host.edge_between(w[0], w[1]).ok_or_else(|| {
                Error::Structure(format!("{} and {} are consecutive but not adjacent", w[0], w[1]))
            })?);
        }
        Self::new(host, edges)
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, e: EdgeId) -> bool {
        self.edges.binary_search(&e).is_ok()
    }

    pub fn vertices(&self, host: &Graph) -> Vec<VertexId> {
        let mut vs: Vec<VertexId> = self
            .edges
            .iter()
            .flat_map(|&e| host.endpoints(e))
            .collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    pub fn degree_in(&self, host: &Graph, v: VertexId) -> usize {
        host.incident(v).iter().filter(|&&e| self.contains(e)).count()
    }

    pub fn is_two_regular(&self, host: &Graph) -> bool {
        !self.is_empty()
            && self
                .vertices(host)
                .into_iter()
                .all(|v| self.degree_in(host, v) == 2)
    }

    /// Splits a 2-regular subgraph into its circuits, each as a vertex cycle
    /// starting at its smallest vertex.
    pub fn circuits(&self, host: &Graph) -> Result<Vec<Vec<VertexId>>> {
        if !self.is_two_regular(host) {
            return Err(Error::NotTwoRegular(format!("{} edges", self.len())));
        }
        let mut used = vec![false; host.edge_bound()];
        let mut out = Vec::new();
        for start in self.vertices(host) {
            let first = host
                .incident(start)
                .iter()
                .copied()
                .find(|&e| self.contains(e) && !used[e.index()]);
            let Some(mut e) = first else { continue };
            let mut cycle = vec![start];
            let mut at = start;
            loop {
                used[e.index()] = true;
                at = host.other_end(e, at);
                if at == start {
                    break;
                }
                cycle.push(at);
                e = host
                    .incident(at)
                    .iter()
                    .copied()
                    .find(|&f| self.contains(f) && !used[f.index()])
                    .expect("2-regular");
            }
            out.push(cycle);
        }
        Ok(out)
    }

    pub fn union(&self, other: &Subgraph) -> Subgraph {
        let mut edges = self.edges.clone();
        edges.extend_from_slice(&other.edges);
        edges.sort_unstable();
        edges.dedup();
        Subgraph { edges }
    }
}
