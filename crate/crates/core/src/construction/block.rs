use serde::{Deserialize, Serialize};

use super::anchor::Anchor;
use crate::error::{Error, Result};
use crate::factor::PermutationGraph;
use crate::graph::{EdgeId, Graph, Subgraph, VertexId};

/// Which of the two end-edges at `x2` keeps its pendant end through assembly.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Retained {
    E2,
    E3,
}

impl Retained {
    /// Pendant label number, 2 or 3.
    pub fn label(self) -> u8 {
        match self {
            Retained::E2 => 2,
            Retained::E3 => 3,
        }
    }
}

/// A fragment cut out of an anchored permutation graph, with six pendant edges
/// `e1..e6` and the path family `A1, A2, A3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub graph: Graph,
    pub anchor: Anchor,
    pub retained: Retained,
    /// `e1..e6`.
    pub pendant_edges: [EdgeId; 6],
    /// `y1..y6`.
    pub pendant_vertices: [VertexId; 6],
    /// `A1 = y1 x1 .. x6 y6`, `A2 = y4 x4 .. x5 y5`, `A3 = y2 x2 y3`.
    pub paths: [Vec<VertexId>; 3],
    /// Source vertex of each fragment vertex; `None` for the `y`s.
    pub source_vertex: Vec<Option<VertexId>>,
    pub source_order: usize,
    pub source_size: usize,
}

impl Block {
    /// Pendant edge `e_k`, `k` in 1..=6.
    pub fn pendant_edge(&self, k: u8) -> EdgeId {
        self.pendant_edges[k as usize - 1]
    }

    /// Interior endpoint of `e_k`.
    pub fn attachment(&self, k: u8) -> VertexId {
        let e = self.pendant_edge(k);
        self.graph.other_end(e, self.pendant_vertices[k as usize - 1])
    }

    pub fn path_subgraphs(&self) -> Result<[Subgraph; 3]> {
        Ok([
            Subgraph::from_path(&self.graph, &self.paths[0])?,
            Subgraph::from_path(&self.graph, &self.paths[1])?,
            Subgraph::from_path(&self.graph, &self.paths[2])?,
        ])
    }

    pub fn validate(&self) -> Result<()> {
        let g = &self.graph;
        let bad = |s: String| Err(Error::Block(s));
        for v in g.vertices() {
            let want = if g.is_pendant(v) { 1 } else { 3 };
            if g.degree(v) != want {
                return bad(format!("{v} has degree {}, expected {want}", g.degree(v)));
            }
        }
        for (k, (&e, &y)) in self.pendant_edges.iter().zip(&self.pendant_vertices).enumerate() {
            let ends = g.try_endpoints(e)?;
            if !ends.contains(&y) || !g.is_pendant(y) || g.is_pendant(g.other_end(e, y)) {
                return bad(format!("e{} is not a pendant edge ending at y{}", k + 1, k + 1));
            }
        }
        let ends = [[0, 5], [3, 4], [1, 2]];
        for (p, [s, t]) in self.paths.iter().zip(ends) {
            if p.first() != Some(&self.pendant_vertices[s]) || p.last() != Some(&self.pendant_vertices[t]) {
                return bad("path family end-edges do not match the pendant labels".into());
            }
        }
        if self.paths[2].len() != 3 {
            return bad(format!("A3 has {} vertices, expected 3", self.paths[2].len()));
        }
        self.path_subgraphs()?;
        let mut seen = vec![false; g.vertex_bound()];
        for p in &self.paths {
            for v in p {
                if std::mem::replace(&mut seen[v.index()], true) {
                    return bad(format!("paths share {v}"));
                }
            }
        }
        if g.vertices().any(|v| !seen[v.index()]) {
            return bad("path family does not cover every vertex".into());
        }
        Ok(())
    }
}

/// Cuts the block for `a` out of its host: drops `x1 x2`, `z1`, `z2`, and
/// attaches pendant edges `e1 = x1y1, e2 = x2y2, e3 = x2y3, e4 = x4y4,
/// e5 = x5y5, e6 = x6y6`. Vertex and edge ids are compacted.
pub fn build_block(host: &PermutationGraph, a: &Anchor, retained: Retained) -> Result<Block> {
    let g0 = &host.graph;
    let f = &host.factor;
    for v in a.marks() {
        if !g0.contains_vertex(v) {
            return Err(Error::Block(format!("anchor vertex {v} not in host")));
        }
    }
    let consecutive = |u: VertexId, v: VertexId, k: usize| {
        let c = f.circuit(k);
        let n = c.len();
        let i = c.iter().position(|&x| x == u);
        i.is_some_and(|i| c[(i + 1) % n] == v || c[(i + n - 1) % n] == v)
    };
    if !(consecutive(a.x1, a.x2, 0)
        && consecutive(a.x2, a.z2, 0)
        && consecutive(a.z2, a.x6, 0)
        && consecutive(a.x4, a.z1, 1)
        && consecutive(a.z1, a.x5, 1)
        && g0.try_endpoints(a.spoke)? == [a.z1.min(a.z2), a.z1.max(a.z2)])
    {
        return Err(Error::Block("anchor does not match the host factor".into()));
    }

    // walk circuit k from `from` away from `away` until reaching `to`
    let arc = |k: usize, from: VertexId, away: VertexId, to: VertexId| -> Vec<VertexId> {
        let c = f.circuit(k);
        let n = c.len();
        let i = c.iter().position(|&x| x == from).unwrap();
        let step = if c[(i + 1) % n] == away { n - 1 } else { 1 };
        let mut out = vec![from];
        let mut j = i;
        while c[j] != to {
            j = (j + step) % n;
            out.push(c[j]);
        }
        out
    };
    let arc1 = arc(0, a.x1, a.x2, a.x6);
    let arc2 = arc(1, a.x4, a.z1, a.x5);

    let mut g = g0.clone();
    let x1x2 = g.edge_between(a.x1, a.x2).expect("checked consecutive");
    g.remove_edge(x1x2)?;
    g.remove_vertex(a.z1)?;
    g.remove_vertex(a.z2)?;
    let attach = [a.x1, a.x2, a.x2, a.x4, a.x5, a.x6];
    let mut ys = Vec::new();
    let mut es = Vec::new();
    for (k, &x) in attach.iter().enumerate() {
        let y = g.add_labeled_vertex(format!("y{}", k + 1));
        g.set_pendant(y, true);
        let e = g.add_labeled_edge(x, y, format!("e{}", k + 1))?;
        ys.push(y);
        es.push(e);
    }
    let (g, map) = g.compact();
    let mv = |v: VertexId| map.vertices[v.index()].expect("survives");
    let pendant_vertices: [VertexId; 6] = std::array::from_fn(|k| mv(ys[k]));
    let pendant_edges: [EdgeId; 6] = std::array::from_fn(|k| map.edges[es[k].index()].unwrap());
    let wrap = |y0: usize, inner: &[VertexId], y1: usize| -> Vec<VertexId> {
        let mut p = vec![pendant_vertices[y0]];
        p.extend(inner.iter().map(|&v| mv(v)));
        p.push(pendant_vertices[y1]);
        p
    };
    let paths = [
        wrap(0, &arc1, 5),
        wrap(3, &arc2, 4),
        wrap(1, &[a.x2], 2),
    ];
    let mut source_vertex = vec![None; g.vertex_bound()];
    for v in g0.vertices() {
        if let Some(nv) = map.vertices[v.index()] {
            if !ys.contains(&v) {
                source_vertex[nv.index()] = Some(v);
            }
        }
    }
    let block = Block {
        graph: g,
        anchor: *a,
        retained,
        pendant_edges,
        pendant_vertices,
        paths,
        source_vertex,
        source_order: g0.order(),
        source_size: g0.size(),
    };
    block.validate()?;
    Ok(block)
}
