//! Demand-driven cover search on graphs of maximum degree 3.
//!
//! Each edge must be traversed by `demand(e)` trails. At a vertex of degree at
//! most 3 the demands fix how many trails pass through each pair of incident
//! edges, so the local "passes" are forced. The only freedom is, on an edge of
//! demand 2, which pass at one end continues into which pass at the other end.
//! A complete assignment of these binary choices is valid iff every resulting
//! trail visits each vertex at most once; trails either close into circuits
//! or run between degree-1 vertices.

use super::union::TrailUnion;
use super::{bfs_edge_order, Budget, Component, ComponentKind};
use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, VertexId};

#[derive(Clone, Copy, Debug)]
struct Pass {
    vertex: VertexId,
    edges: [Option<EdgeId>; 2],
}

#[derive(Clone, Copy, Debug)]
struct Choice {
    edge: EdgeId,
    options: [[(usize, usize); 2]; 2],
}

pub(crate) struct StrandModel {
    vertex_bound: usize,
    passes: Vec<Pass>,
    forced: Vec<(usize, usize, EdgeId)>,
    choices: Vec<Choice>,
}

pub(crate) enum Control {
    Stop,
    Continue,
}

pub(crate) struct Outcome {
    pub nodes: u64,
    pub budget_exhausted: bool,
}

impl StrandModel {
    /// `demand` is indexed by edge id. Returns `Ok(None)` when the demands are
    /// locally infeasible (odd parity at a vertex, a trail forced to end at a
    /// vertex of degree > 1), which means no cover exists.
    pub fn build(g: &Graph, demand: &[u8]) -> Result<Option<Self>> {
        let mut passes = Vec::new();
        let mut at_vertex: Vec<Vec<usize>> = vec![Vec::new(); g.vertex_bound()];
        for v in g.vertices() {
            let live: Vec<(EdgeId, u8)> = g
                .incident(v)
                .iter()
                .map(|&e| (e, demand[e.index()]))
                .filter(|&(_, d)| d > 0)
                .collect();
            let mut add = |pass: Pass, passes: &mut Vec<Pass>| {
                at_vertex[v.index()].push(passes.len());
                passes.push(pass);
            };
            match live.as_slice() {
                [] => {}
                &[(e, d)] => {
                    if g.degree(v) != 1 {
                        return Ok(None);
                    }
                    for _ in 0..d {
                        add(Pass { vertex: v, edges: [Some(e), None] }, &mut passes);
                    }
                }
                &[(a, da), (b, db)] => {
                    if da != db {
                        return Ok(None);
                    }
                    for _ in 0..da {
                        add(Pass { vertex: v, edges: [Some(a), Some(b)] }, &mut passes);
                    }
                }
                &[(a, da), (b, db), (c, dc)] => {
                    let (da, db, dc) = (da as i32, db as i32, dc as i32);
                    if (da + db + dc) % 2 != 0 {
                        return Ok(None);
                    }
                    let pairs = [
                        (a, b, (da + db - dc) / 2),
                        (a, c, (da + dc - db) / 2),
                        (b, c, (db + dc - da) / 2),
                    ];
                    if pairs.iter().any(|&(_, _, k)| k < 0) {
                        return Ok(None);
                    }
                    for (x, y, k) in pairs {
                        for _ in 0..k {
                            add(Pass { vertex: v, edges: [Some(x), Some(y)] }, &mut passes);
                        }
                    }
                }
                _ => {
                    return Err(Error::Precondition(format!(
                        "cover search needs maximum degree 3, {v} has {} covered edges",
                        live.len()
                    )))
                }
            }
        }

        let mut forced = Vec::new();
        let mut choice_of = vec![None; g.edge_bound()];
        for (e, [u, w]) in g.edges() {
            let d = demand[e.index()];
            if d == 0 {
                continue;
            }
            let holding = |x: VertexId| -> Vec<usize> {
                at_vertex[x.index()]
                    .iter()
                    .copied()
                    .filter(|&p| passes[p].edges.contains(&Some(e)))
                    .collect()
            };
            let (pu, pw) = (holding(u), holding(w));
            debug_assert_eq!(pu.len(), d as usize);
            debug_assert_eq!(pw.len(), d as usize);
            match d {
                1 => forced.push((pu[0], pw[0], e)),
                2 => {
                    choice_of[e.index()] = Some(Choice {
                        edge: e,
                        options: [[(pu[0], pw[0]), (pu[1], pw[1])], [(pu[0], pw[1]), (pu[1], pw[0])]],
                    })
                }
                _ => {
                    return Err(Error::Precondition(format!(
                        "edge demand {d} on {e} is not supported"
                    )))
                }
            }
        }
        let order = bfs_edge_order(g, |e| choice_of[e.index()].is_some());
        let choices = order.iter().map(|e| choice_of[e.index()].unwrap()).collect();
        Ok(Some(Self {
            vertex_bound: g.vertex_bound(),
            passes,
            forced,
            choices,
        }))
    }

    pub fn choice_count(&self) -> usize {
        self.choices.len()
    }

    /// Depth-first search over the binary choices in order; option 0 first.
    /// `on_solution` receives the option index per choice.
    pub fn search(
        &self,
        budget: Budget,
        on_solution: &mut dyn FnMut(&[u8]) -> Control,
    ) -> Outcome {
        let mut uf = TrailUnion::new(self.passes.len(), self.vertex_bound);
        for (i, p) in self.passes.iter().enumerate() {
            uf.seed(i, p.vertex.index());
        }
        let mut out = Outcome {
            nodes: 0,
            budget_exhausted: false,
        };
        for &(a, b, _) in &self.forced {
            if !uf.link(a, b, None) {
                return out;
            }
        }
        let mut picked = vec![0u8; self.choices.len()];
        self.dfs(0, &mut uf, &mut picked, budget, &mut out, on_solution);
        out
    }

    fn dfs(
        &self,
        depth: usize,
        uf: &mut TrailUnion,
        picked: &mut [u8],
        budget: Budget,
        out: &mut Outcome,
        on_solution: &mut dyn FnMut(&[u8]) -> Control,
    ) -> bool {
        if depth == self.choices.len() {
            return matches!(on_solution(picked), Control::Stop);
        }
        let choice = &self.choices[depth];
        for (k, opt) in choice.options.iter().enumerate() {
            out.nodes += 1;
            if budget.exceeded(out.nodes) {
                out.budget_exhausted = true;
                return true;
            }
            let cp = uf.checkpoint();
            if uf.link(opt[0].0, opt[0].1, None) && uf.link(opt[1].0, opt[1].1, None) {
                picked[depth] = k as u8;
                if self.dfs(depth + 1, uf, picked, budget, out, on_solution) {
                    uf.rollback(cp);
                    return true;
                }
            }
            uf.rollback(cp);
        }
        false
    }

    /// Trails of the cover selected by `picked`.
    pub fn components(&self, picked: &[u8]) -> Vec<Component> {
        let n = self.passes.len();
        let mut nbr: Vec<[Option<(usize, EdgeId)>; 2]> = vec![[None, None]; n];
        let attach = |p: usize, q: usize, e: EdgeId, nbr: &mut Vec<[Option<(usize, EdgeId)>; 2]>| {
            let slot = (0..2)
                .find(|&s| self.passes[p].edges[s] == Some(e) && nbr[p][s].is_none())
                .expect("pass holds edge");
            nbr[p][slot] = Some((q, e));
        };
        for &(a, b, e) in &self.forced {
            attach(a, b, e, &mut nbr);
            attach(b, a, e, &mut nbr);
        }
        for (c, &k) in self.choices.iter().zip(picked) {
            for &(a, b) in &c.options[k as usize] {
                attach(a, b, c.edge, &mut nbr);
                attach(b, a, c.edge, &mut nbr);
            }
        }

        let mut seen = vec![false; n];
        let mut out = Vec::new();
        let walk = |start: usize, exit: usize, seen: &mut Vec<bool>| -> (Vec<VertexId>, Vec<EdgeId>, bool) {
            let mut vertices = vec![self.passes[start].vertex];
            let mut edges = Vec::new();
            seen[start] = true;
            let (mut at, mut slot) = (start, exit);
            loop {
                let Some((next, e)) = nbr[at][slot] else {
                    return (vertices, edges, false);
                };
                edges.push(e);
                if next == start {
                    return (vertices, edges, true);
                }
                seen[next] = true;
                vertices.push(self.passes[next].vertex);
                // leave `next` through its other slot
                let in_slot = (0..2)
                    .find(|&s| nbr[next][s] == Some((at, e)))
                    .expect("symmetric link");
                at = next;
                slot = 1 - in_slot;
            }
        };
        for p in 0..n {
            if !seen[p] && self.passes[p].edges[1].is_none() {
                let (vertices, edges, _) = walk(p, 0, &mut seen);
                out.push(Component {
                    kind: ComponentKind::Path,
                    vertices,
                    edges,
                });
            }
        }
        for p in 0..n {
            if !seen[p] {
                let (vertices, edges, closed) = walk(p, 1, &mut seen);
                debug_assert!(closed);
                out.push(Component {
                    kind: ComponentKind::Circuit,
                    vertices,
                    edges,
                });
            }
        }
        out
    }
}
