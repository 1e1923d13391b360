//! Cyclic and essential edge connectivity by complete enumeration of bonds
//! (edge cuts whose two sides are connected), plus checks on the structure of
//! small cyclic cuts in permutation graphs.
//!
//! A bond `B` of size `k` is found exactly once: as `P ∪ {e}` where `P` holds
//! the `k-1` smallest edges of `B`, `G - P` is connected, `e > max P` is a
//! bridge of `G - P` and every edge of `P` joins the two sides of that bridge.
//! Minimum cyclic and essential cuts are bonds.

use std::collections::VecDeque;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::construction::TransitionedFourRegular;
use crate::error::{Error, Result};
use crate::factor::PermutationGraph;
use crate::graph::{EdgeId, Graph, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CutClass {
    /// Both sides contain a circuit.
    Cyclic,
    /// Both sides have at least two vertices, not both contain a circuit.
    Essential,
    Neither,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutWitness {
    pub edges: Vec<EdgeId>,
    pub side_a: Vec<VertexId>,
    pub side_b: Vec<VertexId>,
    pub side_a_cyclic: bool,
    pub side_b_cyclic: bool,
    pub classification: CutClass,
}

impl CutWitness {
    /// Recomputes the witness from scratch: removing the edges leaves exactly
    /// the two recorded sides, and the circuit flags agree with a DFS.
    pub fn validate(&self, g: &Graph) -> std::result::Result<(), String> {
        let mut comps = g.components_avoiding(|e| self.edges.contains(&e));
        for c in &mut comps {
            c.sort_unstable();
        }
        comps.sort();
        let mut want = vec![self.side_a.clone(), self.side_b.clone()];
        for c in &mut want {
            c.sort_unstable();
        }
        want.sort();
        if comps != want {
            return Err(format!("removal leaves {} components, not the recorded sides", comps.len()));
        }
        let cut = |e: EdgeId| self.edges.contains(&e);
        let a = dfs_has_circuit(g, &self.side_a, cut);
        let b = dfs_has_circuit(g, &self.side_b, cut);
        if (a, b) != (self.side_a_cyclic, self.side_b_cyclic) {
            return Err("circuit flags disagree with DFS".into());
        }
        if classify(self.side_a.len(), self.side_b.len(), a, b) != self.classification {
            return Err("classification disagrees".into());
        }
        Ok(())
    }
}

fn classify(na: usize, nb: usize, ca: bool, cb: bool) -> CutClass {
    if ca && cb {
        CutClass::Cyclic
    } else if na >= 2 && nb >= 2 {
        CutClass::Essential
    } else {
        CutClass::Neither
    }
}

/// DFS over `side` avoiding cut edges; a non-tree edge means a circuit.
fn dfs_has_circuit(g: &Graph, side: &[VertexId], cut: impl Fn(EdgeId) -> bool) -> bool {
    let mut parent_edge = vec![None; g.vertex_bound()];
    let mut seen = vec![false; g.vertex_bound()];
    let Some(&start) = side.first() else { return false };
    let mut stack = vec![start];
    seen[start.index()] = true;
    while let Some(u) = stack.pop() {
        for &e in g.incident(u) {
            if cut(e) || parent_edge[u.index()] == Some(e) {
                continue;
            }
            let w = g.other_end(e, u);
            if seen[w.index()] {
                return true;
            }
            seen[w.index()] = true;
            parent_edge[w.index()] = Some(e);
            stack.push(w);
        }
    }
    false
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CutBound {
    Exact { value: usize, witness: CutWitness },
    /// No qualifying cut smaller than `value` exists.
    AtLeast { value: usize },
}

impl CutBound {
    pub fn value(&self) -> usize {
        match self {
            CutBound::Exact { value, .. } | CutBound::AtLeast { value } => *value,
        }
    }

    pub fn exact(&self) -> Option<usize> {
        match self {
            CutBound::Exact { value, .. } => Some(*value),
            CutBound::AtLeast { .. } => None,
        }
    }

    pub fn witness(&self) -> Option<&CutWitness> {
        match self {
            CutBound::Exact { witness, .. } => Some(witness),
            CutBound::AtLeast { .. } => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConnectivityReport {
    pub bound: CutBound,
    pub cap: usize,
    /// Candidate sets `P` whose complement was tested for bridges.
    pub subsets_examined: u64,
}

/// Compact multigraph view used by the enumerator.
struct Net {
    n: usize,
    edges: Vec<[u32; 2]>,
    adj: Vec<Vec<(u32, u32)>>,
    edge_ids: Vec<EdgeId>,
    vertex_ids: Vec<VertexId>,
}

struct Sides {
    in_a: Vec<bool>,
    a: Vec<u32>,
    b: Vec<u32>,
    a_cyclic: bool,
    b_cyclic: bool,
}

impl Sides {
    fn crosses(&self, [x, y]: [u32; 2]) -> bool {
        self.in_a[x as usize] != self.in_a[y as usize]
    }
}

impl Net {
    fn from_graph(g: &Graph) -> Self {
        let vertex_ids: Vec<VertexId> = g.vertices().collect();
        let mut local = vec![u32::MAX; g.vertex_bound()];
        for (i, v) in vertex_ids.iter().enumerate() {
            local[v.index()] = i as u32;
        }
        let mut edges = Vec::new();
        let mut edge_ids = Vec::new();
        for (e, [a, b]) in g.edges() {
            edges.push([local[a.index()], local[b.index()]]);
            edge_ids.push(e);
        }
        Self::build(vertex_ids, edges, edge_ids)
    }

    fn from_multigraph(n: usize, edges: &[[u32; 2]]) -> Self {
        let vertex_ids = (0..n as u32).map(VertexId).collect();
        let edge_ids = (0..edges.len() as u32).map(EdgeId).collect();
        Self::build(vertex_ids, edges.to_vec(), edge_ids)
    }

    fn build(vertex_ids: Vec<VertexId>, edges: Vec<[u32; 2]>, edge_ids: Vec<EdgeId>) -> Self {
        let n = vertex_ids.len();
        let mut adj = vec![Vec::new(); n];
        for (i, &[a, b]) in edges.iter().enumerate() {
            adj[a as usize].push((b, i as u32));
            adj[b as usize].push((a, i as u32));
        }
        Self {
            n,
            edges,
            adj,
            edge_ids,
            vertex_ids,
        }
    }

    fn connected(&self, removed: &[bool]) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0u32];
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &(w, e) in &self.adj[u as usize] {
                if !removed[e as usize] && !seen[w as usize] {
                    seen[w as usize] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.n
    }

    /// Bridges of the connected graph `G - removed`, ascending.
    fn bridges(&self, removed: &[bool]) -> Vec<u32> {
        let n = self.n;
        let mut disc = vec![u32::MAX; n];
        let mut low = vec![0u32; n];
        let mut out = Vec::new();
        let mut time = 0u32;
        // (vertex, parent edge, next adjacency index)
        let mut stack: Vec<(u32, u32, usize)> = Vec::new();
        for s in 0..n as u32 {
            if disc[s as usize] != u32::MAX {
                continue;
            }
            disc[s as usize] = time;
            low[s as usize] = time;
            time += 1;
            stack.push((s, u32::MAX, 0));
            while let Some(top) = stack.last_mut() {
                let (u, pe, i) = *top;
                if let Some(&(w, e)) = self.adj[u as usize].get(i) {
                    top.2 += 1;
                    if removed[e as usize] || e == pe {
                        continue;
                    }
                    if disc[w as usize] == u32::MAX {
                        disc[w as usize] = time;
                        low[w as usize] = time;
                        time += 1;
                        stack.push((w, e, 0));
                    } else {
                        low[u as usize] = low[u as usize].min(disc[w as usize]);
                    }
                } else {
                    stack.pop();
                    if let Some(&(p, _, _)) = stack.last() {
                        low[p as usize] = low[p as usize].min(low[u as usize]);
                        if low[u as usize] > disc[p as usize] {
                            out.push(pe);
                        }
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }

    fn sides(&self, removed: &[bool], start: u32) -> Sides {
        let mut in_a = vec![false; self.n];
        let mut queue = VecDeque::from([start]);
        in_a[start as usize] = true;
        while let Some(u) = queue.pop_front() {
            for &(w, e) in &self.adj[u as usize] {
                if !removed[e as usize] && !in_a[w as usize] {
                    in_a[w as usize] = true;
                    queue.push_back(w);
                }
            }
        }
        let (mut ea, mut eb) = (0usize, 0usize);
        for (i, &[x, y]) in self.edges.iter().enumerate() {
            if removed[i] {
                continue;
            }
            if in_a[x as usize] && in_a[y as usize] {
                ea += 1;
            } else if !in_a[x as usize] && !in_a[y as usize] {
                eb += 1;
            }
        }
        let (a, b): (Vec<u32>, Vec<u32>) = (0..self.n as u32).partition(|&v| in_a[v as usize]);
        Sides {
            a_cyclic: ea >= a.len(),
            b_cyclic: eb >= b.len(),
            a,
            b,
            in_a,
        }
    }

    fn witness(&self, cut: &[u32], s: &Sides) -> CutWitness {
        let vids = |xs: &[u32]| xs.iter().map(|&v| self.vertex_ids[v as usize]).collect::<Vec<_>>();
        CutWitness {
            edges: cut.iter().map(|&e| self.edge_ids[e as usize]).collect(),
            side_a: vids(&s.a),
            side_b: vids(&s.b),
            side_a_cyclic: s.a_cyclic,
            side_b_cyclic: s.b_cyclic,
            classification: classify(s.a.len(), s.b.len(), s.a_cyclic, s.b_cyclic),
        }
    }

    /// Visits bonds of size `k` whose smallest edge is `first` (any edge when
    /// `k == 1`), in lexicographic order. `visit` returns true to stop.
    /// Returns the number of subsets `P` examined.
    fn bonds_from(
        &self,
        k: usize,
        first: Option<u32>,
        visit: &mut dyn FnMut(&[u32], &Sides) -> bool,
    ) -> u64 {
        let m = self.edges.len();
        let mut removed = vec![false; m];
        let mut p: Vec<u32> = Vec::with_capacity(k);
        let mut examined = 0u64;
        if let Some(f) = first {
            removed[f as usize] = true;
            p.push(f);
        }

        fn rec(
            net: &Net,
            k: usize,
            removed: &mut Vec<bool>,
            p: &mut Vec<u32>,
            examined: &mut u64,
            visit: &mut dyn FnMut(&[u32], &Sides) -> bool,
        ) -> bool {
            if !net.connected(removed) {
                return false;
            }
            let m = net.edges.len() as u32;
            if p.len() == k - 1 {
                *examined += 1;
                let floor = p.last().map_or(0, |&x| x + 1);
                for e in net.bridges(removed) {
                    if e < floor {
                        continue;
                    }
                    removed[e as usize] = true;
                    let sides = net.sides(removed, net.edges[e as usize][0]);
                    if !p.iter().all(|&x| sides.crosses(net.edges[x as usize])) {
                        removed[e as usize] = false;
                        continue;
                    }
                    p.push(e);
                    let stop = visit(p, &sides);
                    p.pop();
                    removed[e as usize] = false;
                    if stop {
                        return true;
                    }
                }
                return false;
            }
            let start = p.last().map_or(0, |&x| x + 1);
            // leave room for the remaining members and the bridge
            let slots = (k - 1 - p.len()) as u32;
            for e in start..m.saturating_sub(slots) {
                removed[e as usize] = true;
                p.push(e);
                let stop = rec(net, k, removed, p, examined, visit);
                p.pop();
                removed[e as usize] = false;
                if stop {
                    return true;
                }
            }
            false
        }

        let _ = m;
        rec(self, k, &mut removed, &mut p, &mut examined, visit);
        examined
    }

    /// Lexicographically first bond of size `k` satisfying `accept`, searched
    /// in parallel over the smallest edge; also the number of subsets examined.
    fn first_bond(
        &self,
        k: usize,
        accept: &(dyn Fn(&Sides) -> bool + Sync),
    ) -> (Option<CutWitness>, u64) {
        let run = |first: Option<u32>| {
            let mut found = None;
            let examined = self.bonds_from(k, first, &mut |cut, s| {
                if accept(s) {
                    found = Some(self.witness(cut, s));
                    true
                } else {
                    false
                }
            });
            (found, examined)
        };
        let results: Vec<(Option<CutWitness>, u64)> = if k == 1 {
            vec![run(None)]
        } else {
            (0..self.edges.len() as u32)
                .into_par_iter()
                .map(|f| run(Some(f)))
                .collect()
        };
        let examined = results.iter().map(|r| r.1).sum();
        (results.into_iter().find_map(|r| r.0), examined)
    }

    fn all_bonds(&self, k: usize, accept: &(dyn Fn(&Sides) -> bool + Sync)) -> Vec<CutWitness> {
        let run = |first: Option<u32>| {
            let mut out = Vec::new();
            self.bonds_from(k, first, &mut |cut, s| {
                if accept(s) {
                    out.push(self.witness(cut, s));
                }
                false
            });
            out
        };
        if k == 1 {
            run(None)
        } else {
            (0..self.edges.len() as u32)
                .into_par_iter()
                .map(|f| run(Some(f)))
                .collect::<Vec<_>>()
                .concat()
        }
    }

    fn minimum(&self, cap: usize, accept: &(dyn Fn(&Sides) -> bool + Sync)) -> ConnectivityReport {
        let mut total = 0;
        for k in 1..cap {
            let (found, examined) = self.first_bond(k, accept);
            total += examined;
            if let Some(witness) = found {
                return ConnectivityReport {
                    bound: CutBound::Exact { value: k, witness },
                    cap,
                    subsets_examined: total,
                };
            }
        }
        ConnectivityReport {
            bound: CutBound::AtLeast { value: cap },
            cap,
            subsets_examined: total,
        }
    }
}

fn cyclic_sides(s: &Sides) -> bool {
    s.a_cyclic && s.b_cyclic
}

fn essential_sides(s: &Sides) -> bool {
    s.a.len() >= 2 && s.b.len() >= 2
}

fn remainder_has_circuit(g: &Graph, removed_vertex: &[bool]) -> bool {
    let mut comps = 0usize;
    let mut seen = vec![false; g.vertex_bound()];
    let mut verts = 0usize;
    for s in g.vertices() {
        if removed_vertex[s.index()] || seen[s.index()] {
            continue;
        }
        comps += 1;
        seen[s.index()] = true;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            verts += 1;
            for w in g.neighbors(u) {
                if !removed_vertex[w.index()] && !seen[w.index()] {
                    seen[w.index()] = true;
                    stack.push(w);
                }
            }
        }
    }
    let edges = g
        .edges()
        .filter(|(_, [a, b])| !removed_vertex[a.index()] && !removed_vertex[b.index()])
        .count();
    edges + comps > verts
}

/// Whether `g` has two vertex-disjoint circuits. Shortest circuits through
/// each edge are tried first; if none of them works every circuit is tried.
pub fn has_two_disjoint_circuits(g: &Graph) -> bool {
    let mark = |cycle: &[VertexId]| {
        let mut r = vec![false; g.vertex_bound()];
        for v in cycle {
            r[v.index()] = true;
        }
        r
    };
    for (e, [a, b]) in g.edges() {
        // shortest a-b path avoiding e
        let mut prev = vec![None; g.vertex_bound()];
        let mut queue = VecDeque::from([a]);
        prev[a.index()] = Some(a);
        while let Some(u) = queue.pop_front() {
            for &f in g.incident(u) {
                if f == e {
                    continue;
                }
                let w = g.other_end(f, u);
                if prev[w.index()].is_none() {
                    prev[w.index()] = Some(u);
                    queue.push_back(w);
                }
            }
        }
        if prev[b.index()].is_none() {
            continue;
        }
        let mut cycle = vec![b];
        let mut at = b;
        while at != a {
            at = prev[at.index()].unwrap();
            cycle.push(at);
        }
        if remainder_has_circuit(g, &mark(&cycle)) {
            return true;
        }
    }
    // exhaustive: every circuit, rooted at its smallest vertex
    let order: Vec<VertexId> = g.vertices().collect();
    for &root in &order {
        let mut on = vec![false; g.vertex_bound()];
        let mut path = vec![root];
        on[root.index()] = true;
        if circuits_from(g, root, &mut path, &mut on) {
            return true;
        }
    }
    false
}

fn circuits_from(g: &Graph, root: VertexId, path: &mut Vec<VertexId>, on: &mut Vec<bool>) -> bool {
    let u = *path.last().unwrap();
    for w in g.neighbors(u).collect::<Vec<_>>() {
        if w == root && path.len() >= 3 {
            if remainder_has_circuit(g, on) {
                return true;
            }
            continue;
        }
        if w <= root || on[w.index()] {
            continue;
        }
        on[w.index()] = true;
        path.push(w);
        let hit = circuits_from(g, root, path, on);
        path.pop();
        on[w.index()] = false;
        if hit {
            return true;
        }
    }
    false
}

/// Exact cyclic edge connectivity below `cap`, with the lexicographically
/// smallest minimum cut as witness; otherwise a certified lower bound `cap`.
pub fn cyclic_edge_connectivity(g: &Graph, cap: usize) -> Result<ConnectivityReport> {
    if !has_two_disjoint_circuits(g) {
        return Err(Error::CyclicConnectivityUndefined);
    }
    Ok(Net::from_graph(g).minimum(cap, &cyclic_sides))
}

/// Exact essential edge connectivity of a connected 4-regular graph below `cap`.
pub fn essential_edge_connectivity(g: &Graph, cap: usize) -> Result<ConnectivityReport> {
    g.check_regular(4)?;
    if !g.is_connected() {
        return Err(Error::Precondition("graph is disconnected".into()));
    }
    Ok(Net::from_graph(g).minimum(cap, &essential_sides))
}

/// Every cyclic bond of exactly `k` edges, in lexicographic order.
pub fn enumerate_cyclic_cuts(g: &Graph, k: usize) -> Vec<CutWitness> {
    if k == 0 {
        return Vec::new();
    }
    Net::from_graph(g).all_bonds(k, &cyclic_sides)
}

/// Every bond of exactly `k` edges, in lexicographic order.
pub fn enumerate_bonds(g: &Graph, k: usize) -> Vec<CutWitness> {
    if k == 0 {
        return Vec::new();
    }
    Net::from_graph(g).all_bonds(k, &|_| true)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvenCutReport {
    pub cap: usize,
    pub cuts_checked: usize,
    /// Cut counts by size, index = size.
    pub by_size: Vec<usize>,
    pub all_even: bool,
    pub odd_witness: Option<Vec<EdgeId>>,
}

/// Enumerates every bond of size below `cap` of a transitioned 4-regular
/// graph (parallel edges allowed) and checks that each has even size. Edge ids
/// in the report are edge indices of `t`.
pub fn even_cut_parity_check(t: &TransitionedFourRegular, cap: usize) -> EvenCutReport {
    let net = Net::from_multigraph(t.order(), t.edges());
    let mut by_size = vec![0; cap.max(1)];
    let mut odd = None;
    for k in 1..cap {
        let cuts = net.all_bonds(k, &|_| true);
        by_size[k] = cuts.len();
        if k % 2 == 1 && odd.is_none() {
            odd = cuts.into_iter().next().map(|c| c.edges);
        }
    }
    EvenCutReport {
        cap,
        cuts_checked: by_size.iter().sum(),
        by_size,
        all_even: odd.is_none(),
        odd_witness: odd,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutStructureReport {
    pub is_matching: bool,
    pub two_per_circuit: bool,
    pub neighbor_projection: bool,
    pub overall: bool,
}

/// Structure of a cyclic 4-edge cut in a permutation graph on at least ten
/// vertices: the cut is a matching with two edges on each circuit, and the
/// spoke neighborhoods of the two circuit-1 arcs are exactly the two
/// circuit-2 arcs.
pub fn verify_cut_structure(pg: &PermutationGraph, e0: &[EdgeId]) -> Result<CutStructureReport> {
    let g = &pg.graph;
    let f = &pg.factor;
    if g.order() < 10 {
        return Err(Error::Precondition(format!("order {} < 10", g.order())));
    }
    if f.circuits().len() != 2 {
        return Err(Error::Precondition("factor does not have two circuits".into()));
    }
    for &e in e0 {
        g.try_endpoints(e)?;
        if f.is_spoke(e) {
            return Err(Error::Precondition(format!("{e} is a spoke; cyclic 4-cuts contain none")));
        }
    }
    let mut cut = e0.to_vec();
    cut.sort_unstable();
    cut.dedup();
    if cut.len() != 4 {
        return Err(Error::NotCyclicFourCut(format!("{} distinct edges", cut.len())));
    }
    let comps = g.components_avoiding(|e| cut.contains(&e));
    if comps.len() != 2 {
        return Err(Error::NotCyclicFourCut(format!("{} components after removal", comps.len())));
    }
    let in_cut = |e: EdgeId| cut.contains(&e);
    if !comps.iter().all(|c| dfs_has_circuit(g, c, in_cut)) {
        return Err(Error::NotCyclicFourCut("a side is acyclic".into()));
    }

    let mut ends: Vec<VertexId> = cut.iter().flat_map(|&e| g.endpoints(e)).collect();
    ends.sort_unstable();
    ends.dedup();
    let is_matching = ends.len() == 8;

    let arcs = |k: usize| -> Option<[Vec<VertexId>; 2]> {
        let c = f.circuit(k);
        let n = c.len();
        let cut_at: Vec<usize> = (0..n)
            .filter(|&i| g.edge_between(c[i], c[(i + 1) % n]).is_some_and(|e| cut.contains(&e)))
            .collect();
        let [i, j] = cut_at[..] else { return None };
        let mut first: Vec<VertexId> = (i + 1..=j).map(|x| c[x]).collect();
        let mut second: Vec<VertexId> = (j + 1..=i + n).map(|x| c[x % n]).collect();
        first.sort_unstable();
        second.sort_unstable();
        Some([first, second])
    };
    let (a1, a2) = (arcs(0), arcs(1));
    let two_per_circuit = a1.is_some() && a2.is_some();
    let neighbor_projection = match (a1, a2) {
        (Some(l1), Some(l2)) => {
            let partner = |v: VertexId| {
                g.incident(v)
                    .iter()
                    .find(|&&e| f.is_spoke(e))
                    .map(|&e| g.other_end(e, v))
                    .expect("every vertex has a spoke")
            };
            let mut proj: Vec<Vec<VertexId>> = l1
                .iter()
                .map(|arc| {
                    let mut p: Vec<VertexId> = arc.iter().map(|&v| partner(v)).collect();
                    p.sort_unstable();
                    p
                })
                .collect();
            proj.sort();
            let mut want = l2.to_vec();
            want.sort();
            proj == want
        }
        _ => false,
    };
    Ok(CutStructureReport {
        is_matching,
        two_per_circuit,
        neighbor_projection,
        overall: is_matching && two_per_circuit && neighbor_projection,
    })
}
