//! Compatible cycle decompositions of 4-regular graphs with transition systems.
//!
//! At a vertex with incident edge slots s0..s3 there are three ways to pair
//! the slots into two pass-throughs. A pairing is admissible when neither of
//! its pairs is a prescribed transition; with two disjoint transitions exactly
//! two pairings remain. A choice of admissible pairing at every vertex splits
//! the edge set into closed trails, and it is a CCD iff every trail is a
//! circuit (no vertex visited twice).

use std::collections::VecDeque;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::union::TrailUnion;
use super::{AsMembers, Budget, SearchStats, Verdict};
use crate::construction::TransitionedFourRegular;
use crate::graph::EdgeId;

/// Circuits of a decomposition, each as a closed vertex walk and its edge
/// indices (edge `i` joins `vertices[i]` and `vertices[i + 1]`, cyclically).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CcdSolution {
    pub circuits: Vec<CcdCircuit>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CcdCircuit {
    pub vertices: Vec<u32>,
    pub edges: Vec<usize>,
}

impl AsMembers for CcdSolution {
    fn member_edges(&self) -> Vec<Vec<EdgeId>> {
        self.circuits
            .iter()
            .map(|c| {
                let mut es: Vec<EdgeId> = c.edges.iter().map(|&e| EdgeId(e as u32)).collect();
                es.sort_unstable();
                es
            })
            .collect()
    }
}

type Pairing = [[usize; 2]; 2];

fn admissible_pairings(slots: &[usize], transitions: &[[usize; 2]]) -> Vec<Pairing> {
    let [a, b, c, d] = [slots[0], slots[1], slots[2], slots[3]];
    let all = [[[a, b], [c, d]], [[a, c], [b, d]], [[a, d], [b, c]]];
    let is_transition = |p: [usize; 2]| {
        transitions
            .iter()
            .any(|t| (t[0] == p[0] && t[1] == p[1]) || (t[0] == p[1] && t[1] == p[0]))
    };
    all.into_iter()
        .filter(|pr| !is_transition(pr[0]) && !is_transition(pr[1]))
        .collect()
}

fn vertex_order(t: &TransitionedFourRegular) -> Vec<usize> {
    let n = t.order();
    let mut seen = vec![false; n];
    let mut out = Vec::with_capacity(n);
    let mut queue = VecDeque::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            out.push(u);
            for &e in t.incident(u) {
                let [a, b] = t.edges()[e];
                let w = if a as usize == u { b } else { a } as usize;
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    out
}

struct Search<'a> {
    t: &'a TransitionedFourRegular,
    order: Vec<usize>,
    options: Vec<Vec<Pairing>>,
    picked: Vec<usize>,
    nodes: u64,
    budget: Budget,
    aborted: bool,
    accept: &'a dyn Fn(&CcdSolution) -> bool,
    found: Option<CcdSolution>,
}

impl Search<'_> {
    fn dfs(&mut self, depth: usize, uf: &mut TrailUnion) -> bool {
        if depth == self.order.len() {
            let sol = self.extract();
            if (self.accept)(&sol) {
                self.found = Some(sol);
                return true;
            }
            return false;
        }
        let v = self.order[depth];
        for k in 0..self.options[depth].len() {
            self.nodes += 1;
            if self.budget.exceeded(self.nodes) {
                self.aborted = true;
                return true;
            }
            let [p, q] = self.options[depth][k];
            let cp = uf.checkpoint();
            if uf.link(p[0], p[1], Some(v)) && uf.link(q[0], q[1], Some(v)) {
                self.picked[depth] = k;
                if self.dfs(depth + 1, uf) {
                    uf.rollback(cp);
                    return true;
                }
            }
            uf.rollback(cp);
        }
        false
    }

    fn extract(&self) -> CcdSolution {
        let edges = self.t.edges();
        // partner[v] lists (e, f) pass-throughs at v
        let mut partner: Vec<Vec<(usize, usize)>> = vec![Vec::new(); self.t.order()];
        for (depth, &v) in self.order.iter().enumerate() {
            for [a, b] in self.options[depth][self.picked[depth]] {
                partner[v].push((a, b));
                partner[v].push((b, a));
            }
        }
        let next_at = |v: usize, e: usize| -> usize {
            partner[v].iter().find(|&&(x, _)| x == e).expect("paired").1
        };
        let mut used = vec![false; edges.len()];
        let mut circuits = Vec::new();
        for start in 0..edges.len() {
            if used[start] {
                continue;
            }
            let mut vertices = vec![edges[start][0]];
            let mut es = Vec::new();
            let (mut e, mut at) = (start, edges[start][0] as usize);
            loop {
                used[e] = true;
                es.push(e);
                let [a, b] = edges[e];
                let far = if a as usize == at { b } else { a } as usize;
                let f = next_at(far, e);
                if f == start && far == vertices[0] as usize {
                    break;
                }
                vertices.push(far as u32);
                e = f;
                at = far;
            }
            circuits.push(CcdCircuit { vertices, edges: es });
        }
        CcdSolution { circuits }
    }
}

/// Complete search for a compatible cycle decomposition; first solution in
/// breadth-first vertex order with pairings tried in a fixed order.
pub fn ccd_search(t: &TransitionedFourRegular, budget: Budget) -> Verdict<CcdSolution> {
    ccd_search_with(t, budget, &|_| true)
}

/// As [`ccd_search`], but a complete decomposition only counts as a solution
/// when `accept` holds for it.
pub fn ccd_search_with(
    t: &TransitionedFourRegular,
    budget: Budget,
    accept: &dyn Fn(&CcdSolution) -> bool,
) -> Verdict<CcdSolution> {
    let started = Instant::now();
    let order = vertex_order(t);
    let options: Vec<Vec<Pairing>> = order
        .iter()
        .map(|&v| admissible_pairings(t.incident(v), t.transitions(v)))
        .collect();
    let leaves: f64 = options.iter().map(|o| o.len() as f64).product();
    let space = format!(
        "per-vertex admissible pairings of a 4-regular graph on {} vertices / {} edges ({} leaves unpruned)",
        t.order(),
        t.edges().len(),
        leaves
    );
    let mut s = Search {
        t,
        picked: vec![0; order.len()],
        order,
        options,
        nodes: 0,
        budget,
        aborted: false,
        accept,
        found: None,
    };
    let mut uf = TrailUnion::new(t.edges().len(), t.order());
    s.dfs(0, &mut uf);
    let stats = SearchStats::new(s.nodes, space, started);
    match (s.found, s.aborted) {
        (Some(witness), _) => Verdict::Sat { witness, stats },
        (None, true) => Verdict::Indeterminate { stats },
        (None, false) => Verdict::Unsat { stats },
    }
}
