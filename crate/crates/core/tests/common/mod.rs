#![allow(dead_code)]

use permsnark::{Graph, PermutationGraph, TwoFactor, VertexId};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn k4() -> Graph {
    Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
}

pub fn k33() -> Graph {
    let mut e = Vec::new();
    for a in 0..3 {
        for b in 3..6 {
            e.push((a, b));
        }
    }
    Graph::from_edges(6, &e).unwrap()
}

pub fn prism() -> Graph {
    Graph::from_edges(
        6,
        &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)],
    )
    .unwrap()
}

pub fn prism_pg() -> PermutationGraph {
    let g = prism();
    let f = TwoFactor::new(&g, vec![vs(&[0, 1, 2]), vs(&[3, 4, 5])]).unwrap();
    PermutationGraph::new(g, f)
}

pub fn k5() -> Graph {
    let mut e = Vec::new();
    for a in 0..5 {
        for b in a + 1..5 {
            e.push((a, b));
        }
    }
    Graph::from_edges(5, &e).unwrap()
}

pub fn octahedron() -> Graph {
    let mut e = Vec::new();
    for a in 0..6u32 {
        for b in a + 1..6 {
            if b != a + 3 {
                e.push((a, b));
            }
        }
    }
    Graph::from_edges(6, &e).unwrap()
}

pub fn vs(xs: &[u32]) -> Vec<VertexId> {
    xs.iter().map(|&x| VertexId(x)).collect()
}

/// Two `n`-circuits `0..n` and `n..2n` with spokes `i -- n + perm[i]`.
pub fn cycle_permutation_graph(perm: &[usize]) -> PermutationGraph {
    let n = perm.len();
    let mut e = Vec::new();
    for i in 0..n {
        e.push((i as u32, ((i + 1) % n) as u32));
    }
    for i in 0..n {
        e.push(((n + i) as u32, (n + (i + 1) % n) as u32));
    }
    for (i, &p) in perm.iter().enumerate() {
        e.push((i as u32, (n + p) as u32));
    }
    let g = Graph::from_edges(2 * n, &e).unwrap();
    let c1 = (0..n as u32).map(VertexId).collect();
    let c2 = (n as u32..2 * n as u32).map(VertexId).collect();
    let f = TwoFactor::new(&g, vec![c1, c2]).unwrap();
    PermutationGraph::new(g, f)
}

pub fn random_perm(n: usize, seed: u64) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    p
}

/// Two 12-circuits whose first four spokes are aligned (`i -- i`), the rest
/// random.
pub fn aligned_corpus_graph(seed: u64) -> PermutationGraph {
    let mut tail: Vec<usize> = (4..12).collect();
    tail.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let mut perm: Vec<usize> = (0..4).collect();
    perm.extend(tail);
    cycle_permutation_graph(&perm)
}

/// Minimum edge cut over all vertex bipartitions whose sides are connected
/// and satisfy `ok(side_a_vertices, side_a_edges, side_b_vertices,
/// side_b_edges)`. Independent of the library's bond enumerator.
pub fn bipartition_oracle(g: &Graph, ok: impl Fn(usize, usize, usize, usize) -> bool) -> Option<usize> {
    let vs: Vec<VertexId> = g.vertices().collect();
    let n = vs.len();
    assert!(n <= 20, "oracle limited to 20 vertices");
    let idx = |v: VertexId| vs.iter().position(|&u| u == v).unwrap();
    let edges: Vec<(usize, usize)> = g.edges().map(|(_, [a, b])| (idx(a), idx(b))).collect();
    let connected = |mask: u32, side: bool| -> bool {
        let members: Vec<usize> = (0..n).filter(|&i| (mask >> i & 1 == 1) == side).collect();
        let Some(&s) = members.first() else { return false };
        let mut seen = vec![false; n];
        seen[s] = true;
        let mut stack = vec![s];
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &(a, b) in &edges {
                let w = if a == u { b } else if b == u { a } else { continue };
                if (mask >> w & 1 == 1) == side && !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == members.len()
    };
    let mut best: Option<usize> = None;
    // vertex 0 always on side b (bit clear) to count each bipartition once
    for mask in 1u32..(1 << n) {
        if mask & 1 == 1 {
            continue;
        }
        let (mut ea, mut eb, mut cut) = (0, 0, 0);
        for &(a, b) in &edges {
            match (mask >> a & 1, mask >> b & 1) {
                (1, 1) => ea += 1,
                (0, 0) => eb += 1,
                _ => cut += 1,
            }
        }
        let na = mask.count_ones() as usize;
        if best.is_some_and(|b| cut >= b) || !ok(na, ea, n - na, eb) {
            continue;
        }
        if connected(mask, true) && connected(mask, false) {
            best = Some(cut);
        }
    }
    best
}

pub fn cyclic_oracle(g: &Graph) -> Option<usize> {
    bipartition_oracle(g, |na, ea, nb, eb| ea >= na && eb >= nb)
}

pub fn essential_oracle(g: &Graph) -> Option<usize> {
    bipartition_oracle(g, |na, _, nb, _| na >= 2 && nb >= 2)
}

/// Subdivides edge `(u, v)` with a fresh vertex.
pub fn subdivide(g: &Graph, u: u32, v: u32) -> Graph {
    let mut edges: Vec<(u32, u32)> = g
        .edges()
        .map(|(_, [a, b])| (a.0, b.0))
        .filter(|&(a, b)| (a, b) != (u.min(v), u.max(v)))
        .collect();
    let n = g.order() as u32;
    edges.push((u, n));
    edges.push((n, v));
    Graph::from_edges(g.order() + 1, &edges).unwrap()
}
