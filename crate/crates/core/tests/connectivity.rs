mod common;

use common::*;
use permsnark::connectivity::*;
use permsnark::construction::{
    assemble_h, build_block, canonical_anchor, contract_spokes, gluing_candidate, petersen, Retained,
    CANDIDATE_COUNT,
};
use permsnark::{EdgeId, Error};
use proptest::prelude::*;

#[test]
fn small_values() {
    assert_eq!(cyclic_edge_connectivity(&prism(), 6).unwrap().bound.exact(), Some(3));
    assert_eq!(cyclic_edge_connectivity(&petersen().graph, 6).unwrap().bound.exact(), Some(5));
    assert_eq!(cyclic_edge_connectivity(&k4(), 6), Err(Error::CyclicConnectivityUndefined));
    assert_eq!(cyclic_edge_connectivity(&k33(), 6), Err(Error::CyclicConnectivityUndefined));
    let capped = cyclic_edge_connectivity(&petersen().graph, 5).unwrap();
    assert_eq!(capped.bound, CutBound::AtLeast { value: 5 });
}

#[test]
fn oracle_agreement_on_fixtures() {
    let mut fixtures = vec![prism(), petersen().graph];
    for seed in 0..6 {
        fixtures.push(cycle_permutation_graph(&random_perm(6 + seed as usize % 4, seed)).graph);
    }
    fixtures.push(aligned_corpus_graph(3).graph);
    for g in fixtures.iter().filter(|g| g.order() <= 20) {
        let mine = cyclic_edge_connectivity(g, 7).unwrap();
        assert_eq!(mine.bound.exact(), cyclic_oracle(g), "order {}", g.order());
        if let Some(w) = mine.bound.witness() {
            w.validate(g).unwrap();
            assert_eq!(w.classification, CutClass::Cyclic);
        }
    }
}

#[test]
fn subdivision_keeps_cyclic_connectivity() {
    for g in [prism(), petersen().graph] {
        let base = cyclic_edge_connectivity(&g, 6).unwrap().bound.value();
        for (_, [a, b]) in g.edges() {
            let s = subdivide(&g, a.0, b.0);
            assert_eq!(cyclic_edge_connectivity(&s, 6).unwrap().bound.value(), base);
        }
    }
}

#[test]
fn essential_connectivity_small() {
    let k5 = k5();
    let r = essential_edge_connectivity(&k5, 7).unwrap();
    assert_eq!(r.bound.exact(), Some(6));
    assert_eq!(essential_oracle(&k5), Some(6));
    let oct = octahedron();
    let r = essential_edge_connectivity(&oct, 9).unwrap();
    assert_eq!(r.bound.exact(), essential_oracle(&oct));
    assert!(matches!(essential_edge_connectivity(&prism(), 7), Err(Error::NotFourRegular { .. })));
}

#[test]
fn contracted_cuts_are_even() {
    let t = contract_spokes(&petersen()).unwrap();
    let r = even_cut_parity_check(&t, 7);
    assert!(r.all_even);
    assert_eq!(r.by_size[4], 5);
    assert_eq!(r.by_size[6], 10);
    assert!(r.by_size.iter().skip(1).step_by(2).all(|&c| c == 0));
}

#[test]
fn aligned_spokes_give_structured_four_cuts() {
    for seed in 0..8 {
        let pg = aligned_corpus_graph(seed);
        let r = cyclic_edge_connectivity(&pg.graph, 6).unwrap();
        assert_eq!(r.bound.exact(), Some(4));
        let cuts = enumerate_cyclic_cuts(&pg.graph, 4);
        // the cut around the four aligned spokes
        let around = [(11, 0), (3, 4), (23, 12), (15, 16)]
            .map(|(a, b)| pg.graph.edge_between(permsnark::VertexId(a), permsnark::VertexId(b)).unwrap());
        let mut around = around.to_vec();
        around.sort();
        assert!(cuts.iter().any(|c| c.edges == around));
        for c in &cuts {
            assert!(c.edges.iter().all(|&e| !pg.factor.is_spoke(e)));
            let rep = verify_cut_structure(&pg, &c.edges).unwrap();
            assert!(rep.overall, "{rep:?}");
        }
    }
}

#[test]
fn cut_structure_rejections() {
    let pg = aligned_corpus_graph(1);
    let spoke = pg.factor.spokes()[0];
    let mut with_spoke = enumerate_cyclic_cuts(&pg.graph, 4)[0].edges.clone();
    with_spoke[0] = spoke;
    assert!(matches!(verify_cut_structure(&pg, &with_spoke), Err(Error::Precondition(_))));
    let not_cut = [EdgeId(0), EdgeId(1), EdgeId(2), EdgeId(3)];
    assert!(matches!(verify_cut_structure(&pg, &not_cut), Err(Error::NotCyclicFourCut(_))));
    assert!(matches!(
        verify_cut_structure(&prism_pg(), &[EdgeId(0)]),
        Err(Error::Precondition(_))
    ));
}

#[test]
fn gluing_candidates_are_at_least_four() {
    let p = petersen();
    let a = canonical_anchor(&p).unwrap();
    let blocks = [Retained::E2, Retained::E3, Retained::E2, Retained::E3].map(|r| build_block(&p, &a, r).unwrap());
    for c in 0..CANDIDATE_COUNT {
        let h = assemble_h(&blocks, &gluing_candidate(c)).unwrap();
        let r = cyclic_edge_connectivity(&h.permutation.graph, 5).unwrap();
        assert!(r.bound.value() >= 4);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn permutation_graphs_are_cyclically_four_connected(n in 4usize..9, seed in 0u64..1000) {
        let pg = cycle_permutation_graph(&random_perm(n, seed));
        prop_assume!(pg.graph.order() >= 8);
        let r = cyclic_edge_connectivity(&pg.graph, 4).unwrap();
        prop_assert_eq!(r.bound, CutBound::AtLeast { value: 4 });
    }

    #[test]
    fn witnesses_revalidate(n in 4usize..9, seed in 0u64..1000) {
        let pg = cycle_permutation_graph(&random_perm(n, seed));
        let r = cyclic_edge_connectivity(&pg.graph, 7).unwrap();
        if let Some(w) = r.bound.witness() {
            prop_assert!(w.validate(&pg.graph).is_ok());
        }
        for b in enumerate_bonds(&pg.graph, 4) {
            prop_assert!(b.validate(&pg.graph).is_ok());
        }
    }
}

/// Bonds of size `k` counted over vertex bipartitions with connected sides.
fn bond_count_oracle(g: &permsnark::Graph, k: usize) -> usize {
    let n = g.order();
    let edges: Vec<(usize, usize)> = g.edges().map(|(_, [a, b])| (a.index(), b.index())).collect();
    let side_connected = |mask: u32, side: u32| {
        let members: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == side).collect();
        let mut seen = vec![false; n];
        let mut stack = vec![members[0]];
        seen[members[0]] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &(a, b) in &edges {
                let w = if a == u { b } else if b == u { a } else { continue };
                if mask >> w & 1 == side && !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == members.len()
    };
    (1u32..(1 << n) - 1)
        .filter(|m| m & 1 == 0)
        .filter(|&m| edges.iter().filter(|&&(a, b)| (m >> a & 1) != (m >> b & 1)).count() == k)
        .filter(|&m| side_connected(m, 0) && side_connected(m, 1))
        .count()
}

#[test]
fn bond_enumeration_matches_bipartitions() {
    for g in [prism(), petersen().graph, k5(), octahedron()] {
        for k in 1..=6 {
            assert_eq!(enumerate_bonds(&g, k).len(), bond_count_oracle(&g, k), "k = {k}");
        }
    }
}
