mod common;

use std::collections::BTreeSet;

use common::*;
use permsnark::construction::{
    build_block, build_family, canonical_anchor, contract_spokes, petersen, Block, Certify, Retained,
    TransitionedFourRegular,
};
use permsnark::cover::*;
use permsnark::{EdgeId, Error, Graph, Subgraph, VertexId};
use proptest::prelude::*;

fn all_two_regular(g: &Graph) -> Vec<Subgraph> {
    let ids: Vec<EdgeId> = g.edge_ids().collect();
    (1u32..1 << ids.len())
        .map(|m| Subgraph::new(g, ids.iter().enumerate().filter(|(i, _)| m >> i & 1 == 1).map(|(_, &e)| e)).unwrap())
        .filter(|s| s.is_two_regular(g))
        .collect()
}

#[test]
fn k4_any_cdc_has_three_members() {
    let g = k4();
    let v = find_any_cdc(&g, Budget::UNLIMITED).unwrap();
    let w = v.witness().unwrap();
    assert_eq!(w.members.len(), 3);
    w.validate(&g).unwrap();
}

#[test]
fn colorings() {
    assert!(three_edge_coloring(&k4(), Budget::UNLIMITED).unwrap().is_sat());
    assert!(three_edge_coloring(&prism(), Budget::UNLIMITED).unwrap().is_sat());
    assert!(three_edge_coloring(&petersen().graph, Budget::UNLIMITED).unwrap().is_unsat());
    let c = three_edge_coloring(&k33(), Budget::UNLIMITED).unwrap();
    for class in &c.witness().unwrap().classes {
        assert_eq!(class.len(), 3);
    }
}

#[test]
fn petersen_cdc_questions() {
    let p = petersen();
    let f = p.factor.edges(&p.graph).unwrap();
    assert_eq!(cdc_route(&p.graph, &f).unwrap(), ReductionRoute::SpokeContraction);
    assert!(find_cdc_containing(&p.graph, &f, None, Budget::UNLIMITED).unwrap().is_unsat());
    assert!(find_cdc_containing_direct(&p.graph, &f, None, Budget::UNLIMITED).unwrap().is_unsat());
    let any = find_any_cdc(&p.graph, Budget::UNLIMITED).unwrap();
    any.witness().unwrap().validate(&p.graph).unwrap();
}

#[test]
fn prism_factor_extends_through_multigraph_reduction() {
    let pg = prism_pg();
    let f = pg.factor.edges(&pg.graph).unwrap();
    assert_eq!(cdc_route(&pg.graph, &f).unwrap(), ReductionRoute::SpokeContraction);
    let v = find_cdc_containing(&pg.graph, &f, None, Budget::UNLIMITED).unwrap();
    let w = v.witness().unwrap();
    w.validate(&pg.graph).unwrap();
    assert_eq!(w.members.len(), 5);
    assert!(find_cdc_containing_direct(&pg.graph, &f, None, Budget::UNLIMITED).unwrap().is_sat());
}

#[test]
fn h1_factor_does_not_extend() {
    let h = build_family(1, Certify::None).unwrap().permutation;
    let f = h.factor.edges(&h.graph).unwrap();
    let via = find_cdc_containing(&h.graph, &f, None, Budget::UNLIMITED).unwrap();
    assert!(via.is_unsat());
    let t = contract_spokes(&h).unwrap();
    assert!(ccd_search(&t, Budget::UNLIMITED).is_unsat());
    assert!(find_any_cdc(&h.graph, Budget::UNLIMITED).unwrap().is_sat());
}

#[test]
fn budget_exhaustion_is_indeterminate() {
    let h = build_family(1, Certify::None).unwrap().permutation;
    let f = h.factor.edges(&h.graph).unwrap();
    let v = find_cdc_containing(&h.graph, &f, None, Budget::nodes(10)).unwrap();
    assert_eq!(v.status(), Status::Indeterminate);
    assert_eq!(v.to_json().status, Status::Indeterminate);
}

#[test]
fn unsat_node_counts_are_reproducible() {
    let p = petersen();
    let f = p.factor.edges(&p.graph).unwrap();
    let a = find_cdc_containing(&p.graph, &f, None, Budget::UNLIMITED).unwrap();
    let b = find_cdc_containing(&p.graph, &f, None, Budget::UNLIMITED).unwrap();
    assert_eq!(a.stats().nodes_expanded, b.stats().nodes_expanded);
    assert_eq!(a.stats().search_space, b.stats().search_space);
    let c1 = three_edge_coloring(&p.graph, Budget::UNLIMITED).unwrap();
    let c2 = three_edge_coloring(&p.graph, Budget::UNLIMITED).unwrap();
    assert_eq!(c1.stats().nodes_expanded, c2.stats().nodes_expanded);
}

#[test]
fn empty_transition_system_decomposes() {
    let k5 = k5();
    let edges: Vec<[u32; 2]> = k5.edges().map(|(_, [a, b])| [a.0, b.0]).collect();
    let t = TransitionedFourRegular::new_relaxed(5, edges, vec![vec![]; 5]).unwrap();
    let v = ccd_search(&t, Budget::UNLIMITED);
    let w = v.witness().unwrap();
    let total: usize = w.circuits.iter().map(|c| c.edges.len()).sum();
    assert_eq!(total, 10);
    for c in &w.circuits {
        let mut vs = c.vertices.clone();
        vs.sort();
        vs.dedup();
        assert_eq!(vs.len(), c.vertices.len());
    }
}

#[test]
fn bad_k5_has_no_ccd() {
    let t = contract_spokes(&petersen()).unwrap();
    assert!(ccd_search(&t, Budget::UNLIMITED).is_unsat());
}

#[test]
fn lemma_2_3_on_small_colorable_graphs() {
    for g in [k4(), k33(), prism()] {
        let ds = all_two_regular(&g);
        assert!(!ds.is_empty());
        for d in ds {
            let v = lemma_2_3_check(&g, &d, Budget::UNLIMITED).unwrap();
            let w = v.witness().expect("SAT");
            assert!(w.members.len() <= 4);
            assert_eq!(w.members[0].edges(), d.edges());
            let cov = w.coverage(&g);
            assert!(g.edge_ids().all(|e| cov[e.index()] == 2));
        }
    }
}

#[test]
fn lemma_2_3_needs_colorable_input() {
    let p = petersen();
    let f = p.factor.edges(&p.graph).unwrap();
    assert!(matches!(
        lemma_2_3_check(&p.graph, &f, Budget::UNLIMITED),
        Err(Error::Precondition(_))
    ));
}

fn petersen_block(r: Retained) -> Block {
    let p = petersen();
    build_block(&p, &canonical_anchor(&p).unwrap(), r).unwrap()
}

/// Every circuit and every path between pendant vertices, as sorted edge lists.
fn trails(g: &Graph) -> Vec<Vec<EdgeId>> {
    fn walk(g: &Graph, path: &mut Vec<VertexId>, edges: &mut Vec<EdgeId>, out: &mut BTreeSet<Vec<EdgeId>>) {
        let u = *path.last().unwrap();
        for &e in g.incident(u) {
            let w = g.other_end(e, u);
            if w == path[0] && path.len() >= 3 && !g.is_pendant(w) {
                let mut c = edges.clone();
                c.push(e);
                c.sort();
                out.insert(c);
                continue;
            }
            if path.contains(&w) {
                continue;
            }
            edges.push(e);
            path.push(w);
            if g.is_pendant(w) {
                if g.is_pendant(path[0]) {
                    let mut c = edges.clone();
                    c.sort();
                    out.insert(c);
                }
            } else {
                walk(g, path, edges, out);
            }
            path.pop();
            edges.pop();
        }
    }
    let mut out = BTreeSet::new();
    for s in g.vertices() {
        walk(g, &mut vec![s], &mut Vec::new(), &mut out);
    }
    out.into_iter().collect()
}

/// Sets of trails covering `A`-edges once and the rest twice.
fn brute_pcdcs(b: &Block) -> BTreeSet<Vec<Vec<EdgeId>>> {
    let g = &b.graph;
    let ts = trails(g);
    let mut need = vec![2u8; g.edge_bound()];
    for s in b.path_subgraphs().unwrap() {
        for &e in s.edges() {
            need[e.index()] = 1;
        }
    }
    fn rec(ts: &[Vec<EdgeId>], need: &mut [u8], used: &mut Vec<usize>, out: &mut BTreeSet<Vec<Vec<EdgeId>>>) {
        let Some(e) = need.iter().position(|&x| x > 0) else {
            let mut s: Vec<Vec<EdgeId>> = used.iter().map(|&i| ts[i].clone()).collect();
            s.sort();
            out.insert(s);
            return;
        };
        for (i, t) in ts.iter().enumerate() {
            if used.contains(&i) || !t.contains(&EdgeId(e as u32)) || t.iter().any(|f| need[f.index()] == 0) {
                continue;
            }
            t.iter().for_each(|f| need[f.index()] -= 1);
            used.push(i);
            rec(ts, need, used, out);
            used.pop();
            t.iter().for_each(|f| need[f.index()] += 1);
        }
    }
    let mut out = BTreeSet::new();
    rec(&ts, &mut need, &mut Vec::new(), &mut out);
    out
}

#[test]
fn pcdc_enumeration_matches_brute_force() {
    for r in [Retained::E2, Retained::E3] {
        let b = petersen_block(r);
        let en = pcdc_enumerate(&b, Budget::UNLIMITED).unwrap();
        assert!(en.complete);
        assert!(!en.solutions.is_empty());
        let mine: BTreeSet<Vec<Vec<EdgeId>>> = en
            .solutions
            .iter()
            .map(|s| {
                let mut m: Vec<Vec<EdgeId>> = s.cover.members[1..].iter().map(|m| m.edges()).collect();
                m.sort();
                m
            })
            .collect();
        assert_eq!(mine.len(), en.solutions.len());
        assert_eq!(mine, brute_pcdcs(&b));
    }
}

#[test]
fn pcdc_brackets_and_properties() {
    let b = petersen_block(Retained::E2);
    let en = pcdc_enumerate(&b, Budget::UNLIMITED).unwrap();
    for s in &en.solutions {
        s.cover.validate(&b.graph).unwrap();
        for k in 1..=6u8 {
            let e = b.pendant_edge(k);
            let holders: Vec<usize> = (0..s.cover.members.len()).filter(|&i| s.cover.members[i].contains(e)).collect();
            assert_eq!(holders, vec![0, s.bracket(k as usize)]);
        }
        let p = s.properties();
        assert!(p.first_holds() && p.second_holds(), "{p:?}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn reduction_agrees_with_direct_search(n in 5usize..9, seed in 0u64..500) {
        let pg = cycle_permutation_graph(&random_perm(n, seed));
        let f = pg.factor.edges(&pg.graph).unwrap();
        let a = find_cdc_containing(&pg.graph, &f, None, Budget::UNLIMITED).unwrap();
        let b = find_cdc_containing_direct(&pg.graph, &f, None, Budget::UNLIMITED).unwrap();
        prop_assert_eq!(a.status(), b.status());
        if let Some(w) = a.witness() {
            prop_assert!(w.validate(&pg.graph).is_ok());
            prop_assert_eq!(&w.members[0].edges(), &Subgraph::from_cycle(&pg.graph, pg.factor.circuit(0)).unwrap().edges().to_vec());
        }
    }

    #[test]
    fn any_cdc_is_a_double_cover(n in 5usize..9, seed in 0u64..500) {
        let pg = cycle_permutation_graph(&random_perm(n, seed));
        let v = find_any_cdc(&pg.graph, Budget::UNLIMITED).unwrap();
        let w = v.witness().unwrap();
        prop_assert!(w.validate(&pg.graph).is_ok());
        if three_edge_coloring(&pg.graph, Budget::UNLIMITED).unwrap().is_sat() {
            prop_assert_eq!(w.members.len(), 3);
        }
        let cov = w.coverage(&pg.graph);
        prop_assert!(pg.graph.edge_ids().all(|e| cov[e.index()] == 2));
    }
}
