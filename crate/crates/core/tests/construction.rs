mod common;

use common::*;
use permsnark::construction::*;
use permsnark::graph::{emit_graph6, parse_graph6};
use permsnark::{Error, Subgraph, VertexId};

fn petersen_blocks() -> [Block; 4] {
    let p = petersen();
    let a = canonical_anchor(&p).unwrap();
    [Retained::E2, Retained::E3, Retained::E2, Retained::E3].map(|r| build_block(&p, &a, r).unwrap())
}

#[test]
fn petersen_anchor_marks() {
    let a = canonical_anchor(&petersen()).unwrap();
    assert_eq!(
        [a.x2, a.z2, a.x6, a.x1, a.x4, a.z1, a.x5],
        [1, 0, 4, 2, 7, 5, 8].map(VertexId)
    );
}

#[test]
fn anchor_rejects_prism() {
    let pg = prism_pg();
    let s = pg.factor.spokes()[0];
    assert!(matches!(
        select_anchor(&pg, s, Orientation::Ascending, Orientation::Ascending),
        Err(Error::Anchor(_))
    ));
}

#[test]
fn block_shape() {
    let p = petersen();
    for b in petersen_blocks() {
        assert_eq!(b.graph.order(), p.graph.order() + 4);
        assert_eq!(b.graph.size(), p.graph.size());
        for v in b.graph.vertices() {
            let want = if b.pendant_vertices.contains(&v) { 1 } else { 3 };
            assert_eq!(b.graph.degree(v), want);
        }
        // the arc of circuit 1 keeps x1..x6 (three vertices) plus two ends
        assert_eq!(b.paths.iter().map(Vec::len).collect::<Vec<_>>(), [5, 6, 3]);
        assert_eq!(b.paths.iter().map(Vec::len).sum::<usize>(), b.graph.order());
    }
}

#[test]
fn assembly_structure() {
    let blocks = petersen_blocks();
    let h = assemble_h(&blocks, &GluingTable::canonical()).unwrap();
    let g = &h.permutation.graph;
    let f = &h.permutation.factor;
    assert_eq!(g.order(), blocks.iter().map(|b| b.source_order - 2).sum::<usize>() + 2);
    assert_eq!(g.order(), 34);
    assert!(h.permutation.verify().unwrap().overall);
    let fe = f.edges(g).unwrap();
    assert!(!fe.contains(h.alpha));
    assert_eq!(fe.len(), 34);
    let [v, w] = h.alpha_ends;
    assert_eq!(f.circuit_of(v), Some(0));
    assert_eq!(f.circuit_of(w), Some(1));
    // alpha ends meet F through the retained end-edges
    let labels = |x: VertexId| {
        let mut l: Vec<String> = g
            .incident(x)
            .iter()
            .filter(|&&e| fe.contains(e))
            .map(|&e| g.edge_label(e).unwrap().to_owned())
            .collect();
        l.sort();
        l
    };
    assert_eq!(labels(v), ["1.e2", "3.e2"]);
    assert_eq!(labels(w), ["2.e3", "4.e3"]);
}

#[test]
fn each_circuit_carries_six_paths() {
    let blocks = petersen_blocks();
    let h = assemble_h(&blocks, &GluingTable::canonical()).unwrap();
    let g = &h.permutation.graph;
    for c in h.permutation.factor.circuits() {
        let mut segments = 0;
        let n = c.len();
        for i in 0..n {
            let e = g.edge_between(c[i], c[(i + 1) % n]).unwrap();
            if g.edge_label(e).unwrap().contains('.') {
                segments += 1;
            }
        }
        // six path images joined by five glued edges and, at the alpha end, two retained ones
        assert_eq!(segments, 7);
    }
}

#[test]
fn discovery_over_petersen_blocks() {
    let blocks = petersen_blocks();
    let survivors = discover_gluing(&blocks).unwrap();
    assert!(!survivors.is_empty());
    for (_, t) in &survivors {
        assert_eq!(assemble_h(&blocks, t).unwrap().permutation.graph.order(), 34);
    }
    let canonical = GluingTable::canonical();
    assert_eq!(canonical.candidate_index(), Some(survivors[0].0));
    assert_eq!(survivors[0].1, canonical);
}

#[test]
fn family_orders_and_contractions() {
    for n in 0..=2 {
        let h = build_family(n, Certify::None).unwrap();
        assert_eq!(h.permutation.order(), 10 + 24 * n);
        assert!(h.permutation.graph.is_cubic());
        assert!(h.permutation.verify().unwrap().overall);
        let t = contract_spokes(&h.permutation).unwrap();
        assert_eq!(t.order(), 5 + 12 * n);
        for v in 0..t.order() {
            let ts = t.transitions(v);
            assert_eq!(ts.len(), 2);
            assert!(ts[0].iter().all(|e| !ts[1].contains(e)));
        }
    }
}

#[test]
fn family_levels_keep_girth_guard() {
    for n in 0..=3 {
        let h = build_family(n, Certify::None).unwrap();
        let a = canonical_anchor(&h.permutation).unwrap();
        assert!(h.permutation.graph.girth().unwrap() >= 5);
        assert!(h.permutation.graph.edge_between(a.x2, a.x4).is_none());
        assert!(h.permutation.graph.edge_between(a.x2, a.x5).is_none());
    }
}

#[test]
fn family_graph6_round_trip() {
    let h = build_family(1, Certify::None).unwrap();
    let s = emit_graph6(&h.permutation.graph);
    let back = parse_graph6(&s).unwrap();
    assert_eq!(back.adjacency_matrix(), h.permutation.graph.adjacency_matrix());
}

#[test]
fn h1_contraction_edges_split_into_two_hamiltonian_circuits() {
    let h = build_family(1, Certify::None).unwrap();
    let t = contract_spokes(&h.permutation).unwrap();
    assert_eq!(t.edges().len(), 34);
    let prov = t.provenance().unwrap();
    let g = t.graph().unwrap();
    for circuit in &prov.circuits {
        let sub = Subgraph::new(&g, circuit.iter().map(|&e| permsnark::EdgeId(e as u32))).unwrap();
        let cs = sub.circuits(&g).unwrap();
        assert_eq!(cs.len(), 1);
        assert_eq!(cs[0].len(), 17);
    }
}
