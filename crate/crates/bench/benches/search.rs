use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use permsnark::connectivity::cyclic_edge_connectivity;
use permsnark::construction::{build_family, contract_spokes, petersen, Certify};
use permsnark::cover::{ccd_search, find_cdc_containing, three_edge_coloring, Budget};

fn construction(c: &mut Criterion) {
    c.bench_function("build_family(5)", |b| {
        b.iter(|| build_family(black_box(5), Certify::None).unwrap())
    });
}

fn searches(c: &mut Criterion) {
    let p = petersen();
    let h1 = build_family(1, Certify::None).unwrap().permutation;
    let t1 = contract_spokes(&h1).unwrap();
    let f1 = h1.factor.edges(&h1.graph).unwrap();

    c.bench_function("coloring H1", |b| {
        b.iter(|| three_edge_coloring(black_box(&h1.graph), Budget::UNLIMITED).unwrap())
    });
    c.bench_function("ccd H1 contraction", |b| {
        b.iter(|| ccd_search(black_box(&t1), Budget::UNLIMITED))
    });
    c.bench_function("cdc containing F, H1", |b| {
        b.iter(|| find_cdc_containing(black_box(&h1.graph), &f1, None, Budget::UNLIMITED).unwrap())
    });
    c.bench_function("lambda_c Petersen", |b| {
        b.iter(|| cyclic_edge_connectivity(black_box(&p.graph), 6).unwrap())
    });

    let mut slow = c.benchmark_group("slow");
    slow.sample_size(10);
    slow.bench_function("lambda_c H1", |b| {
        b.iter(|| cyclic_edge_connectivity(black_box(&h1.graph), 6).unwrap())
    });
    slow.finish();
}

criterion_group!(benches, construction, searches);
criterion_main!(benches);
