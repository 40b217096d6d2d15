use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use parteval::detectors::{greedy_agglomerative, label_propagation, louvain_style};
use parteval::pr_eval::make_split;
use parteval::NullModelKind;
use parteval_bench::{fixed_clique, sbm};

fn detectors(c: &mut Criterion) {
    let large = fixed_clique().graph;
    let mut group = c.benchmark_group("detectors");
    group.sample_size(20);
    group.bench_function("label_propagation/fixed_clique", |b| {
        b.iter(|| label_propagation(black_box(&large), 42).unwrap())
    });
    group.bench_function("louvain_style/fixed_clique", |b| {
        b.iter(|| louvain_style(black_box(&large), 42).unwrap())
    });
    // the greedy scan is quadratic in communities per merge; keep it small
    for blocks in [5, 10] {
        let g = sbm(blocks).graph;
        group.bench_with_input(
            BenchmarkId::new("greedy_agglomerative/sbm", blocks * 20),
            &g,
            |b, g| b.iter(|| greedy_agglomerative(black_box(g), NullModelKind::Configuration).unwrap()),
        );
    }
    group.finish();
}

fn splits(c: &mut Criterion) {
    let g = fixed_clique().graph;
    c.bench_function("make_split/fixed_clique", |b| {
        b.iter(|| make_split(black_box(&g), 0.1, 42).unwrap())
    });
}

criterion_group!(benches, detectors, splits);
criterion_main!(benches);
