use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use parteval::{alpha_envelope, metric_report, pareto_frontier, NullModelKind};
use parteval_bench::{fixed_clique, random_points};

fn reports(c: &mut Criterion) {
    let pg = fixed_clique();
    let mut group = c.benchmark_group("metric_report");
    for kind in [NullModelKind::Uniform, NullModelKind::Configuration] {
        group.bench_with_input(BenchmarkId::from_parameter(kind), &kind, |b, &kind| {
            b.iter(|| metric_report(black_box(&pg.graph), black_box(&pg.planted), kind).unwrap())
        });
    }
    group.finish();
}

fn selection(c: &mut Criterion) {
    let mut group = c.benchmark_group("selection");
    for n in [1_000, 100_000] {
        let points = random_points(n, 1);
        let lines: Vec<(String, f64, f64)> = points.iter().map(|p| (p.id.clone(), p.x, p.y)).collect();
        group.bench_with_input(BenchmarkId::new("pareto_frontier", n), &points, |b, pts| {
            b.iter(|| pareto_frontier(black_box(pts)).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("alpha_envelope", n), &lines, |b, ls| {
            b.iter(|| alpha_envelope(black_box(ls)).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, reports, selection);
criterion_main!(benches);
