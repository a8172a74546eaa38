use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use sparsenet::{
    bounded_spread_spanner, delaunay, dilation, emst_2d, greedy_tspanner, sparse_spanner_2d,
    sparse_spanner_highd,
};
use sparsenet_bench::{workload, SIZES};

fn planar(c: &mut Criterion) {
    let mut group = c.benchmark_group("planar");
    for n in SIZES {
        let s = workload(n, 2);
        group.bench_with_input(BenchmarkId::new("delaunay", n), &s, |b, s| {
            b.iter(|| delaunay(s).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("emst", n), &s, |b, s| {
            b.iter(|| emst_2d(s).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("sparse2d_k7", n), &s, |b, s| {
            b.iter(|| sparse_spanner_2d(s, 7).unwrap())
        });
    }
    group.finish();
}

fn any_dimension(c: &mut Criterion) {
    let mut group = c.benchmark_group("highd");
    group.sample_size(10);
    for n in SIZES {
        let s = workload(n, 3);
        group.bench_with_input(BenchmarkId::new("greedy_t2", n), &s, |b, s| {
            b.iter(|| greedy_tspanner(s, 2.0).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("highd_k7", n), &s, |b, s| {
            b.iter(|| sparse_spanner_highd(s, 7, 2.0).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("spread_k7", n), &s, |b, s| {
            b.iter(|| bounded_spread_spanner(s, 7, 2.0).unwrap())
        });
    }
    group.finish();
}

fn measuring(c: &mut Criterion) {
    let mut group = c.benchmark_group("dilation");
    for n in SIZES {
        let g = sparse_spanner_2d(&workload(n, 2), 7).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(n), &g, |b, g| {
            b.iter(|| dilation(g).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, planar, any_dimension, measuring);
criterion_main!(benches);
