//! Parallel-vs-sequential comparison for the data-parallel entry points:
//! search restarts (coarse-grained, where rayon pays off) and family batch
//! construction (fine-grained, where fan-out overhead can dominate). Build
//! with the default `parallel` feature; the `*_sequential` twins always run
//! single-threaded.

use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use sic_overlaps::family::{self, Branch};
use sic_overlaps::search::{sic_search, sic_search_sequential, SearchConfig};

fn bench_search(c: &mut Criterion) {
    let mut cfg = SearchConfig::new(4);
    cfg.rng_seed = 42;
    cfg.max_restarts = 8;
    cfg.max_iters = 600;
    // force the full restart budget so both variants do identical work
    cfg.target_gap = 1e-300;

    let mut group = c.benchmark_group("search_restarts_d4");
    group.sample_size(10);
    group.bench_function("parallel", |b| {
        b.iter(|| sic_search(black_box(&cfg)).unwrap())
    });
    group.bench_function("sequential", |b| {
        b.iter(|| sic_search_sequential(black_box(&cfg)).unwrap())
    });
    group.finish();
}

fn bench_family_batch(c: &mut Criterion) {
    let points = family::sample_branch(2000, Branch::Z1EqZ3, 7);
    let mut group = c.benchmark_group("family_tables_2000");
    group.bench_function("parallel", |b| {
        b.iter(|| family::family_tables(black_box(&points)))
    });
    group.bench_function("sequential", |b| {
        b.iter(|| family::family_tables_sequential(black_box(&points)))
    });
    group.finish();
}

criterion_group!(benches, bench_search, bench_family_batch);
criterion_main!(benches);
