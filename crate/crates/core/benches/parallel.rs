//! Rayon pool against a single-thread pool on the three data-parallel hot
//! paths. Build with `--no-default-features` to bench the plain-iterator
//! fallback instead; both arms then run sequentially.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use parity_partitions::catalog::Catalog;
use parity_partitions::injections::verify_all;
use parity_partitions::{oracle, FamilyCode};
use rayon::ThreadPool;

fn pools() -> Vec<(&'static str, ThreadPool)> {
    let single = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap();
    let all = rayon::ThreadPoolBuilder::new().build().unwrap();
    vec![("sequential", single), ("parallel", all)]
}

fn catalog(c: &mut Criterion) {
    let mut group = c.benchmark_group("catalog_build");
    group.sample_size(10);
    for (name, pool) in pools() {
        group.bench_with_input(BenchmarkId::new(name, 1000), &1000usize, |b, &order| {
            b.iter(|| pool.install(|| Catalog::build_all(order).unwrap()))
        });
    }
    group.finish();
}

fn oracle_counts(c: &mut Criterion) {
    let mut group = c.benchmark_group("oracle_counts");
    group.sample_size(10);
    for (name, pool) in pools() {
        group.bench_with_input(BenchmarkId::new(name, 36), &36u32, |b, &bound| {
            b.iter(|| pool.install(|| oracle::counts(FamilyCode::OU_EU, bound)))
        });
    }
    group.finish();
}

fn injections(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify_injections");
    group.sample_size(10);
    for (name, pool) in pools() {
        group.bench_with_input(BenchmarkId::new(name, 24), &24u32, |b, &bound| {
            b.iter(|| pool.install(|| verify_all(bound).unwrap()))
        });
    }
    group.finish();
}

criterion_group!(benches, catalog, oracle_counts, injections);
criterion_main!(benches);
