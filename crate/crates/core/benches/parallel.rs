use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use tripaths::generate::generate_connected_graphs_with;
use tripaths::graph::named;
use tripaths::search::enumerate_longest_paths_with;
use tripaths::{scan, Exec, ScanConfig, Source};

fn threads() -> usize {
    std::thread::available_parallelism().map_or(2, |n| n.get().max(2))
}

fn enumeration(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate_longest_paths");
    group.sample_size(10);
    for (name, g) in [("petersen", named::petersen()), ("k7", named::complete(7))] {
        for exec in [Exec::Sequential, Exec::Parallel] {
            group.bench_with_input(BenchmarkId::new(format!("{exec:?}"), name), &g, |b, g| {
                b.iter(|| enumerate_longest_paths_with(black_box(g), usize::MAX, exec))
            });
        }
    }
    group.finish();
}

fn generation(c: &mut Criterion) {
    let mut group = c.benchmark_group("generate_connected_graphs");
    group.sample_size(10);
    for exec in [Exec::Sequential, Exec::Parallel] {
        group.bench_function(BenchmarkId::new(format!("{exec:?}"), 7), |b| {
            b.iter(|| generate_connected_graphs_with(black_box(7), exec).unwrap())
        });
    }
    group.finish();
}

fn scanning(c: &mut Criterion) {
    let mut group = c.benchmark_group("scan");
    group.sample_size(10);
    for jobs in [1, threads()] {
        let config = ScanConfig { source: Source::Generate { n: 6 }, jobs, ..ScanConfig::default() };
        group.bench_function(BenchmarkId::new("jobs", jobs), |b| b.iter(|| scan(black_box(&config)).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, enumeration, generation, scanning);
criterion_main!(benches);
