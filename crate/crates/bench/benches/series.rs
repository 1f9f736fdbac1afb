use std::hint::black_box;

use altsum::bounds::{self, Method};
use altsum::terms::{partial_sum, TermSource};
use altsum::{euler, ExactRational};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn bench_partial_sums(c: &mut Criterion) {
    let mut group = c.benchmark_group("exact_partial_sum");
    group.sample_size(10);
    for n in [1_000u64, 10_000] {
        group.bench_with_input(BenchmarkId::new("ln2", n), &n, |b, &n| {
            b.iter(|| partial_sum(&TermSource::ln2(), black_box(n)).unwrap())
        });
    }
    group.finish();
}

fn bench_bounds(c: &mut Criterion) {
    let pi4 = TermSource::pi4();
    c.bench_function("johnsonbaugh_interval pi4 n=5000 k=2", |b| {
        b.iter(|| bounds::johnsonbaugh_interval(&pi4, black_box(5000), 2).unwrap())
    });
    let eps: ExactRational = "1/20000".parse().unwrap();
    c.bench_function("first_n_guaranteed ln2 jb:0", |b| {
        b.iter(|| {
            bounds::first_n_guaranteed(&TermSource::ln2(), black_box(&eps), Method::Johnsonbaugh(0))
                .unwrap()
        })
    });
}

fn bench_euler(c: &mut Criterion) {
    let pi4 = TermSource::pi4();
    c.bench_function("euler_partial_sum pi4 n=13", |b| {
        b.iter(|| euler::euler_partial_sum(&pi4, black_box(13)).unwrap())
    });
    c.bench_function("hybrid_sum pi4 10+11", |b| {
        b.iter(|| euler::hybrid_sum(&pi4, black_box(10), 11).unwrap())
    });
    let float = TermSource::float64(pi4.spec.clone());
    c.bench_function("euler_partial_sum pi4 n=13 float64", |b| {
        b.iter(|| euler::euler_partial_sum(&float, black_box(13)).unwrap())
    });
}

criterion_group!(benches, bench_partial_sums, bench_bounds, bench_euler);
criterion_main!(benches);
