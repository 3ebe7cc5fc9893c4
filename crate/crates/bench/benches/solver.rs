use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use emcor::dependence::{build_product_measure, empirical_ecov};
use emcor::transport::solve_transport;
use emcor_bench::{correlated_sample, random_transport};

fn bench_ecov(c: &mut Criterion) {
    let mut group = c.benchmark_group("empirical_ecov");
    group.sample_size(10);
    for n in [20usize, 30, 50] {
        let sample = correlated_sample(n, 42);
        group.bench_with_input(BenchmarkId::from_parameter(n), &sample, |b, s| {
            b.iter(|| empirical_ecov(black_box(s)).unwrap())
        });
    }
    group.finish();
}

fn bench_solver(c: &mut Criterion) {
    let mut group = c.benchmark_group("solve_transport");
    group.sample_size(10);
    for (s, d) in [(50usize, 2500usize), (30, 900)] {
        let problem = random_transport(s, d, 7);
        group.bench_with_input(
            BenchmarkId::from_parameter(format!("{s}x{d}")),
            &problem,
            |b, p| b.iter(|| solve_transport(black_box(p)).unwrap()),
        );
    }
    group.finish();
}

fn bench_build(c: &mut Criterion) {
    let sample = correlated_sample(50, 42);
    c.bench_function("build_product_measure/50", |b| {
        b.iter(|| build_product_measure(black_box(&sample)).unwrap())
    });
}

criterion_group!(benches, bench_ecov, bench_solver, bench_build);
criterion_main!(benches);
