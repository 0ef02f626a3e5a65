use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use qubo_order::*;

const X: [f64; 7] = [46.0, 52.0, -12.0, 33.0, 10.0, 51.0, 24.0];

fn values(n: usize) -> ValueVector {
    ValueVector::new(X.iter().cycle().take(n).enumerate().map(|(i, v)| v + i as f64).collect()).unwrap()
}

fn bench_build(c: &mut Criterion) {
    let mut group = c.benchmark_group("build_qubo");
    for n in [4, 7, 10] {
        let x = values(n);
        let program = heap_program(n, 2).unwrap();
        let cfg = BuilderConfig::for_size(n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, _| {
            b.iter(|| build_qubo(black_box(&x), &program, &cfg).unwrap())
        });
    }
    group.finish();
}

fn bench_solve(c: &mut Criterion) {
    let mut group = c.benchmark_group("solve");
    for n in [7, 10] {
        let x = values(n);
        let inst = build_qubo(&x, &ascending_program(n).unwrap(), &BuilderConfig::for_size(n)).unwrap();
        let hop = hopfield_from_qubo(&inst);
        let cfg = SolverConfig::default();
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, _| {
            b.iter(|| solve(black_box(&hop), &cfg).unwrap())
        });
    }
    group.finish();
}

fn bench_oracles(c: &mut Criterion) {
    let mut group = c.benchmark_group("oracles");
    group.sample_size(10);
    for n in [3, 4] {
        let x = values(n);
        let inst = build_qubo(&x, &ascending_program(n).unwrap(), &BuilderConfig::for_size(n)).unwrap();
        group.bench_with_input(BenchmarkId::new("exhaustive_qubo_min", n), &n, |b, _| {
            b.iter(|| exhaustive_qubo_min(black_box(&inst)).unwrap())
        });
    }
    let x = values(7);
    let program = bst_program(7, 2).unwrap();
    group.bench_function("best_permutation/7", |b| {
        b.iter(|| best_permutation(black_box(&x), &program).unwrap())
    });
    group.finish();
}

criterion_group!(benches, bench_build, bench_solve, bench_oracles);
criterion_main!(benches);
