use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use imetric_core::convergence::{harness_rows, test_family};
use imetric_core::distances::{d_i_fast, d_i_oracle, rho_i_fast, rho_i_oracle};
use imetric_core::sample::{self, SequenceKind};
use imetric_core::{glue, IdempotentMeasure, MeasureSequence};

fn pair(n: usize, seed: u64) -> (IdempotentMeasure, IdempotentMeasure) {
    let mut rng = sample::rng(seed);
    let s = sample::space(&mut rng, n);
    (sample::measure(&mut rng, &s, 0.1), sample::measure(&mut rng, &s, 0.1))
}

fn fast_distances(c: &mut Criterion) {
    let mut group = c.benchmark_group("fast");
    for n in [4, 16, 64, 128] {
        let (a, b) = pair(n, n as u64);
        group.bench_with_input(BenchmarkId::new("dI", n), &n, |bench, _| bench.iter(|| d_i_fast(black_box(&a), black_box(&b))));
        group.bench_with_input(BenchmarkId::new("rhoI", n), &n, |bench, _| {
            bench.iter(|| rho_i_fast(black_box(&a), black_box(&b)))
        });
    }
    group.finish();
}

fn oracle_vs_fast(c: &mut Criterion) {
    // full supports on 4 points sit exactly at the oracle's 16-pair guard
    let mut rng = sample::rng(1);
    let s = sample::space(&mut rng, 4);
    let a = sample::measure(&mut rng, &s, 0.0);
    let b = sample::measure(&mut rng, &s, 0.0);
    let mut group = c.benchmark_group("oracle_n4");
    group.bench_function("dI_fast", |bench| bench.iter(|| d_i_fast(black_box(&a), black_box(&b))));
    group.bench_function("dI_oracle", |bench| bench.iter(|| d_i_oracle(black_box(&a), black_box(&b))));
    group.bench_function("rhoI_fast", |bench| bench.iter(|| rho_i_fast(black_box(&a), black_box(&b))));
    group.bench_function("rhoI_oracle", |bench| bench.iter(|| rho_i_oracle(black_box(&a), black_box(&b))));
    group.finish();
}

fn gluing(c: &mut Criterion) {
    let mut group = c.benchmark_group("glue");
    for n in [8, 32] {
        let mut rng = sample::rng(n as u64);
        let s = sample::space(&mut rng, n);
        let [a, b, m] = [0, 1, 2].map(|_| sample::measure(&mut rng, &s, 0.1));
        let xi12 = sample::admissible(&mut rng, &a, &b);
        let xi23 = sample::admissible(&mut rng, &b, &m);
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |bench, _| {
            bench.iter(|| glue(black_box(&xi12), black_box(&xi23)))
        });
    }
    group.finish();
}

fn harness(c: &mut Criterion) {
    let mut rng = sample::rng(3);
    let s = sample::space(&mut rng, 6);
    let (limit, terms) = sample::sequence(&mut rng, &s, SequenceKind::Harmonic, 129);
    let seq = MeasureSequence::new(terms, limit).unwrap();
    let family = test_family(6, 8, 0);
    c.bench_function("harness_rows_129x6", |bench| bench.iter(|| harness_rows(black_box(&seq), black_box(&family))));
}

criterion_group!(benches, fast_distances, oracle_vs_fast, gluing, harness);
criterion_main!(benches);
