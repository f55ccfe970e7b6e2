use std::f64::consts::PI;
use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use parityprobe::analytic::{component_fock, report, Branch};
use parityprobe::fock::{adaptive_cutoff, numeric_report};
use parityprobe::optimize::{minimize_qcr, SearchBounds};
use parityprobe_bench::{ladder, landmark_k1};

fn closed_form(c: &mut Criterion) {
    let mut g = c.benchmark_group("report");
    for cfg in ladder(6) {
        g.bench_with_input(BenchmarkId::from_parameter(cfg.k), &cfg, |b, cfg| {
            b.iter(|| report(black_box(cfg)).unwrap())
        });
    }
    g.finish();
}

fn fock_oracle(c: &mut Criterion) {
    let cfg = landmark_k1();
    let n_max = adaptive_cutoff(&cfg);
    c.bench_function("numeric_report/k1", |b| {
        b.iter(|| numeric_report(black_box(&cfg), n_max).unwrap())
    });
}

fn components(c: &mut Criterion) {
    c.bench_function("component_fock/k4_two", |b| {
        b.iter(|| component_fock(4, Branch::Two, black_box(0.05), 2.0, 80).unwrap())
    });
}

fn search(c: &mut Criterion) {
    let mut g = c.benchmark_group("minimize_qcr");
    g.sample_size(10);
    let bounds = SearchBounds::default();
    for k in [1usize, 3] {
        g.bench_with_input(BenchmarkId::from_parameter(k), &k, |b, &k| {
            b.iter(|| minimize_qcr(k, 0.3, black_box(2.0 * PI), &bounds).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, closed_form, fock_oracle, components, search);
criterion_main!(benches);
