use std::hint::black_box;
use std::sync::Arc;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use qcw::catalog::Catalog;
use qcw::cluster::{run_suite, type_a, type_d, verify_theorem1};
use qcw::par::Mode;

const MODES: [(&str, Mode); 2] = [("sequential", Mode::Sequential), ("parallel", Mode::Parallel)];

fn suite(c: &mut Criterion) {
    let mut quivers = type_a(4);
    quivers.extend(type_d(4));
    let mut group = c.benchmark_group("run_suite/A4+D4");
    group.sample_size(10);
    for (name, mode) in MODES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &mode, |b, &mode| {
            b.iter(|| run_suite(black_box(&quivers), mode).unwrap())
        });
    }
    group.finish();
}

fn theorem1(c: &mut Criterion) {
    let q = Arc::new(type_a(6).swap_remove(0));
    let cat = Catalog::dynkin(q, Mode::Sequential).unwrap();
    let mut group = c.benchmark_group("verify_theorem1/A6");
    group.sample_size(10);
    for (name, mode) in MODES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &mode, |b, &mode| {
            b.iter(|| verify_theorem1(black_box(&cat), mode).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, suite, theorem1);
criterion_main!(benches);
