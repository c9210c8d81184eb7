use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use std::hint::black_box;

use qmlab_bench::workload;
use qmlab_core::RunLimits;

fn machines(c: &mut Criterion) {
    for name in ["lprime", "mk:2", "tk:2", "anbn:linear"] {
        let mut group = c.benchmark_group(name);
        for n in [1 << 8, 1 << 11, 1 << 14] {
            let w = workload(name, n);
            group.throughput(Throughput::Elements(w.input.len() as u64));
            group.bench_with_input(BenchmarkId::from_parameter(n), &w, |b, w| {
                b.iter(|| w.machine.run(black_box(&w.input), RunLimits::default()).unwrap().steps)
            });
        }
        group.finish();
    }
}

fn quadratic(c: &mut Criterion) {
    let mut group = c.benchmark_group("anbn:quadratic");
    group.sample_size(10);
    for n in [1 << 6, 1 << 8, 1 << 10] {
        let w = workload("anbn:quadratic", n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &w, |b, w| {
            b.iter(|| w.machine.run(black_box(&w.input), RunLimits::default()).unwrap().steps)
        });
    }
    group.finish();
}

criterion_group!(benches, machines, quadratic);
criterion_main!(benches);
