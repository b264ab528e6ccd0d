use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use opgs::averaging::{basis_audit, build_system, Family};
use opgs::engine::{local_confluence_report, Orientation};
use opgs::{Execution, OrderHandle, Variant};

const BUDGET: usize = 1_000_000;

fn modes() -> [(&'static str, Execution); 2] {
    [
        ("sequential", Execution::Sequential),
        ("parallel", Execution::Parallel),
    ]
}

fn confluence(c: &mut Criterion) {
    let sys = build_system(
        &Family::ALL,
        Orientation::PatternSide(0),
        Variant::Nonunitary,
    );
    let mut group = c.benchmark_group("local_confluence_nonunitary_d6_k2");
    group.sample_size(10);
    for (name, exec) in modes() {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| black_box(local_confluence_report(6, 2, &sys, BUDGET, exec)))
        });
    }
    group.finish();
}

fn audit(c: &mut Criterion) {
    let sys = build_system(
        &Family::ALL,
        Orientation::Order(OrderHandle::Dt),
        Variant::Unitary,
    );
    let mut group = c.benchmark_group("basis_audit_order_d5_k2");
    group.sample_size(10);
    for (name, exec) in modes() {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| black_box(basis_audit(5, 2, &sys, BUDGET, exec)))
        });
    }
    group.finish();
}

criterion_group!(benches, confluence, audit);
criterion_main!(benches);
