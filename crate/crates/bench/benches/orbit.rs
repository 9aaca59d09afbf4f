// Copyright 2026 The cantorlab Authors
// SPDX-License-Identifier: Apache-2.0

use cantorlab_core::exact_orbit::{depth_for_steps, sample_cantor};
use cantorlab_core::harness::{count_hits, dyadic_hits, zero_runs};
use cantorlab_core::{ApproxFunction, BinaryOrbit, OrbitCursor, Sampler, TargetSequence, DEFAULT_GUARD_BITS};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

fn orbit_construction(c: &mut Criterion) {
    let mut group = c.benchmark_group("binary_orbit");
    for steps in [1_000u64, 10_000, 100_000] {
        let point = sample_cantor(1, 0, depth_for_steps(steps, DEFAULT_GUARD_BITS));
        group.bench_with_input(BenchmarkId::from_parameter(steps), &steps, |b, &steps| {
            b.iter(|| BinaryOrbit::from_cantor(black_box(&point), DEFAULT_GUARD_BITS, steps).unwrap())
        });
    }
    group.finish();
}

fn cursor_steps(c: &mut Criterion) {
    let point = sample_cantor(1, 0, depth_for_steps(1_000, DEFAULT_GUARD_BITS));
    c.bench_function("cursor_1000_steps", |b| {
        b.iter(|| {
            let mut cursor = OrbitCursor::new(&point, DEFAULT_GUARD_BITS);
            cursor.advance_to(1_000).unwrap();
            black_box(cursor.value())
        })
    });
}

fn counting(c: &mut Criterion) {
    let psi = ApproxFunction::new(0.05, 0.3).unwrap();
    let n = 10_000;
    let point = Sampler::Mu.sample(42, 0, n, DEFAULT_GUARD_BITS);
    let mut group = c.benchmark_group("counting_10k");
    group.bench_function("count_hits_zero", |b| {
        b.iter(|| count_hits(&point, n, &psi, &TargetSequence::Zero, DEFAULT_GUARD_BITS).unwrap())
    });
    let iid = TargetSequence::IidUniform { seed: 3 };
    group.bench_function("count_hits_iid", |b| {
        b.iter(|| count_hits(&point, n, &psi, &iid, DEFAULT_GUARD_BITS).unwrap())
    });
    group.bench_function("dyadic_hits", |b| {
        b.iter(|| dyadic_hits(&point, n, &psi, DEFAULT_GUARD_BITS).unwrap())
    });
    group.bench_function("zero_runs", |b| {
        b.iter(|| zero_runs(&point, n, 0.5, DEFAULT_GUARD_BITS).unwrap())
    });
    group.finish();
}

criterion_group!(benches, orbit_construction, cursor_steps, counting);
criterion_main!(benches);
