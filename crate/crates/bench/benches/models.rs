use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use sphemb_core::divisor_model::{class_group, is_gorenstein};
use sphemb_core::families::{circular_complexes_model, determinantal_model, monoid_model};
use sphemb_core::oracle::{orbit_dimension, verify_boundary_valuations, DEFAULT_SEED, DEFAULT_TRIALS};

fn construction(c: &mut Criterion) {
    let mut group = c.benchmark_group("construct");
    group.sample_size(20);
    for m in [2, 4, 6] {
        group.bench_with_input(BenchmarkId::new("monoid", m), &m, |b, &m| b.iter(|| monoid_model(black_box(m))));
    }
    group.bench_function("circular_4_5_1_2", |b| b.iter(|| circular_complexes_model(4, 5, 1, 2)));
    group.bench_function("determinantal_4_5_2", |b| b.iter(|| determinantal_model(4, 5, 2)));
    group.finish();
}

fn queries(c: &mut Criterion) {
    let (model, _) = monoid_model(6).unwrap();
    c.bench_function("class_group_monoid_6", |b| b.iter(|| class_group(black_box(&model))));
    let (model, _) = circular_complexes_model(5, 5, 2, 3).unwrap();
    c.bench_function("gorenstein_circular_5_5_2_3", |b| b.iter(|| is_gorenstein(black_box(&model))));
}

fn oracle(c: &mut Criterion) {
    let mut group = c.benchmark_group("oracle");
    group.sample_size(10);
    let (model, real) = monoid_model(3).unwrap();
    group.bench_function("verify_monoid_3", |b| {
        b.iter(|| verify_boundary_valuations(&model, &real, &real.semi_invariants, DEFAULT_TRIALS, DEFAULT_SEED))
    });
    let (_, real) = circular_complexes_model(4, 4, 2, 2).unwrap();
    group.bench_function("orbit_dimension_circular_4_4_2_2", |b| b.iter(|| orbit_dimension(&real, DEFAULT_SEED)));
    group.finish();
}

criterion_group!(benches, construction, queries, oracle);
criterion_main!(benches);
