use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sphemb_core::lattice::{cokernel, smith_normal_form, IntegerMatrix};

fn random_matrix(n: usize, bound: i64, seed: u64) -> IntegerMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    IntegerMatrix::from_fn(n, n, |_, _| BigInt::from(rng.gen_range(-bound..=bound)))
}

fn smith(c: &mut Criterion) {
    let mut group = c.benchmark_group("smith_normal_form");
    for n in [4, 6, 8, 12] {
        let a = random_matrix(n, 20, n as u64);
        group.bench_with_input(BenchmarkId::from_parameter(n), &a, |b, a| b.iter(|| smith_normal_form(black_box(a))));
    }
    group.finish();
}

fn cokernels(c: &mut Criterion) {
    let a = random_matrix(8, 5, 99);
    c.bench_function("cokernel_8x8", |b| b.iter(|| cokernel(black_box(&a))));
}

criterion_group!(benches, smith, cokernels);
criterion_main!(benches);
