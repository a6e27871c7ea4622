//! Compares the sequential and parallel classical-mixing paths on dense
//! strategies over the whole symmetric group.
//!
//! Run with `cargo bench -p qroulette`. Both paths share one accumulation
//! tree, so the comparison is purely about throughput, never about results.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use qroulette::linalg::{ComplexMatrix, ComplexScalar, DensityMatrix};
use qroulette::permutations::{
    classical_mix_parallel, classical_mix_sequential, enumerate_sn, factorial, ClassicalStrategy,
};

/// Deterministic full-rank density matrix used as the mixing input.
fn bench_density(n: usize) -> DensityMatrix {
    let a = ComplexMatrix::from_fn(n, |i, j| {
        let x = ((i * n + j) as f64).sin();
        let y = ((i + 2 * j + 1) as f64).cos();
        ComplexScalar::new(x, y)
    })
    .unwrap();
    let gram = a.mat_mul(&a.adjoint()).unwrap();
    let tr = gram.trace().re;
    DensityMatrix::new(gram.scale(ComplexScalar::new(1.0 / tr, 0.0))).unwrap()
}

/// Uniform strategy over every non-identity permutation of S_n.
fn dense_strategy(n: usize) -> ClassicalStrategy {
    let weight = 1.0 / factorial(n) as f64;
    let pairs = enumerate_sn(n)
        .unwrap()
        .into_iter()
        .filter(|p| !p.is_identity())
        .map(|p| (p, weight));
    ClassicalStrategy::new(n, pairs).unwrap()
}

fn bench_classical_mix(c: &mut Criterion) {
    let mut group = c.benchmark_group("classical_mix");
    for n in [6usize, 7, 8] {
        let rho = bench_density(n);
        let strategy = dense_strategy(n);
        group.bench_with_input(BenchmarkId::new("sequential", n), &n, |b, _| {
            b.iter(|| classical_mix_sequential(&rho, &strategy).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("parallel", n), &n, |b, _| {
            b.iter(|| classical_mix_parallel(&rho, &strategy).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, bench_classical_mix);
criterion_main!(benches);
