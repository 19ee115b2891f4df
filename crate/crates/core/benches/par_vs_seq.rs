//! Sequential vs parallel kernel lanes on identical inputs.
//!
//! The public operations dispatch between these lanes by input size; this
//! suite pins each lane explicitly so the crossover and the per-thread
//! overhead stay visible. Results are bit-identical between lanes by
//! construction, which the harness asserts once per input before timing.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use assoc_array::kernels;
use assoc_array::key::Key;
use assoc_array::semiring::plus_times;
use assoc_array::{DupRule, SparseMatrix};

fn random_matrix(nrows: usize, ncols: usize, nnz: usize, seed: u64) -> SparseMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows = Vec::with_capacity(nnz);
    let mut cols = Vec::with_capacity(nnz);
    let mut vals = Vec::with_capacity(nnz);
    for _ in 0..nnz {
        rows.push(rng.random_range(0..nrows));
        cols.push(rng.random_range(0..ncols));
        vals.push(rng.random_range(1..=9) as f64);
    }
    SparseMatrix::from_triples(nrows, ncols, &rows, &cols, &vals, DupRule::Sum)
        .unwrap()
        .convert(assoc_array::Layout::Csr)
}

fn random_keys(count: usize, keyspace: u64, seed: u64) -> Vec<Key> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| Key::Text(rng.random_range(0..keyspace).to_string()))
        .collect()
}

fn bench_add_and_ewise(c: &mut Criterion) {
    let mut group = c.benchmark_group("entrywise");
    group.sample_size(20);
    for &nnz in &[1 << 14, 1 << 17] {
        let n = 4 * (nnz as f64).sqrt() as usize;
        let a = random_matrix(n, n, nnz, 11);
        let b = random_matrix(n, n, nnz, 13);
        #[cfg(feature = "parallel")]
        assert_eq!(kernels::add_seq(&a, &b), kernels::add_par(&a, &b));

        group.bench_with_input(BenchmarkId::new("add_seq", nnz), &nnz, |bench, _| {
            bench.iter(|| kernels::add_seq(black_box(&a), black_box(&b)))
        });
        #[cfg(feature = "parallel")]
        group.bench_with_input(BenchmarkId::new("add_par", nnz), &nnz, |bench, _| {
            bench.iter(|| kernels::add_par(black_box(&a), black_box(&b)))
        });
        group.bench_with_input(BenchmarkId::new("ewise_seq", nnz), &nnz, |bench, _| {
            bench.iter(|| kernels::ewise_seq(black_box(&a), black_box(&b)))
        });
        #[cfg(feature = "parallel")]
        group.bench_with_input(BenchmarkId::new("ewise_par", nnz), &nnz, |bench, _| {
            bench.iter(|| kernels::ewise_par(black_box(&a), black_box(&b)))
        });
    }
    group.finish();
}

fn bench_matmul(c: &mut Criterion) {
    let mut group = c.benchmark_group("matmul");
    group.sample_size(10);
    let ring = plus_times();
    for &n in &[256usize, 768] {
        let nnz = n * 16;
        let a = random_matrix(n, n, nnz, 17);
        let b = random_matrix(n, n, nnz, 19);
        #[cfg(feature = "parallel")]
        assert_eq!(
            kernels::matmul_seq(&a, &b, &ring),
            kernels::matmul_par(&a, &b, &ring)
        );

        group.bench_with_input(BenchmarkId::new("seq", n), &n, |bench, _| {
            bench.iter(|| kernels::matmul_seq(black_box(&a), black_box(&b), &ring))
        });
        #[cfg(feature = "parallel")]
        group.bench_with_input(BenchmarkId::new("par", n), &n, |bench, _| {
            bench.iter(|| kernels::matmul_par(black_box(&a), black_box(&b), &ring))
        });
    }
    group.finish();
}

fn bench_unique_keys(c: &mut Criterion) {
    let mut group = c.benchmark_group("unique_keys");
    group.sample_size(20);
    for &count in &[1 << 14, 1 << 17] {
        let keys = random_keys(count, count as u64 / 8, 23);
        #[cfg(feature = "parallel")]
        assert_eq!(
            kernels::unique_keys_seq(&keys),
            kernels::unique_keys_par(&keys)
        );

        group.bench_with_input(BenchmarkId::new("seq", count), &count, |bench, _| {
            bench.iter(|| kernels::unique_keys_seq(black_box(&keys)))
        });
        #[cfg(feature = "parallel")]
        group.bench_with_input(BenchmarkId::new("par", count), &count, |bench, _| {
            bench.iter(|| kernels::unique_keys_par(black_box(&keys)))
        });
    }
    group.finish();
}

criterion_group!(lanes, bench_add_and_ewise, bench_matmul, bench_unique_keys);
criterion_main!(lanes);
