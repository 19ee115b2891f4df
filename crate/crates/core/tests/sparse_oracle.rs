//! Randomized sweeps of the sparse backend against a dense reference
//! implementation.
//!
//! The reference computes everything on `Vec<Vec<f64>>` grids in plain
//! loops. Comparisons are bit-exact: both sides fold each output cell's
//! contributions in the same (increasing inner index) order, so even float
//! results must agree to the last bit.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use assoc_array::semiring::{max_min, max_plus, plus_times, Semiring};
use assoc_array::{DupRule, SparseMatrix};

type Dense = Vec<Vec<f64>>;

#[derive(Clone, Copy)]
enum Values {
    SmallInt,
    PositiveFloat,
    SignedInt,
}

impl Values {
    fn draw(self, rng: &mut ChaCha8Rng) -> f64 {
        match self {
            Values::SmallInt => rng.random_range(1..=9) as f64,
            Values::PositiveFloat => rng.random_range(0.1..10.0),
            Values::SignedInt => {
                let v = rng.random_range(1..=4) as f64;
                if rng.random_bool(0.5) {
                    -v
                } else {
                    v
                }
            }
        }
    }
}

/// A random matrix as both a dense grid and a sparse canonical matrix.
fn random_pair(
    nrows: usize,
    ncols: usize,
    density: f64,
    values: Values,
    rng: &mut ChaCha8Rng,
) -> (Dense, SparseMatrix) {
    let mut grid = vec![vec![0.0; ncols]; nrows];
    let mut rows = Vec::new();
    let mut cols = Vec::new();
    let mut vals = Vec::new();
    for (i, row) in grid.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            if rng.random_bool(density) {
                let v = values.draw(rng);
                *cell = v;
                rows.push(i);
                cols.push(j);
                vals.push(v);
            }
        }
    }
    let m = SparseMatrix::from_triples(nrows, ncols, &rows, &cols, &vals, DupRule::Sum).unwrap();
    (grid, m)
}

fn dense_triples(grid: &Dense) -> Vec<(usize, usize, f64)> {
    let mut out = Vec::new();
    for (i, row) in grid.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            if v != 0.0 {
                out.push((i, j, v));
            }
        }
    }
    out
}

fn dense_add(a: &Dense, b: &Dense) -> Vec<(usize, usize, f64)> {
    let sum: Dense = a
        .iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().zip(rb).map(|(&x, &y)| x + y).collect())
        .collect();
    dense_triples(&sum)
}

fn dense_ewise(a: &Dense, b: &Dense) -> Vec<(usize, usize, f64)> {
    let prod: Dense = a
        .iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().zip(rb).map(|(&x, &y)| x * y).collect())
        .collect();
    dense_triples(&prod)
}

/// Semiring product over stored entries only: a cell appears in the result
/// when at least one aligned pair contributed and the fold did not land on
/// the ring zero. Contributions fold in increasing inner-index order, first
/// one taken bare — exactly the kernel's accumulation discipline.
fn dense_matmul(a: &Dense, b: &Dense, ring: &Semiring<f64>) -> Vec<(usize, usize, f64)> {
    let nrows = a.len();
    let inner = if a.is_empty() { 0 } else { a[0].len() };
    let ncols = if b.is_empty() { 0 } else { b[0].len() };
    let mut out = Vec::new();
    for i in 0..nrows {
        for j in 0..ncols {
            let mut acc: Option<f64> = None;
            for k in 0..inner {
                if a[i][k] != 0.0 && b[k][j] != 0.0 {
                    let p = ring.mul(&a[i][k], &b[k][j]);
                    acc = Some(match acc {
                        None => p,
                        Some(s) => ring.add(&s, &p),
                    });
                }
            }
            if let Some(v) = acc {
                if v != *ring.zero() {
                    out.push((i, j, v));
                }
            }
        }
    }
    out
}

#[test]
fn add_and_elementwise_match_dense_reference() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xADD);
    let shapes = [(1, 1), (3, 8), (40, 33), (200, 200)];
    let densities = [0.01, 0.1, 0.5];
    let value_kinds = [Values::SmallInt, Values::PositiveFloat, Values::SignedInt];
    for &(nr, nc) in &shapes {
        for &d in &densities {
            for &vk in &value_kinds {
                let (ga, ma) = random_pair(nr, nc, d, vk, &mut rng);
                let (gb, mb) = random_pair(nr, nc, d, vk, &mut rng);

                let sum = ma.add(&mb).unwrap();
                sum.validate().unwrap();
                assert_eq!(sum.triples(), dense_add(&ga, &gb), "add {nr}x{nc} d={d}");

                let prod = ma.elementwise_multiply(&mb).unwrap();
                prod.validate().unwrap();
                assert_eq!(
                    prod.triples(),
                    dense_ewise(&ga, &gb),
                    "ewise {nr}x{nc} d={d}"
                );
            }
        }
    }
}

#[test]
fn matmul_matches_dense_reference_across_semirings() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xA7A);
    let shapes = [(1, 1, 1), (5, 7, 6), (40, 30, 45), (120, 90, 70), (200, 200, 200)];
    let densities = [0.01, 0.1, 0.5];
    for &(m, k, n) in &shapes {
        for &d in &densities {
            // Ordinary arithmetic, integral and float values.
            for vk in [Values::SmallInt, Values::PositiveFloat, Values::SignedInt] {
                let (ga, ma) = random_pair(m, k, d, vk, &mut rng);
                let (gb, mb) = random_pair(k, n, d, vk, &mut rng);
                let ring = plus_times();
                let prod = ma.matmul(&mb, &ring).unwrap();
                prod.validate().unwrap();
                assert_eq!(
                    prod.triples(),
                    dense_matmul(&ga, &gb, &ring),
                    "plus_times {m}x{k}x{n} d={d}"
                );
            }
            // Path-style semirings; positive values keep 0.0 (the numeric
            // empty marker) out of the stored results so validate() applies.
            for ring in [max_plus(), max_min()] {
                let (ga, ma) = random_pair(m, k, d, Values::PositiveFloat, &mut rng);
                let (gb, mb) = random_pair(k, n, d, Values::PositiveFloat, &mut rng);
                let prod = ma.matmul(&mb, &ring).unwrap();
                prod.validate().unwrap();
                assert_eq!(
                    prod.triples(),
                    dense_matmul(&ga, &gb, &ring),
                    "{} {m}x{k}x{n} d={d}",
                    ring.name()
                );
            }
        }
    }
}

#[test]
fn transpose_matches_dense_reference() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x7A);
    for &(nr, nc) in &[(1, 9), (17, 13), (80, 120)] {
        let (g, m) = random_pair(nr, nc, 0.2, Values::PositiveFloat, &mut rng);
        let mut expected: Vec<(usize, usize, f64)> = dense_triples(&g)
            .into_iter()
            .map(|(i, j, v)| (j, i, v))
            .collect();
        expected.sort_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));
        let t = m.transpose();
        t.validate().unwrap();
        assert_eq!(t.shape(), (nc, nr));
        assert_eq!(t.triples(), expected);
    }
}

#[test]
fn select_matches_dense_filter() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5E1);
    for _ in 0..50 {
        let nr = rng.random_range(1..40);
        let nc = rng.random_range(1..40);
        let (g, m) = random_pair(nr, nc, 0.3, Values::SmallInt, &mut rng);
        let pick = |len: usize, rng: &mut ChaCha8Rng| -> Vec<usize> {
            (0..len).filter(|_| rng.random_bool(0.4)).collect()
        };
        let ri = pick(nr, &mut rng);
        let ci = pick(nc, &mut rng);
        let sub = m.select(Some(&ri), Some(&ci)).unwrap();
        sub.validate().unwrap();
        assert_eq!(sub.shape(), (ri.len(), ci.len()));
        let mut expected = Vec::new();
        for (si, &i) in ri.iter().enumerate() {
            for (sj, &j) in ci.iter().enumerate() {
                if g[i][j] != 0.0 {
                    expected.push((si, sj, g[i][j]));
                }
            }
        }
        assert_eq!(sub.triples(), expected);
    }
}

#[test]
fn scatter_then_select_round_trips() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5CA);
    for _ in 0..50 {
        let nr = rng.random_range(1..20);
        let nc = rng.random_range(1..20);
        let (_, m) = random_pair(nr, nc, 0.4, Values::PositiveFloat, &mut rng);
        // Strictly increasing random targets into a larger shape.
        let grow = |len: usize, rng: &mut ChaCha8Rng| -> (usize, Vec<usize>) {
            let extra = rng.random_range(0..10);
            let total = len + extra;
            let mut targets: Vec<usize> = (0..total).collect();
            while targets.len() > len {
                let drop_at = rng.random_range(0..targets.len());
                targets.remove(drop_at);
            }
            (total, targets)
        };
        let (big_r, tr) = grow(nr, &mut rng);
        let (big_c, tc) = grow(nc, &mut rng);
        let big = m.scatter(big_r, big_c, &tr, &tc).unwrap();
        big.validate().unwrap();
        assert_eq!(big.nnz(), m.nnz());
        let back = big.select(Some(&tr), Some(&tc)).unwrap();
        assert_eq!(back.triples(), m.triples());
    }
}

#[test]
fn construction_folds_match_a_map_reference() {
    use std::collections::HashMap;
    let mut rng = ChaCha8Rng::seed_from_u64(0xF01D);
    for &dup in &[DupRule::Sum, DupRule::Min, DupRule::Max, DupRule::Last] {
        for _ in 0..30 {
            let nr = rng.random_range(1..8);
            let nc = rng.random_range(1..8);
            let count = rng.random_range(0..60);
            let mut rows = Vec::new();
            let mut cols = Vec::new();
            let mut vals = Vec::new();
            for _ in 0..count {
                rows.push(rng.random_range(0..nr));
                cols.push(rng.random_range(0..nc));
                vals.push(Values::SignedInt.draw(&mut rng));
            }
            let mut map: HashMap<(usize, usize), f64> = HashMap::new();
            for ((&r, &c), &v) in rows.iter().zip(&cols).zip(&vals) {
                map.entry((r, c))
                    .and_modify(|acc| {
                        *acc = match dup {
                            DupRule::Sum => *acc + v,
                            DupRule::Min => acc.min(v),
                            DupRule::Max => acc.max(v),
                            DupRule::Last => v,
                        }
                    })
                    .or_insert(v);
            }
            let mut expected: Vec<(usize, usize, f64)> = map
                .into_iter()
                .filter(|&(_, v)| v != 0.0)
                .map(|((r, c), v)| (r, c, v))
                .collect();
            expected.sort_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));

            let m = SparseMatrix::from_triples(nr, nc, &rows, &cols, &vals, dup).unwrap();
            m.validate().unwrap();
            assert_eq!(m.triples(), expected, "{dup:?}");
        }
    }
}
