//! Row-wise CSR kernels, each in a sequential and (feature-gated) parallel
//! lane.
//!
//! Every kernel computes each output row independently and accumulates within
//! a row in a fixed order, so the parallel lane is bit-identical to the
//! sequential one regardless of thread count or chunk size.

use super::Csr;
use crate::semiring::Semiring;

/// Combined nnz below which the binary kernels stay sequential.
#[cfg(feature = "parallel")]
pub(crate) const PAR_NNZ_MIN: usize = 1 << 13;

/// Rows per parallel work item.
#[cfg(feature = "parallel")]
const ROW_CHUNK: usize = 1024;

#[cfg(feature = "parallel")]
fn row_chunks(nrows: usize) -> Vec<(usize, usize)> {
    (0..nrows)
        .step_by(ROW_CHUNK.max(1))
        .map(|r0| (r0, (r0 + ROW_CHUNK).min(nrows)))
        .collect()
}

/// Partial result for a contiguous block of rows: entry arrays plus the
/// cumulative row boundaries local to the block.
#[cfg(feature = "parallel")]
struct RowBlock {
    cols: Vec<usize>,
    data: Vec<f64>,
    row_ends: Vec<usize>,
}

#[cfg(feature = "parallel")]
fn assemble(nrows: usize, ncols: usize, blocks: Vec<RowBlock>) -> Csr {
    let nnz: usize = blocks.iter().map(|b| b.cols.len()).sum();
    let mut indptr = Vec::with_capacity(nrows + 1);
    indptr.push(0);
    let mut cols = Vec::with_capacity(nnz);
    let mut data = Vec::with_capacity(nnz);
    for b in blocks {
        let off = cols.len();
        indptr.extend(b.row_ends.iter().map(|&e| e + off));
        cols.extend_from_slice(&b.cols);
        data.extend_from_slice(&b.data);
    }
    Csr {
        nrows,
        ncols,
        indptr,
        cols,
        data,
    }
}

/// Merge one row pair, summing shared columns; exact-zero sums are dropped.
fn add_row(
    ac: &[usize],
    ad: &[f64],
    bc: &[usize],
    bd: &[f64],
    out_cols: &mut Vec<usize>,
    out_data: &mut Vec<f64>,
) {
    let (mut i, mut j) = (0, 0);
    while i < ac.len() && j < bc.len() {
        if ac[i] < bc[j] {
            out_cols.push(ac[i]);
            out_data.push(ad[i]);
            i += 1;
        } else if ac[i] > bc[j] {
            out_cols.push(bc[j]);
            out_data.push(bd[j]);
            j += 1;
        } else {
            let v = ad[i] + bd[j];
            if v != 0.0 {
                out_cols.push(ac[i]);
                out_data.push(v);
            }
            i += 1;
            j += 1;
        }
    }
    out_cols.extend_from_slice(&ac[i..]);
    out_data.extend_from_slice(&ad[i..]);
    out_cols.extend_from_slice(&bc[j..]);
    out_data.extend_from_slice(&bd[j..]);
}

/// Intersect one row pair, multiplying shared columns; exact-zero products
/// (underflow) are dropped.
fn mul_row(
    ac: &[usize],
    ad: &[f64],
    bc: &[usize],
    bd: &[f64],
    out_cols: &mut Vec<usize>,
    out_data: &mut Vec<f64>,
) {
    let (mut i, mut j) = (0, 0);
    while i < ac.len() && j < bc.len() {
        if ac[i] < bc[j] {
            i += 1;
        } else if ac[i] > bc[j] {
            j += 1;
        } else {
            let v = ad[i] * bd[j];
            if v != 0.0 {
                out_cols.push(ac[i]);
                out_data.push(v);
            }
            i += 1;
            j += 1;
        }
    }
}

/// Sparse accumulator for one output row of a semiring product. Stamps avoid
/// clearing the dense scratch between rows.
struct Spa {
    acc: Vec<f64>,
    stamp: Vec<u32>,
    cur: u32,
    touched: Vec<usize>,
}

impl Spa {
    fn new(n: usize) -> Spa {
        Spa {
            acc: vec![0.0; n],
            stamp: vec![0; n],
            cur: 0,
            touched: Vec::new(),
        }
    }

    fn begin_row(&mut self) {
        if self.cur == u32::MAX {
            self.stamp.fill(0);
            self.cur = 0;
        }
        self.cur += 1;
        self.touched.clear();
    }
}

/// One output row of `a @ b`: for each stored a(i,k), fold ⊗-products with
/// row k of `b` into the accumulator under ⊕. Skipping absent entries is
/// exact because absent means the ring zero, which ⊗ annihilates. Results
/// equal to the ring zero are dropped.
#[allow(clippy::too_many_arguments)]
fn matmul_row(
    ac: &[usize],
    ad: &[f64],
    b: &Csr,
    add: fn(&f64, &f64) -> f64,
    mul: fn(&f64, &f64) -> f64,
    zero: f64,
    spa: &mut Spa,
    out_cols: &mut Vec<usize>,
    out_data: &mut Vec<f64>,
) {
    spa.begin_row();
    for (&k, va) in ac.iter().zip(ad) {
        let (bc, bd) = b.row(k);
        for (&j, vb) in bc.iter().zip(bd) {
            let v = mul(va, vb);
            if spa.stamp[j] != spa.cur {
                spa.stamp[j] = spa.cur;
                spa.acc[j] = v;
                spa.touched.push(j);
            } else {
                spa.acc[j] = add(&spa.acc[j], &v);
            }
        }
    }
    spa.touched.sort_unstable();
    for &j in &spa.touched {
        let v = spa.acc[j];
        if v != zero {
            out_cols.push(j);
            out_data.push(v);
        }
    }
}

pub(crate) fn csr_add_seq(a: &Csr, b: &Csr) -> Csr {
    let mut indptr = Vec::with_capacity(a.nrows + 1);
    indptr.push(0);
    let mut cols = Vec::with_capacity(a.nnz() + b.nnz());
    let mut data = Vec::with_capacity(a.nnz() + b.nnz());
    for i in 0..a.nrows {
        let (ac, ad) = a.row(i);
        let (bc, bd) = b.row(i);
        add_row(ac, ad, bc, bd, &mut cols, &mut data);
        indptr.push(cols.len());
    }
    Csr {
        nrows: a.nrows,
        ncols: a.ncols,
        indptr,
        cols,
        data,
    }
}

#[cfg(feature = "parallel")]
pub(crate) fn csr_add_par(a: &Csr, b: &Csr) -> Csr {
    use rayon::prelude::*;
    let blocks: Vec<RowBlock> = row_chunks(a.nrows)
        .into_par_iter()
        .map(|(r0, r1)| {
            let mut block = RowBlock {
                cols: Vec::new(),
                data: Vec::new(),
                row_ends: Vec::with_capacity(r1 - r0),
            };
            for i in r0..r1 {
                let (ac, ad) = a.row(i);
                let (bc, bd) = b.row(i);
                add_row(ac, ad, bc, bd, &mut block.cols, &mut block.data);
                block.row_ends.push(block.cols.len());
            }
            block
        })
        .collect();
    assemble(a.nrows, a.ncols, blocks)
}

pub(crate) fn csr_add(a: &Csr, b: &Csr) -> Csr {
    #[cfg(feature = "parallel")]
    if a.nnz() + b.nnz() >= PAR_NNZ_MIN {
        return csr_add_par(a, b);
    }
    csr_add_seq(a, b)
}

pub(crate) fn csr_ewise_seq(a: &Csr, b: &Csr) -> Csr {
    let mut indptr = Vec::with_capacity(a.nrows + 1);
    indptr.push(0);
    let mut cols = Vec::new();
    let mut data = Vec::new();
    for i in 0..a.nrows {
        let (ac, ad) = a.row(i);
        let (bc, bd) = b.row(i);
        mul_row(ac, ad, bc, bd, &mut cols, &mut data);
        indptr.push(cols.len());
    }
    Csr {
        nrows: a.nrows,
        ncols: a.ncols,
        indptr,
        cols,
        data,
    }
}

#[cfg(feature = "parallel")]
pub(crate) fn csr_ewise_par(a: &Csr, b: &Csr) -> Csr {
    use rayon::prelude::*;
    let blocks: Vec<RowBlock> = row_chunks(a.nrows)
        .into_par_iter()
        .map(|(r0, r1)| {
            let mut block = RowBlock {
                cols: Vec::new(),
                data: Vec::new(),
                row_ends: Vec::with_capacity(r1 - r0),
            };
            for i in r0..r1 {
                let (ac, ad) = a.row(i);
                let (bc, bd) = b.row(i);
                mul_row(ac, ad, bc, bd, &mut block.cols, &mut block.data);
                block.row_ends.push(block.cols.len());
            }
            block
        })
        .collect();
    assemble(a.nrows, a.ncols, blocks)
}

pub(crate) fn csr_ewise(a: &Csr, b: &Csr) -> Csr {
    #[cfg(feature = "parallel")]
    if a.nnz() + b.nnz() >= PAR_NNZ_MIN {
        return csr_ewise_par(a, b);
    }
    csr_ewise_seq(a, b)
}

pub(crate) fn csr_matmul_seq(a: &Csr, b: &Csr, ring: &Semiring<f64>) -> Csr {
    let (add, mul, zero) = (ring.add_op(), ring.mul_op(), *ring.zero());
    let mut spa = Spa::new(b.ncols);
    let mut indptr = Vec::with_capacity(a.nrows + 1);
    indptr.push(0);
    let mut cols = Vec::new();
    let mut data = Vec::new();
    for i in 0..a.nrows {
        let (ac, ad) = a.row(i);
        matmul_row(ac, ad, b, add, mul, zero, &mut spa, &mut cols, &mut data);
        indptr.push(cols.len());
    }
    Csr {
        nrows: a.nrows,
        ncols: b.ncols,
        indptr,
        cols,
        data,
    }
}

#[cfg(feature = "parallel")]
pub(crate) fn csr_matmul_par(a: &Csr, b: &Csr, ring: &Semiring<f64>) -> Csr {
    use rayon::prelude::*;
    let (add, mul, zero) = (ring.add_op(), ring.mul_op(), *ring.zero());
    let blocks: Vec<RowBlock> = row_chunks(a.nrows)
        .into_par_iter()
        .map(|(r0, r1)| {
            let mut spa = Spa::new(b.ncols);
            let mut block = RowBlock {
                cols: Vec::new(),
                data: Vec::new(),
                row_ends: Vec::with_capacity(r1 - r0),
            };
            for i in r0..r1 {
                let (ac, ad) = a.row(i);
                matmul_row(
                    ac,
                    ad,
                    b,
                    add,
                    mul,
                    zero,
                    &mut spa,
                    &mut block.cols,
                    &mut block.data,
                );
                block.row_ends.push(block.cols.len());
            }
            block
        })
        .collect();
    assemble(a.nrows, b.ncols, blocks)
}

pub(crate) fn csr_matmul(a: &Csr, b: &Csr, ring: &Semiring<f64>) -> Csr {
    #[cfg(feature = "parallel")]
    if a.nnz() + b.nnz() >= PAR_NNZ_MIN {
        return csr_matmul_par(a, b, ring);
    }
    csr_matmul_seq(a, b, ring)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semiring::{max_plus, plus_times};
    use crate::sparse::{DupRule, SparseMatrix};

    fn random_csr(nrows: usize, ncols: usize, nnz: usize, seed: u64) -> Csr {
        // Tiny deterministic LCG; values in 1..=9 so nothing cancels to zero.
        let mut state = seed.wrapping_mul(2862933555777941757).wrapping_add(1);
        let mut next = move || {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            state >> 33
        };
        let mut rows = Vec::new();
        let mut cols = Vec::new();
        let mut vals = Vec::new();
        for _ in 0..nnz {
            rows.push(next() as usize % nrows);
            cols.push(next() as usize % ncols);
            vals.push((next() % 9 + 1) as f64);
        }
        let m = SparseMatrix::from_triples(nrows, ncols, &rows, &cols, &vals, DupRule::Sum).unwrap();
        m.csr_view().into_owned()
    }

    #[test]
    fn parallel_lanes_match_sequential_bit_for_bit() {
        // Large enough that the dispatcher would pick the parallel lane.
        let a = random_csr(500, 400, 20_000, 7);
        let b = random_csr(500, 400, 20_000, 11);
        assert_eq!(csr_add_seq(&a, &b), csr_add(&a, &b));
        assert_eq!(csr_ewise_seq(&a, &b), csr_ewise(&a, &b));

        let c = random_csr(300, 250, 9_000, 13);
        let d = random_csr(250, 310, 9_000, 17);
        for ring in [plus_times(), max_plus()] {
            assert_eq!(
                csr_matmul_seq(&c, &d, &ring),
                csr_matmul(&c, &d, &ring),
                "{} product diverged",
                ring.name()
            );
        }

        #[cfg(feature = "parallel")]
        {
            assert_eq!(csr_add_seq(&a, &b), csr_add_par(&a, &b));
            assert_eq!(csr_ewise_seq(&a, &b), csr_ewise_par(&a, &b));
            let ring = plus_times();
            assert_eq!(csr_matmul_seq(&c, &d, &ring), csr_matmul_par(&c, &d, &ring));
        }
    }
}
