//! Direct handles on the sequential and parallel kernel lanes.
//!
//! Public operations pick a lane by input size; the benchmark suite needs to
//! pin one lane regardless of size to compare the two. Hidden from docs
//! because nothing else should bypass the dispatchers.

use crate::key::Key;
use crate::semiring::Semiring;
use crate::sorted_sets;
use crate::sparse::{kernels, SparseMatrix};

pub fn add_seq(a: &SparseMatrix, b: &SparseMatrix) -> SparseMatrix {
    SparseMatrix::Csr(kernels::csr_add_seq(&a.csr_view(), &b.csr_view()))
}

pub fn ewise_seq(a: &SparseMatrix, b: &SparseMatrix) -> SparseMatrix {
    SparseMatrix::Csr(kernels::csr_ewise_seq(&a.csr_view(), &b.csr_view()))
}

pub fn matmul_seq(a: &SparseMatrix, b: &SparseMatrix, ring: &Semiring<f64>) -> SparseMatrix {
    SparseMatrix::Csr(kernels::csr_matmul_seq(&a.csr_view(), &b.csr_view(), ring))
}

pub fn unique_keys_seq(keys: &[Key]) -> (Vec<Key>, Vec<usize>) {
    sorted_sets::sorted_unique_seq(keys)
}

#[cfg(feature = "parallel")]
pub fn add_par(a: &SparseMatrix, b: &SparseMatrix) -> SparseMatrix {
    SparseMatrix::Csr(kernels::csr_add_par(&a.csr_view(), &b.csr_view()))
}

#[cfg(feature = "parallel")]
pub fn ewise_par(a: &SparseMatrix, b: &SparseMatrix) -> SparseMatrix {
    SparseMatrix::Csr(kernels::csr_ewise_par(&a.csr_view(), &b.csr_view()))
}

#[cfg(feature = "parallel")]
pub fn matmul_par(a: &SparseMatrix, b: &SparseMatrix, ring: &Semiring<f64>) -> SparseMatrix {
    SparseMatrix::Csr(kernels::csr_matmul_par(&a.csr_view(), &b.csr_view(), ring))
}

#[cfg(feature = "parallel")]
pub fn unique_keys_par(keys: &[Key]) -> (Vec<Key>, Vec<usize>) {
    sorted_sets::sorted_unique_par(keys)
}
