//! Sparse matrix backend: COO/CSR/CSC layouts over `f64` entries, with
//! canonical storage and the kernels the array layer builds on.
//!
//! Canonical form is unique per layout: entries sorted row-major (column-major
//! for CSC), no duplicate coordinates, no explicitly stored zeros. Every
//! constructor and operation returns canonical matrices, so two equal logical
//! matrices in the same layout compare equal array-for-array.

pub(crate) mod kernels;

use std::borrow::Cow;

use crate::error::{Error, Result};
use crate::semiring::Semiring;

/// Storage layout tag.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Layout {
    Coo,
    Csr,
    Csc,
}

/// How duplicate coordinates fold during construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DupRule {
    Sum,
    Last,
    Min,
    Max,
}

impl DupRule {
    fn apply(self, acc: f64, x: f64) -> f64 {
        match self {
            DupRule::Sum => acc + x,
            DupRule::Last => x,
            DupRule::Min => acc.min(x),
            DupRule::Max => acc.max(x),
        }
    }
}

/// Coordinate layout: parallel row/col/data arrays, sorted row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct Coo {
    pub(crate) nrows: usize,
    pub(crate) ncols: usize,
    pub(crate) rows: Vec<usize>,
    pub(crate) cols: Vec<usize>,
    pub(crate) data: Vec<f64>,
}

/// Compressed sparse row layout.
#[derive(Clone, Debug, PartialEq)]
pub struct Csr {
    pub(crate) nrows: usize,
    pub(crate) ncols: usize,
    pub(crate) indptr: Vec<usize>,
    pub(crate) cols: Vec<usize>,
    pub(crate) data: Vec<f64>,
}

/// Compressed sparse column layout.
#[derive(Clone, Debug, PartialEq)]
pub struct Csc {
    pub(crate) nrows: usize,
    pub(crate) ncols: usize,
    pub(crate) indptr: Vec<usize>,
    pub(crate) rows: Vec<usize>,
    pub(crate) data: Vec<f64>,
}

impl Coo {
    pub fn nnz(&self) -> usize {
        self.data.len()
    }

    fn to_csr(&self) -> Csr {
        let mut indptr = vec![0usize; self.nrows + 1];
        for &r in &self.rows {
            indptr[r + 1] += 1;
        }
        for i in 0..self.nrows {
            indptr[i + 1] += indptr[i];
        }
        Csr {
            nrows: self.nrows,
            ncols: self.ncols,
            indptr,
            cols: self.cols.clone(),
            data: self.data.clone(),
        }
    }
}

impl Csr {
    pub fn nnz(&self) -> usize {
        self.data.len()
    }

    /// Column indices and values of row `i`.
    pub(crate) fn row(&self, i: usize) -> (&[usize], &[f64]) {
        let span = self.indptr[i]..self.indptr[i + 1];
        (&self.cols[span.clone()], &self.data[span])
    }

    /// Build from strictly (row, col)-sorted, duplicate-free, zero-free
    /// entries.
    pub(crate) fn from_canonical_entries(
        nrows: usize,
        ncols: usize,
        rows: &[usize],
        cols: Vec<usize>,
        data: Vec<f64>,
    ) -> Csr {
        debug_assert_eq!(rows.len(), cols.len());
        debug_assert_eq!(rows.len(), data.len());
        let mut indptr = vec![0usize; nrows + 1];
        for &r in rows {
            indptr[r + 1] += 1;
        }
        for i in 0..nrows {
            indptr[i + 1] += indptr[i];
        }
        Csr {
            nrows,
            ncols,
            indptr,
            cols,
            data,
        }
    }

    fn to_coo(&self) -> Coo {
        let mut rows = Vec::with_capacity(self.nnz());
        for i in 0..self.nrows {
            rows.extend(std::iter::repeat(i).take(self.indptr[i + 1] - self.indptr[i]));
        }
        Coo {
            nrows: self.nrows,
            ncols: self.ncols,
            rows,
            cols: self.cols.clone(),
            data: self.data.clone(),
        }
    }

    /// CSR of the transposed matrix, by column histogram and stable scatter.
    fn transpose(&self) -> Csr {
        let mut indptr = vec![0usize; self.ncols + 1];
        for &c in &self.cols {
            indptr[c + 1] += 1;
        }
        for c in 0..self.ncols {
            indptr[c + 1] += indptr[c];
        }
        let mut next: Vec<usize> = indptr[..self.ncols].to_vec();
        let mut cols = vec![0usize; self.nnz()];
        let mut data = vec![0.0f64; self.nnz()];
        for i in 0..self.nrows {
            let (rc, rd) = self.row(i);
            for (&j, &v) in rc.iter().zip(rd) {
                let slot = next[j];
                next[j] += 1;
                cols[slot] = i;
                data[slot] = v;
            }
        }
        Csr {
            nrows: self.ncols,
            ncols: self.nrows,
            indptr,
            cols,
            data,
        }
    }

    fn to_csc(&self) -> Csc {
        let t = self.transpose();
        Csc {
            nrows: self.nrows,
            ncols: self.ncols,
            indptr: t.indptr,
            rows: t.cols,
            data: t.data,
        }
    }

    pub(crate) fn has_explicit_zeros(&self) -> bool {
        self.data.iter().any(|&v| v == 0.0)
    }

    pub(crate) fn without_explicit_zeros(&self) -> Csr {
        let mut indptr = Vec::with_capacity(self.nrows + 1);
        indptr.push(0);
        let mut cols = Vec::with_capacity(self.nnz());
        let mut data = Vec::with_capacity(self.nnz());
        for i in 0..self.nrows {
            let (rc, rd) = self.row(i);
            for (&c, &v) in rc.iter().zip(rd) {
                if v != 0.0 {
                    cols.push(c);
                    data.push(v);
                }
            }
            indptr.push(cols.len());
        }
        Csr {
            nrows: self.nrows,
            ncols: self.ncols,
            indptr,
            cols,
            data,
        }
    }
}

impl Csc {
    pub fn nnz(&self) -> usize {
        self.data.len()
    }

    fn to_csr(&self) -> Csr {
        // A CSC is the CSR of its transpose; transposing that recovers the
        // original in row-major form.
        Csr {
            nrows: self.ncols,
            ncols: self.nrows,
            indptr: self.indptr.clone(),
            cols: self.rows.clone(),
            data: self.data.clone(),
        }
        .transpose()
    }
}

/// A sparse matrix in one of three layouts. Structural equality: two matrices
/// compare equal when layout, shape, and canonical arrays all match.
#[derive(Clone, Debug, PartialEq)]
pub enum SparseMatrix {
    Coo(Coo),
    Csr(Csr),
    Csc(Csc),
}

/// Triples above this count sort in parallel during construction.
#[cfg(feature = "parallel")]
const PAR_TRIPLE_MIN: usize = 1 << 12;

impl SparseMatrix {
    /// All-zero matrix (no stored entries), COO layout.
    pub fn zeros(nrows: usize, ncols: usize) -> SparseMatrix {
        SparseMatrix::Coo(Coo {
            nrows,
            ncols,
            rows: Vec::new(),
            cols: Vec::new(),
            data: Vec::new(),
        })
    }

    /// Identity matrix, COO layout.
    pub fn identity(n: usize) -> SparseMatrix {
        SparseMatrix::Coo(Coo {
            nrows: n,
            ncols: n,
            rows: (0..n).collect(),
            cols: (0..n).collect(),
            data: vec![1.0; n],
        })
    }

    /// Canonical COO from unordered triples: duplicates fold per `dup`
    /// (in input order), zeros are pruned.
    pub fn from_triples(
        nrows: usize,
        ncols: usize,
        rows: &[usize],
        cols: &[usize],
        vals: &[f64],
        dup: DupRule,
    ) -> Result<SparseMatrix> {
        if rows.len() != cols.len() || rows.len() != vals.len() {
            return Err(Error::LengthMismatch(vec![
                rows.len(),
                cols.len(),
                vals.len(),
            ]));
        }
        for &r in rows {
            if r >= nrows {
                return Err(Error::IndexOutOfRange {
                    axis: "row",
                    index: r,
                    len: nrows,
                });
            }
        }
        for &c in cols {
            if c >= ncols {
                return Err(Error::IndexOutOfRange {
                    axis: "column",
                    index: c,
                    len: ncols,
                });
            }
        }

        // Sort coordinates with the input position as tie-break, so folding a
        // run visits duplicates in input order.
        let mut order: Vec<(usize, usize, u32)> = rows
            .iter()
            .zip(cols)
            .enumerate()
            .map(|(t, (&r, &c))| (r, c, t as u32))
            .collect();
        sort_triples(&mut order);

        let mut out_rows = Vec::with_capacity(order.len());
        let mut out_cols = Vec::with_capacity(order.len());
        let mut out_data = Vec::with_capacity(order.len());
        let mut iter = order.iter().peekable();
        while let Some(&(r, c, t)) = iter.next() {
            let mut acc = vals[t as usize];
            while let Some(&&(r2, c2, t2)) = iter.peek() {
                if r2 != r || c2 != c {
                    break;
                }
                acc = dup.apply(acc, vals[t2 as usize]);
                iter.next();
            }
            if acc != 0.0 {
                out_rows.push(r);
                out_cols.push(c);
                out_data.push(acc);
            }
        }

        Ok(SparseMatrix::Coo(Coo {
            nrows,
            ncols,
            rows: out_rows,
            cols: out_cols,
            data: out_data,
        }))
    }

    pub fn nrows(&self) -> usize {
        match self {
            SparseMatrix::Coo(m) => m.nrows,
            SparseMatrix::Csr(m) => m.nrows,
            SparseMatrix::Csc(m) => m.nrows,
        }
    }

    pub fn ncols(&self) -> usize {
        match self {
            SparseMatrix::Coo(m) => m.ncols,
            SparseMatrix::Csr(m) => m.ncols,
            SparseMatrix::Csc(m) => m.ncols,
        }
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.nrows(), self.ncols())
    }

    pub fn nnz(&self) -> usize {
        match self {
            SparseMatrix::Coo(m) => m.nnz(),
            SparseMatrix::Csr(m) => m.nnz(),
            SparseMatrix::Csc(m) => m.nnz(),
        }
    }

    pub fn layout(&self) -> Layout {
        match self {
            SparseMatrix::Coo(_) => Layout::Coo,
            SparseMatrix::Csr(_) => Layout::Csr,
            SparseMatrix::Csc(_) => Layout::Csc,
        }
    }

    /// Convert to the requested layout (clone when already there).
    pub fn convert(&self, layout: Layout) -> SparseMatrix {
        match (self, layout) {
            (SparseMatrix::Coo(m), Layout::Coo) => SparseMatrix::Coo(m.clone()),
            (SparseMatrix::Coo(m), Layout::Csr) => SparseMatrix::Csr(m.to_csr()),
            (SparseMatrix::Coo(m), Layout::Csc) => SparseMatrix::Csc(m.to_csr().to_csc()),
            (SparseMatrix::Csr(m), Layout::Coo) => SparseMatrix::Coo(m.to_coo()),
            (SparseMatrix::Csr(m), Layout::Csr) => SparseMatrix::Csr(m.clone()),
            (SparseMatrix::Csr(m), Layout::Csc) => SparseMatrix::Csc(m.to_csc()),
            (SparseMatrix::Csc(m), Layout::Coo) => SparseMatrix::Coo(m.to_csr().to_coo()),
            (SparseMatrix::Csc(m), Layout::Csr) => SparseMatrix::Csr(m.to_csr()),
            (SparseMatrix::Csc(m), Layout::Csc) => SparseMatrix::Csc(m.clone()),
        }
    }

    /// Borrow as CSR, converting if stored otherwise.
    pub(crate) fn csr_view(&self) -> Cow<'_, Csr> {
        match self {
            SparseMatrix::Csr(m) => Cow::Borrowed(m),
            SparseMatrix::Coo(m) => Cow::Owned(m.to_csr()),
            SparseMatrix::Csc(m) => Cow::Owned(m.to_csr()),
        }
    }

    /// Entrywise sum; shared entries that cancel to exactly zero are pruned.
    /// Result is CSR.
    pub fn add(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        if self.shape() != other.shape() {
            return Err(Error::ShapeMismatch {
                op: "add",
                lhs: self.shape(),
                rhs: other.shape(),
            });
        }
        Ok(SparseMatrix::Csr(kernels::csr_add(
            &self.csr_view(),
            &other.csr_view(),
        )))
    }

    /// Entrywise (Hadamard) product on the intersection of supports; products
    /// that underflow to exactly zero are pruned. Result is CSR.
    pub fn elementwise_multiply(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        if self.shape() != other.shape() {
            return Err(Error::ShapeMismatch {
                op: "elementwise_multiply",
                lhs: self.shape(),
                rhs: other.shape(),
            });
        }
        Ok(SparseMatrix::Csr(kernels::csr_ewise(
            &self.csr_view(),
            &other.csr_view(),
        )))
    }

    /// Semiring matrix product `self ⊗.⊕ other`; with `plus_times` this is
    /// the ordinary sparse product. Entries equal to the ring zero are
    /// pruned. Result is CSR.
    pub fn matmul(&self, other: &SparseMatrix, ring: &Semiring<f64>) -> Result<SparseMatrix> {
        if self.ncols() != other.nrows() {
            return Err(Error::InnerDimMismatch {
                lhs: self.shape(),
                rhs: other.shape(),
            });
        }
        Ok(SparseMatrix::Csr(kernels::csr_matmul(
            &self.csr_view(),
            &other.csr_view(),
            ring,
        )))
    }

    /// Transpose. Result is CSR.
    pub fn transpose(&self) -> SparseMatrix {
        SparseMatrix::Csr(self.csr_view().transpose())
    }

    /// Submatrix on the given row/column indices (`None` keeps an axis
    /// whole). Indices must be strictly increasing and in range. Result is
    /// CSR.
    pub fn select(&self, rows: Option<&[usize]>, cols: Option<&[usize]>) -> Result<SparseMatrix> {
        let m = self.csr_view();
        check_index_list(rows, m.nrows, "row")?;
        check_index_list(cols, m.ncols, "column")?;

        let col_map: Option<Vec<usize>> = cols.map(|sel| {
            let mut map = vec![usize::MAX; m.ncols];
            for (ni, &oi) in sel.iter().enumerate() {
                map[oi] = ni;
            }
            map
        });

        let out_nrows = rows.map_or(m.nrows, <[usize]>::len);
        let out_ncols = cols.map_or(m.ncols, <[usize]>::len);
        let mut indptr = Vec::with_capacity(out_nrows + 1);
        indptr.push(0);
        let mut out_cols = Vec::new();
        let mut out_data = Vec::new();
        let mut push_row = |i: usize| {
            let (rc, rd) = m.row(i);
            match &col_map {
                None => {
                    out_cols.extend_from_slice(rc);
                    out_data.extend_from_slice(rd);
                }
                Some(map) => {
                    for (&c, &v) in rc.iter().zip(rd) {
                        if map[c] != usize::MAX {
                            out_cols.push(map[c]);
                            out_data.push(v);
                        }
                    }
                }
            }
            out_cols.len()
        };
        match rows {
            None => {
                for i in 0..m.nrows {
                    let end = push_row(i);
                    indptr.push(end);
                }
            }
            Some(sel) => {
                for &i in sel {
                    let end = push_row(i);
                    indptr.push(end);
                }
            }
        }

        Ok(SparseMatrix::Csr(Csr {
            nrows: out_nrows,
            ncols: out_ncols,
            indptr,
            cols: out_cols,
            data: out_data,
        }))
    }

    /// Place this matrix into a larger zero matrix: source row `i` lands at
    /// `row_targets[i]`, column `j` at `col_targets[j]`. Targets must be
    /// strictly increasing and in range of the new shape. Result is CSR.
    pub fn scatter(
        &self,
        nrows: usize,
        ncols: usize,
        row_targets: &[usize],
        col_targets: &[usize],
    ) -> Result<SparseMatrix> {
        let m = self.csr_view();
        if row_targets.len() != m.nrows || col_targets.len() != m.ncols {
            return Err(Error::LengthMismatch(vec![
                row_targets.len(),
                m.nrows,
                col_targets.len(),
                m.ncols,
            ]));
        }
        check_index_list(Some(row_targets), nrows, "row")?;
        check_index_list(Some(col_targets), ncols, "column")?;

        // Row order and within-row column order survive a strictly increasing
        // relabeling, so the entry arrays map through directly.
        let mut indptr = vec![0usize; nrows + 1];
        for (i, &target) in row_targets.iter().enumerate() {
            indptr[target + 1] = m.indptr[i + 1] - m.indptr[i];
        }
        for r in 0..nrows {
            indptr[r + 1] += indptr[r];
        }
        Ok(SparseMatrix::Csr(Csr {
            nrows,
            ncols,
            indptr,
            cols: m.cols.iter().map(|&c| col_targets[c]).collect(),
            data: m.data.clone(),
        }))
    }

    /// Per-axis masks of rows/columns that hold at least one stored entry:
    /// rows from adjacent differences of the CSR row pointer, columns from
    /// the CSC column pointer (built as a column histogram).
    pub fn nonempty_rows_cols(&self) -> (Vec<bool>, Vec<bool>) {
        let m = self.csr_view();
        let row_mask = (0..m.nrows)
            .map(|i| m.indptr[i + 1] > m.indptr[i])
            .collect();
        let mut col_counts = vec![0usize; m.ncols];
        for &c in &m.cols {
            col_counts[c] += 1;
        }
        (row_mask, col_counts.into_iter().map(|n| n > 0).collect())
    }

    /// Stored entries in row-major order.
    pub fn triples(&self) -> Vec<(usize, usize, f64)> {
        let m = self.csr_view();
        let mut out = Vec::with_capacity(m.nnz());
        for i in 0..m.nrows {
            let (rc, rd) = m.row(i);
            for (&c, &v) in rc.iter().zip(rd) {
                out.push((i, c, v));
            }
        }
        out
    }

    /// Stored value at (i, j), if any.
    pub fn get(&self, i: usize, j: usize) -> Option<f64> {
        if i >= self.nrows() || j >= self.ncols() {
            return None;
        }
        let m = self.csr_view();
        let (rc, rd) = m.row(i);
        rc.binary_search(&j).ok().map(|k| rd[k])
    }

    /// Same pattern, every stored value replaced by 1.0.
    pub(crate) fn unit_data(&self) -> SparseMatrix {
        match self {
            SparseMatrix::Coo(m) => SparseMatrix::Coo(Coo {
                data: vec![1.0; m.nnz()],
                ..m.clone()
            }),
            SparseMatrix::Csr(m) => SparseMatrix::Csr(Csr {
                data: vec![1.0; m.nnz()],
                ..m.clone()
            }),
            SparseMatrix::Csc(m) => SparseMatrix::Csc(Csc {
                data: vec![1.0; m.nnz()],
                ..m.clone()
            }),
        }
    }

    /// Check canonical form: monotone pointers, in-range strictly increasing
    /// indices, no explicit zeros.
    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::Invariant(msg));
        match self {
            SparseMatrix::Coo(m) => {
                if m.rows.len() != m.cols.len() || m.rows.len() != m.data.len() {
                    return fail("coo arrays disagree in length".into());
                }
                for (&r, &c) in m.rows.iter().zip(&m.cols) {
                    if r >= m.nrows || c >= m.ncols {
                        return fail(format!("coo entry ({r}, {c}) outside {:?}", self.shape()));
                    }
                }
                let coords: Vec<(usize, usize)> =
                    m.rows.iter().zip(&m.cols).map(|(&r, &c)| (r, c)).collect();
                if !coords.windows(2).all(|w| w[0] < w[1]) {
                    return fail("coo entries not strictly row-major sorted".into());
                }
            }
            SparseMatrix::Csr(m) => validate_compressed(m.nrows, m.ncols, &m.indptr, &m.cols)?,
            SparseMatrix::Csc(m) => validate_compressed(m.ncols, m.nrows, &m.indptr, &m.rows)?,
        }
        let data = match self {
            SparseMatrix::Coo(m) => &m.data,
            SparseMatrix::Csr(m) => &m.data,
            SparseMatrix::Csc(m) => &m.data,
        };
        if data.iter().any(|&v| v == 0.0) {
            return fail("explicitly stored zero".into());
        }
        Ok(())
    }
}

fn validate_compressed(
    nmajor: usize,
    nminor: usize,
    indptr: &[usize],
    indices: &[usize],
) -> Result<()> {
    let fail = |msg: String| Err(Error::Invariant(msg));
    if indptr.len() != nmajor + 1 || indptr.first() != Some(&0) {
        return fail("index pointer has wrong length or start".into());
    }
    if indptr.windows(2).any(|w| w[0] > w[1]) || *indptr.last().unwrap() != indices.len() {
        return fail("index pointer not monotone over the entry count".into());
    }
    for major in 0..nmajor {
        let span = &indices[indptr[major]..indptr[major + 1]];
        if !span.windows(2).all(|w| w[0] < w[1]) {
            return fail(format!("indices of line {major} not strictly increasing"));
        }
        if span.last().is_some_and(|&ix| ix >= nminor) {
            return fail(format!("index out of range in line {major}"));
        }
    }
    Ok(())
}

fn check_index_list(list: Option<&[usize]>, len: usize, axis: &'static str) -> Result<()> {
    let Some(list) = list else { return Ok(()) };
    if !list.windows(2).all(|w| w[0] < w[1]) {
        return Err(Error::NotStrictlyIncreasing { axis });
    }
    if let Some(&last) = list.last() {
        if last >= len {
            return Err(Error::IndexOutOfRange {
                axis,
                index: last,
                len,
            });
        }
    }
    Ok(())
}

fn sort_triples(order: &mut [(usize, usize, u32)]) {
    #[cfg(feature = "parallel")]
    if order.len() >= PAR_TRIPLE_MIN {
        use rayon::prelude::*;
        order.par_sort_unstable();
        return;
    }
    order.sort_unstable();
}
