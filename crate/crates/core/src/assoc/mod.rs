//! Associative arrays: sparse matrices addressed by sorted row and column
//! keys instead of integer offsets.
//!
//! An [`Assoc`] holds four parts: a sorted, duplicate-free vector of row
//! keys; the same for column keys; a value pool; and a sparse adjacency
//! matrix whose entry at (i, j) carries the value bound to
//! `(row_keys[i], col_keys[j])`. Numeric arrays store values directly in the
//! matrix; string arrays store 1-based indices into a sorted pool of unique
//! strings, so the matrix stays `f64` either way.
//!
//! Arrays are kept *condensed*: every row key and column key has at least one
//! stored entry, every pool string is referenced at least once, and the empty
//! values — `0.0` for numeric arrays, `""` for string arrays — are never
//! stored. Operations that can strand keys or pool entries (selection,
//! cancellation, products) re-condense on the way out, so equal arrays always
//! have equal parts.

mod algebra;
mod select;

pub use select::Selector;

use std::fmt;

use crate::error::{Error, Result};
use crate::key::{Key, Value, ValueKind, ValueOp};
use crate::sorted_sets::sorted_unique;
use crate::sparse::{Csr, DupRule, SparseMatrix};

/// Value storage for one array.
///
/// `Num` arrays keep values in the adjacency matrix itself. `Str` arrays keep
/// a sorted vector of unique, non-empty strings and store 1-based positions
/// into it, so that pointer order mirrors dictionary order and `0.0` stays
/// free to mean "no entry".
#[derive(Clone, Debug, PartialEq)]
pub enum ValuePool {
    Num,
    Str(Vec<String>),
}

impl ValuePool {
    pub fn kind(&self) -> ValueKind {
        match self {
            ValuePool::Num => ValueKind::Num,
            ValuePool::Str(_) => ValueKind::Str,
        }
    }

    /// The sorted string pool, for string-valued arrays.
    pub fn strings(&self) -> Option<&[String]> {
        match self {
            ValuePool::Num => None,
            ValuePool::Str(pool) => Some(pool),
        }
    }

    /// Decode one stored matrix entry.
    pub(crate) fn value_of(&self, stored: f64) -> Value {
        match self {
            ValuePool::Num => Value::Num(stored),
            ValuePool::Str(pool) => Value::Str(pool[stored as usize - 1].clone()),
        }
    }

    /// The value meaning "no entry" for this pool's kind.
    fn empty_value(&self) -> Value {
        match self {
            ValuePool::Num => Value::Num(0.0),
            ValuePool::Str(_) => Value::Str(String::new()),
        }
    }
}

/// A two-dimensional associative array. See the module docs for the layout.
///
/// The adjacency matrix is always held in row-compressed form, so equality
/// of two arrays is plain structural equality of their four parts.
#[derive(Clone, Debug, PartialEq)]
pub struct Assoc {
    pub(crate) row: Vec<Key>,
    pub(crate) col: Vec<Key>,
    pub(crate) val: ValuePool,
    pub(crate) adj: SparseMatrix,
}

impl Assoc {
    /// The 0×0 array. Empty arrays are value-kind-neutral; they report as
    /// numeric and combine with arrays of either kind.
    pub fn empty() -> Assoc {
        Assoc {
            row: Vec::new(),
            col: Vec::new(),
            val: ValuePool::Num,
            adj: SparseMatrix::zeros(0, 0).convert(crate::sparse::Layout::Csr),
        }
    }

    /// Build from parallel triple slices, folding colliding triples with
    /// [`ValueOp::Min`] — the least value (numeric or dictionary) wins.
    pub fn from_triples(rows: &[Key], cols: &[Key], vals: &[Value]) -> Result<Assoc> {
        Assoc::from_triples_with(rows, cols, vals, ValueOp::Min)
    }

    /// Build from parallel triple slices with an explicit collision fold.
    ///
    /// Any of the three slices may hold a single element, which broadcasts
    /// against the others. Values must be all-numeric or all-string. Empty
    /// values (`0.0`, `""`) are dropped before anything else happens; a
    /// colliding run folds in input order.
    pub fn from_triples_with(
        rows: &[Key],
        cols: &[Key],
        vals: &[Value],
        op: ValueOp,
    ) -> Result<Assoc> {
        let n = rows.len().max(cols.len()).max(vals.len());
        for len in [rows.len(), cols.len(), vals.len()] {
            if len != n && len != 1 {
                return Err(Error::LengthMismatch(vec![
                    rows.len(),
                    cols.len(),
                    vals.len(),
                ]));
            }
        }
        if n == 0 {
            return Ok(Assoc::empty());
        }
        let kind = vals[0].kind();
        if vals.iter().any(|v| v.kind() != kind) {
            return Err(Error::MixedValues);
        }

        let pick = |slice: &'_ [Key], t: usize| {
            if slice.len() == 1 {
                slice[0].clone()
            } else {
                slice[t].clone()
            }
        };
        let val_at = |t: usize| if vals.len() == 1 { &vals[0] } else { &vals[t] };

        let kept: Vec<usize> = (0..n).filter(|&t| !val_at(t).is_empty()).collect();
        if kept.is_empty() {
            return Ok(Assoc::empty());
        }
        let kept_rows: Vec<Key> = kept.iter().map(|&t| pick(rows, t)).collect();
        let kept_cols: Vec<Key> = kept.iter().map(|&t| pick(cols, t)).collect();
        let (row_axis, row_pos) = sorted_unique(&kept_rows);
        let (col_axis, col_pos) = sorted_unique(&kept_cols);

        match kind {
            ValueKind::Num => {
                let nums: Vec<f64> = kept
                    .iter()
                    .map(|&t| val_at(t).as_num().unwrap())
                    .collect();
                let dup = match op {
                    ValueOp::Min => DupRule::Min,
                    ValueOp::Max => DupRule::Max,
                    ValueOp::Sum => DupRule::Sum,
                    ValueOp::Last => DupRule::Last,
                };
                let m = SparseMatrix::from_triples(
                    row_axis.len(),
                    col_axis.len(),
                    &row_pos,
                    &col_pos,
                    &nums,
                    dup,
                )?;
                Ok(Assoc::condense(row_axis, col_axis, ValuePool::Num, m))
            }
            ValueKind::Str => {
                // Group colliding coordinates, keeping input order inside a
                // run so order-sensitive folds (concatenation, last-wins)
                // see triples as given.
                let mut order: Vec<(usize, usize, u32)> = kept
                    .iter()
                    .enumerate()
                    .map(|(k, _)| (row_pos[k], col_pos[k], k as u32))
                    .collect();
                order.sort_unstable();

                let mut ent_rows = Vec::with_capacity(order.len());
                let mut ent_cols = Vec::with_capacity(order.len());
                let mut folded = Vec::with_capacity(order.len());
                let mut iter = order.iter().peekable();
                while let Some(&(r, c, k)) = iter.next() {
                    let mut acc = val_at(kept[k as usize]).as_str().unwrap().to_owned();
                    while let Some(&&(r2, c2, k2)) = iter.peek() {
                        if r2 != r || c2 != c {
                            break;
                        }
                        op.fold_str(&mut acc, val_at(kept[k2 as usize]).as_str().unwrap());
                        iter.next();
                    }
                    ent_rows.push(r);
                    ent_cols.push(c);
                    folded.push(acc);
                }

                let (pool, pool_pos) = sorted_unique(&folded);
                let data: Vec<f64> = pool_pos.iter().map(|&p| (p + 1) as f64).collect();
                let m = Csr::from_canonical_entries(
                    row_axis.len(),
                    col_axis.len(),
                    &ent_rows,
                    ent_cols,
                    data,
                );
                Ok(Assoc::condense(
                    row_axis,
                    col_axis,
                    ValuePool::Str(pool),
                    SparseMatrix::Csr(m),
                ))
            }
        }
    }

    /// Assemble from already-built parts: sorted key vectors, a value pool,
    /// and an adjacency matrix.
    ///
    /// Key vectors may be longer than the matrix — extras past the matrix
    /// shape are cut off — but never shorter, and must be strictly
    /// increasing. For a string pool, every stored matrix entry must be an
    /// integral pointer into it (1-based). The result is condensed, so
    /// explicit `0.0` entries, key rows the matrix never touches, and
    /// unreferenced pool strings all drop out.
    pub fn from_adjacency(
        mut rows: Vec<Key>,
        mut cols: Vec<Key>,
        vals: ValuePool,
        adj: SparseMatrix,
    ) -> Result<Assoc> {
        if rows.len() < adj.nrows() {
            return Err(Error::TooFewKeys {
                axis: "row",
                have: rows.len(),
                need: adj.nrows(),
            });
        }
        if cols.len() < adj.ncols() {
            return Err(Error::TooFewKeys {
                axis: "column",
                have: cols.len(),
                need: adj.ncols(),
            });
        }
        rows.truncate(adj.nrows());
        cols.truncate(adj.ncols());
        if !rows.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::NotStrictlyIncreasing { axis: "row" });
        }
        if !cols.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::NotStrictlyIncreasing { axis: "column" });
        }
        if let ValuePool::Str(pool) = &vals {
            if !pool.windows(2).all(|w| w[0] < w[1]) || pool.iter().any(|s| s.is_empty()) {
                return Err(Error::Invariant(
                    "string pool must be sorted, unique, and free of empty strings".into(),
                ));
            }
            for (_, _, v) in adj.triples() {
                if v.fract() != 0.0 || v < 1.0 || v > pool.len() as f64 {
                    return Err(Error::BadPoolPointer {
                        value: v,
                        pool: pool.len(),
                    });
                }
            }
        }
        Ok(Assoc::condense(rows, cols, vals, adj))
    }

    /// Restore the condensed invariants around an adjacency matrix: strip
    /// explicit `0.0` entries, drop pool strings nothing points at anymore
    /// (renumbering the pointers), and drop keys whose row or column went
    /// empty.
    pub(crate) fn condense(
        row: Vec<Key>,
        col: Vec<Key>,
        val: ValuePool,
        adj: SparseMatrix,
    ) -> Assoc {
        let csr = adj.csr_view();
        let mut csr = if csr.has_explicit_zeros() {
            csr.without_explicit_zeros()
        } else {
            csr.into_owned()
        };
        if csr.nnz() == 0 {
            return Assoc::empty();
        }

        let val = match val {
            ValuePool::Num => ValuePool::Num,
            ValuePool::Str(pool) => {
                let mut used = vec![false; pool.len()];
                for &v in &csr.data {
                    used[v as usize - 1] = true;
                }
                if used.iter().all(|&u| u) {
                    ValuePool::Str(pool)
                } else {
                    let mut renumber = vec![0.0f64; pool.len()];
                    let mut kept = Vec::new();
                    for (k, s) in pool.into_iter().enumerate() {
                        if used[k] {
                            kept.push(s);
                            renumber[k] = kept.len() as f64;
                        }
                    }
                    for v in &mut csr.data {
                        *v = renumber[*v as usize - 1];
                    }
                    ValuePool::Str(kept)
                }
            }
        };

        let adj = SparseMatrix::Csr(csr);
        let (row_mask, col_mask) = adj.nonempty_rows_cols();
        if row_mask.iter().all(|&m| m) && col_mask.iter().all(|&m| m) {
            return Assoc { row, col, val, adj };
        }
        let keep = |mask: &[bool]| -> Vec<usize> {
            mask.iter()
                .enumerate()
                .filter_map(|(i, &m)| m.then_some(i))
                .collect()
        };
        let keep_rows = keep(&row_mask);
        let keep_cols = keep(&col_mask);
        let adj = adj
            .select(Some(&keep_rows), Some(&keep_cols))
            .expect("nonempty masks index in range");
        Assoc {
            row: keep_rows.into_iter().map(|i| row[i].clone()).collect(),
            col: keep_cols.into_iter().map(|j| col[j].clone()).collect(),
            val,
            adj,
        }
    }

    /// Sorted row keys.
    pub fn row_keys(&self) -> &[Key] {
        &self.row
    }

    /// Sorted column keys.
    pub fn col_keys(&self) -> &[Key] {
        &self.col
    }

    pub fn value_pool(&self) -> &ValuePool {
        &self.val
    }

    /// The underlying sparse matrix of stored values (numeric arrays) or
    /// 1-based pool pointers (string arrays).
    pub fn adjacency(&self) -> &SparseMatrix {
        &self.adj
    }

    pub fn value_kind(&self) -> ValueKind {
        self.val.kind()
    }

    /// (row key count, column key count).
    pub fn size(&self) -> (usize, usize) {
        (self.row.len(), self.col.len())
    }

    /// Number of stored entries.
    pub fn nnz(&self) -> usize {
        self.adj.nnz()
    }

    pub fn is_empty(&self) -> bool {
        self.adj.nnz() == 0
    }

    /// Stored entries as (row key, column key, value), row-major.
    pub fn triples(&self) -> Vec<(Key, Key, Value)> {
        self.adj
            .triples()
            .into_iter()
            .map(|(i, j, v)| {
                (
                    self.row[i].clone(),
                    self.col[j].clone(),
                    self.val.value_of(v),
                )
            })
            .collect()
    }

    /// The value at one key pair; the kind's empty value when absent.
    pub fn get_value(&self, row: &Key, col: &Key) -> Value {
        let Ok(i) = self.row.binary_search(row) else {
            return self.val.empty_value();
        };
        let Ok(j) = self.col.binary_search(col) else {
            return self.val.empty_value();
        };
        match self.adj.get(i, j) {
            Some(v) => self.val.value_of(v),
            None => self.val.empty_value(),
        }
    }

    /// Same pattern with every value replaced by numeric `1.0`.
    pub fn logical(&self) -> Assoc {
        Assoc {
            row: self.row.clone(),
            col: self.col.clone(),
            val: ValuePool::Num,
            adj: self.adj.unit_data(),
        }
    }

    /// Swap the axes.
    pub fn transpose(&self) -> Assoc {
        Assoc {
            row: self.col.clone(),
            col: self.row.clone(),
            val: self.val.clone(),
            adj: self.adj.transpose(),
        }
    }

    /// Check every structural invariant: sorted keys, canonical sparse
    /// storage, shape agreement, condensed axes, and — for string arrays —
    /// a sorted/unique/non-empty pool that every pointer hits.
    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::Invariant(msg));
        if !self.row.windows(2).all(|w| w[0] < w[1]) {
            return fail("row keys not strictly increasing".into());
        }
        if !self.col.windows(2).all(|w| w[0] < w[1]) {
            return fail("column keys not strictly increasing".into());
        }
        if self.adj.shape() != (self.row.len(), self.col.len()) {
            return fail(format!(
                "adjacency shape {:?} disagrees with key counts {:?}",
                self.adj.shape(),
                self.size()
            ));
        }
        self.adj.validate()?;
        let (row_mask, col_mask) = self.adj.nonempty_rows_cols();
        if !row_mask.iter().all(|&m| m) || !col_mask.iter().all(|&m| m) {
            return fail("array not condensed: a key has no stored entries".into());
        }
        if let ValuePool::Str(pool) = &self.val {
            if !pool.windows(2).all(|w| w[0] < w[1]) || pool.iter().any(|s| s.is_empty()) {
                return fail("string pool not sorted/unique/non-empty".into());
            }
            let mut used = vec![false; pool.len()];
            for (_, _, v) in self.adj.triples() {
                if v.fract() != 0.0 || v < 1.0 || v > pool.len() as f64 {
                    return Err(Error::BadPoolPointer {
                        value: v,
                        pool: pool.len(),
                    });
                }
                used[v as usize - 1] = true;
            }
            if !used.iter().all(|&u| u) {
                return fail("string pool holds an unreferenced string".into());
            }
        }
        Ok(())
    }
}

impl fmt::Display for Assoc {
    /// One header line, then one indented line per stored entry. Meant for
    /// small arrays; large ones print in full.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{}x{} associative array, {} stored entries",
            self.row.len(),
            self.col.len(),
            self.nnz()
        )?;
        for (r, c, v) in self.triples() {
            writeln!(f, "  ({r}, {c})\t{v}")?;
        }
        Ok(())
    }
}
