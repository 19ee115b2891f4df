//! Binary operations between arrays: key-aligned sums, products, and folds.
//!
//! The key axes do the aligning. Entrywise union operations (add, combine,
//! min, max) join the two key sets and fold where both arrays hold a value;
//! entrywise intersection (multiply) and the inner axis of the array product
//! keep only shared keys. String-valued operands degrade to their logical
//! pattern wherever a numeric operation needs numbers.

use std::borrow::Cow;
use std::ops::{Add, Mul};

use crate::error::{Error, Result};
use crate::key::{Key, Value, ValueKind, ValueOp};
use crate::semiring::{plus_times, Semiring};
use crate::sorted_sets::{sorted_intersection, sorted_union, sorted_unique, MergeResult};
use crate::sparse::{Csr, SparseMatrix};

use super::{Assoc, ValuePool};

impl Assoc {
    /// Entrywise union-fold: the result holds every entry of either array,
    /// and where both hold one, `op` folds them left-then-right. Works for
    /// two numeric or two string arrays; [`ValueOp::Sum`] concatenates
    /// strings.
    pub fn combine(&self, other: &Assoc, op: ValueOp) -> Result<Assoc> {
        if self.is_empty() {
            return Ok(other.clone());
        }
        if other.is_empty() {
            return Ok(self.clone());
        }
        if self.value_kind() != other.value_kind() {
            return Err(Error::KindMismatch {
                op: "combine",
                lhs: self.value_kind().name(),
                rhs: other.value_kind().name(),
            });
        }

        let rows = sorted_union(&self.row, &other.row);
        let cols = sorted_union(&self.col, &other.col);
        // Entries of one side, rekeyed into union coordinates. The maps are
        // strictly increasing, so each list stays row-major sorted.
        let rekey = |a: &Assoc, rmap: &[usize], cmap: &[usize]| -> Vec<(usize, usize, f64)> {
            a.adj
                .triples()
                .into_iter()
                .map(|(i, j, v)| (rmap[i], cmap[j], v))
                .collect()
        };
        let left = rekey(self, &rows.map_left, &cols.map_left);
        let right = rekey(other, &rows.map_right, &cols.map_right);

        let mut ent_rows = Vec::with_capacity(left.len() + right.len());
        let mut ent_cols = Vec::with_capacity(left.len() + right.len());
        let nrows = rows.merged.len();
        let ncols = cols.merged.len();

        match self.value_kind() {
            ValueKind::Num => {
                let mut data = Vec::with_capacity(left.len() + right.len());
                merge_entries(
                    &left,
                    &right,
                    |v| v,
                    |v| v,
                    |a, b| op.fold_num(a, b),
                    |v| *v != 0.0,
                    |r, c, v| {
                        ent_rows.push(r);
                        ent_cols.push(c);
                        data.push(v);
                    },
                );
                let adj = Csr::from_canonical_entries(nrows, ncols, &ent_rows, ent_cols, data);
                Ok(Assoc::condense(
                    rows.merged,
                    cols.merged,
                    ValuePool::Num,
                    SparseMatrix::Csr(adj),
                ))
            }
            ValueKind::Str => {
                let unpack = |pool: &ValuePool, v: f64| match pool.value_of(v) {
                    Value::Str(s) => s,
                    Value::Num(_) => unreachable!("string array decodes strings"),
                };
                let mut folded: Vec<String> = Vec::with_capacity(left.len() + right.len());
                merge_entries(
                    &left,
                    &right,
                    |v| unpack(&self.val, v),
                    |v| unpack(&other.val, v),
                    |mut a, b| {
                        op.fold_str(&mut a, &b);
                        a
                    },
                    |s| !s.is_empty(),
                    |r, c, v| {
                        ent_rows.push(r);
                        ent_cols.push(c);
                        folded.push(v);
                    },
                );
                let (pool, pos) = sorted_unique(&folded);
                let data: Vec<f64> = pos.iter().map(|&p| (p + 1) as f64).collect();
                let adj = Csr::from_canonical_entries(nrows, ncols, &ent_rows, ent_cols, data);
                Ok(Assoc::condense(
                    rows.merged,
                    cols.merged,
                    ValuePool::Str(pool),
                    SparseMatrix::Csr(adj),
                ))
            }
        }
    }

    /// Key-aligned sum: numeric arrays add where both hold a value (exact
    /// cancellation deletes the entry), string arrays concatenate
    /// left-then-right. Adding numeric to string is an error.
    pub fn add(&self, other: &Assoc) -> Result<Assoc> {
        if self.is_empty() {
            return Ok(other.clone());
        }
        if other.is_empty() {
            return Ok(self.clone());
        }
        match (self.value_kind(), other.value_kind()) {
            (ValueKind::Str, ValueKind::Str) => self.combine(other, ValueOp::Sum),
            (ValueKind::Num, ValueKind::Num) => {
                // Scatter both patterns into union shape and let the sparse
                // kernel do the summing; it prunes exact zeros itself.
                let rows = sorted_union(&self.row, &other.row);
                let cols = sorted_union(&self.col, &other.col);
                let nrows = rows.merged.len();
                let ncols = cols.merged.len();
                let a = self
                    .adj
                    .scatter(nrows, ncols, &rows.map_left, &cols.map_left)?;
                let b = other
                    .adj
                    .scatter(nrows, ncols, &rows.map_right, &cols.map_right)?;
                let sum = a.add(&b)?;
                Ok(Assoc::condense(
                    rows.merged,
                    cols.merged,
                    ValuePool::Num,
                    sum,
                ))
            }
            (lhs, rhs) => Err(Error::KindMismatch {
                op: "add",
                lhs: lhs.name(),
                rhs: rhs.name(),
            }),
        }
    }

    /// Entrywise minimum on the key union. Mixing value kinds is an error.
    pub fn elementwise_min(&self, other: &Assoc) -> Result<Assoc> {
        self.combine(other, ValueOp::Min)
    }

    /// Entrywise maximum on the key union. Mixing value kinds is an error.
    pub fn elementwise_max(&self, other: &Assoc) -> Result<Assoc> {
        self.combine(other, ValueOp::Max)
    }

    /// Entrywise product on the intersection of keys and patterns. A
    /// string-valued operand contributes its logical pattern (1.0 per
    /// entry), so string×numeric masks the numeric values and string×string
    /// yields 1.0 wherever both arrays hold something.
    pub fn multiply_elementwise(&self, other: &Assoc) -> Result<Assoc> {
        if self.is_empty() || other.is_empty() {
            return Ok(Assoc::empty());
        }
        let a = self.as_numeric();
        let b = other.as_numeric();
        let rows = sorted_intersection(&a.row, &b.row);
        let cols = sorted_intersection(&a.col, &b.col);
        if rows.merged.is_empty() || cols.merged.is_empty() {
            return Ok(Assoc::empty());
        }
        let asub = a.adj.select(Some(&rows.map_left), Some(&cols.map_left))?;
        let bsub = b.adj.select(Some(&rows.map_right), Some(&cols.map_right))?;
        let prod = asub.elementwise_multiply(&bsub)?;
        Ok(Assoc::condense(
            rows.merged,
            cols.merged,
            ValuePool::Num,
            prod,
        ))
    }

    /// Array (matrix) product over the `plus_times` semiring: the inner axis
    /// is the intersection of `self`'s column keys with `other`'s row keys.
    pub fn array_product(&self, other: &Assoc) -> Result<Assoc> {
        self.array_product_with(other, &plus_times())
    }

    /// Array product over any semiring. String operands contribute their
    /// logical patterns, which makes `A.transpose() × A` of a string table a
    /// co-occurrence count under `plus_times`.
    pub fn array_product_with(&self, other: &Assoc, ring: &Semiring<f64>) -> Result<Assoc> {
        if self.is_empty() || other.is_empty() {
            return Ok(Assoc::empty());
        }
        let a = self.as_numeric();
        let b = other.as_numeric();
        let inner: MergeResult<Key> = sorted_intersection(&a.col, &b.row);
        if inner.merged.is_empty() {
            return Ok(Assoc::empty());
        }
        let asub = a.adj.select(None, Some(&inner.map_left))?;
        let bsub = b.adj.select(Some(&inner.map_right), None)?;
        let prod = asub.matmul(&bsub, ring)?;
        Ok(Assoc::condense(
            a.row.clone(),
            b.col.clone(),
            ValuePool::Num,
            prod,
        ))
    }

    /// This array if numeric, its logical pattern if string-valued.
    fn as_numeric(&self) -> Cow<'_, Assoc> {
        match self.value_kind() {
            ValueKind::Num => Cow::Borrowed(self),
            ValueKind::Str => Cow::Owned(self.logical()),
        }
    }
}

/// Merge two row-major entry lists; `emit` sees each coordinate once, in
/// order, with lone values decoded by their own side and collisions folded
/// left-then-right. Results failing `keep` are dropped.
fn merge_entries<T>(
    left: &[(usize, usize, f64)],
    right: &[(usize, usize, f64)],
    decode_left: impl Fn(f64) -> T,
    decode_right: impl Fn(f64) -> T,
    fold: impl Fn(T, T) -> T,
    keep: impl Fn(&T) -> bool,
    mut emit: impl FnMut(usize, usize, T),
) {
    let mut i = 0;
    let mut j = 0;
    while i < left.len() && j < right.len() {
        let (lr, lc, lv) = left[i];
        let (rr, rc, rv) = right[j];
        let out = match (lr, lc).cmp(&(rr, rc)) {
            std::cmp::Ordering::Less => {
                i += 1;
                (lr, lc, decode_left(lv))
            }
            std::cmp::Ordering::Greater => {
                j += 1;
                (rr, rc, decode_right(rv))
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
                (lr, lc, fold(decode_left(lv), decode_right(rv)))
            }
        };
        if keep(&out.2) {
            emit(out.0, out.1, out.2);
        }
    }
    for &(r, c, v) in &left[i..] {
        let v = decode_left(v);
        if keep(&v) {
            emit(r, c, v);
        }
    }
    for &(r, c, v) in &right[j..] {
        let v = decode_right(v);
        if keep(&v) {
            emit(r, c, v);
        }
    }
}

/// `&a + &b`, panicking where [`Assoc::add`] would error (mixed value
/// kinds). Use the method form to handle the error instead.
impl Add for &Assoc {
    type Output = Assoc;

    fn add(self, rhs: &Assoc) -> Assoc {
        Assoc::add(self, rhs).expect("cannot add a numeric array to a string array")
    }
}

/// `&a * &b` is the array product; string operands degrade to their logical
/// patterns, so this cannot fail.
impl Mul for &Assoc {
    type Output = Assoc;

    fn mul(self, rhs: &Assoc) -> Assoc {
        self.array_product(rhs)
            .expect("array product is total over key-aligned operands")
    }
}
