//! Selecting sub-arrays by key or by position, and single-entry assignment.

use crate::error::{Error, Result};
use crate::key::{Key, Value, ValueOp};

use super::Assoc;

/// One axis of a [`Assoc::get`] request.
///
/// Key-typed variants address keys; integer variants address *positions* in
/// the sorted key vector — an integer is always a position, never a numeric
/// key, so `Positions(vec![5])` means the sixth key while
/// `Selector::Key(Key::num(5.0))` means the key `5`.
///
/// Selection is set-like: missing keys are skipped rather than failing, and
/// the result's keys are always sorted and duplicate-free no matter how the
/// request was ordered.
#[derive(Clone, Debug, PartialEq)]
pub enum Selector {
    /// Every key.
    All,
    /// One key, if present.
    Key(Key),
    /// Any of these keys that are present.
    Keys(Vec<Key>),
    /// Every key from the first to the second bound, both inclusive.
    Range(Key, Key),
    /// Exact positions in the sorted key vector; out of range is an error.
    Positions(Vec<usize>),
    /// A half-open position range `[start, end)`, silently clamped to the
    /// axis length the way Python slices are.
    PosRange(usize, usize),
}

impl Selector {
    /// Parse the delimiter-terminated selector strings used in query text:
    /// `"k,"` for one key, `"a,b,c,"` for several, `"lo,:,hi,"` for an
    /// inclusive range, and `":"` for everything. The trailing delimiter is
    /// optional; parsed keys are always text.
    pub fn parse(s: &str) -> Result<Selector> {
        let mut parts: Vec<&str> = s.split(',').collect();
        if parts.last() == Some(&"") {
            parts.pop();
        }
        if parts.is_empty() {
            return Err(Error::BadRange(format!("selector {s:?} has no fields")));
        }
        if parts.iter().any(|p| p.is_empty()) {
            return Err(Error::BadRange(format!("selector {s:?} has an empty field")));
        }
        match parts.as_slice() {
            [":"] => Ok(Selector::All),
            [one] => Ok(Selector::Key(Key::from(*one))),
            [lo, ":", hi] => Ok(Selector::Range(Key::from(*lo), Key::from(*hi))),
            _ if parts.iter().any(|p| *p == ":") => Err(Error::BadRange(format!(
                "selector {s:?} misplaces the range marker"
            ))),
            _ => Ok(Selector::Keys(parts.into_iter().map(Key::from).collect())),
        }
    }

    /// Strictly increasing positions this selector picks from a sorted axis.
    pub(crate) fn resolve(&self, axis_name: &'static str, axis: &[Key]) -> Result<Vec<usize>> {
        match self {
            Selector::All => Ok((0..axis.len()).collect()),
            Selector::Key(k) => Ok(axis.binary_search(k).ok().into_iter().collect()),
            Selector::Keys(ks) => {
                let mut hits: Vec<usize> =
                    ks.iter().filter_map(|k| axis.binary_search(k).ok()).collect();
                hits.sort_unstable();
                hits.dedup();
                Ok(hits)
            }
            Selector::Range(lo, hi) => {
                let start = axis.partition_point(|k| k < lo);
                let end = axis.partition_point(|k| k <= hi);
                Ok((start..end).collect())
            }
            Selector::Positions(ps) => {
                for &p in ps {
                    if p >= axis.len() {
                        return Err(Error::IndexOutOfRange {
                            axis: axis_name,
                            index: p,
                            len: axis.len(),
                        });
                    }
                }
                let mut hits = ps.clone();
                hits.sort_unstable();
                hits.dedup();
                Ok(hits)
            }
            Selector::PosRange(start, end) => {
                let end = (*end).min(axis.len());
                let start = (*start).min(end);
                Ok((start..end).collect())
            }
        }
    }
}

impl Assoc {
    /// The sub-array at the selected rows and columns, condensed: keys whose
    /// every entry falls outside the selection drop out of the result.
    pub fn get(&self, rows: &Selector, cols: &Selector) -> Result<Assoc> {
        let ri = rows.resolve("row", &self.row)?;
        let ci = cols.resolve("column", &self.col)?;
        if ri.is_empty() || ci.is_empty() {
            return Ok(Assoc::empty());
        }
        let adj = self.adj.select(Some(&ri), Some(&ci))?;
        Ok(Assoc::condense(
            ri.into_iter().map(|i| self.row[i].clone()).collect(),
            ci.into_iter().map(|j| self.col[j].clone()).collect(),
            self.val.clone(),
            adj,
        ))
    }

    /// Bind one key pair to a value, growing the key axes as needed. An
    /// empty value (`0.0` or `""`) deletes the entry instead; a non-empty
    /// value whose kind differs from a non-empty array's is an error.
    ///
    /// Sorted storage has no room to splice in place, so this rebuilds from
    /// triples — fine for scattered updates, quadratic if used to build an
    /// array entry by entry. Batch construction belongs to
    /// [`Assoc::from_triples`].
    pub fn set(&mut self, row: Key, col: Key, value: Value) -> Result<()> {
        if !value.is_empty() && !self.is_empty() && value.kind() != self.value_kind() {
            return Err(Error::KindMismatch {
                op: "set",
                lhs: self.value_kind().name(),
                rhs: value.kind().name(),
            });
        }
        let mut rs = Vec::with_capacity(self.nnz() + 1);
        let mut cs = Vec::with_capacity(self.nnz() + 1);
        let mut vs = Vec::with_capacity(self.nnz() + 1);
        for (r, c, v) in self.triples() {
            if !(r == row && c == col) {
                rs.push(r);
                cs.push(c);
                vs.push(v);
            }
        }
        if !value.is_empty() {
            rs.push(row);
            cs.push(col);
            vs.push(value);
        }
        *self = Assoc::from_triples_with(&rs, &cs, &vs, ValueOp::Last)?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::key::{num_values, text_keys};

    /// 4×3 numeric grid with a hole: value = 10·(row index + 1) + column
    /// index + 1, except nothing stored at row "c".column "x".
    fn grid() -> Assoc {
        let mut rs = Vec::new();
        let mut cs = Vec::new();
        let mut vs = Vec::new();
        for (i, r) in ["a", "b", "c", "d"].iter().enumerate() {
            for (j, c) in ["w", "x", "y"].iter().enumerate() {
                if (*r, *c) == ("c", "x") {
                    continue;
                }
                rs.push(Key::from(*r));
                cs.push(Key::from(*c));
                vs.push(Value::from((10 * (i + 1) + j + 1) as f64));
            }
        }
        Assoc::from_triples(&rs, &cs, &vs).unwrap()
    }

    #[test]
    fn parse_selector_forms() {
        assert_eq!(Selector::parse(":").unwrap(), Selector::All);
        assert_eq!(
            Selector::parse("alice,").unwrap(),
            Selector::Key(Key::from("alice"))
        );
        assert_eq!(
            Selector::parse("alice").unwrap(),
            Selector::Key(Key::from("alice"))
        );
        assert_eq!(
            Selector::parse("a,b,").unwrap(),
            Selector::Keys(vec![Key::from("a"), Key::from("b")])
        );
        assert_eq!(
            Selector::parse("a,:,b,").unwrap(),
            Selector::Range(Key::from("a"), Key::from("b"))
        );
        for bad in ["", ",", "a,,b,", "a,:,b,c,", ":,a,", "a,:,"] {
            assert!(
                matches!(Selector::parse(bad), Err(Error::BadRange(_))),
                "{bad:?} should not parse"
            );
        }
    }

    #[test]
    fn key_range_is_inclusive() {
        let g = grid();
        let sub = g
            .get(
                &Selector::Range(Key::from("b"), Key::from("c")),
                &Selector::All,
            )
            .unwrap();
        assert_eq!(sub.row_keys(), text_keys(&["b", "c"]));
        assert_eq!(sub.nnz(), 5);
        sub.validate().unwrap();

        // Bounds that fall between keys still bracket what lies inside.
        let sub = g
            .get(
                &Selector::Range(Key::from("aa"), Key::from("cc")),
                &Selector::All,
            )
            .unwrap();
        assert_eq!(sub.row_keys(), text_keys(&["b", "c"]));

        // An inverted range selects nothing.
        let sub = g
            .get(
                &Selector::Range(Key::from("c"), Key::from("b")),
                &Selector::All,
            )
            .unwrap();
        assert!(sub.is_empty());
    }

    #[test]
    fn key_lists_dedup_and_skip_missing() {
        let g = grid();
        let sub = g
            .get(
                &Selector::Keys(vec![
                    Key::from("d"),
                    Key::from("b"),
                    Key::from("d"),
                    Key::from("zzz"),
                ]),
                &Selector::All,
            )
            .unwrap();
        assert_eq!(sub.row_keys(), text_keys(&["b", "d"]));

        let none = g
            .get(&Selector::Key(Key::from("zzz")), &Selector::All)
            .unwrap();
        assert!(none.is_empty());
    }

    #[test]
    fn positions_are_integers_not_keys() {
        let g = grid();
        let sub = g
            .get(&Selector::Positions(vec![2, 0]), &Selector::All)
            .unwrap();
        assert_eq!(sub.row_keys(), text_keys(&["a", "c"]));

        assert!(matches!(
            g.get(&Selector::Positions(vec![4]), &Selector::All)
                .unwrap_err(),
            Error::IndexOutOfRange { axis: "row", .. }
        ));
    }

    #[test]
    fn position_ranges_clamp_like_slices() {
        let g = grid();
        let sub = g
            .get(&Selector::PosRange(1, 99), &Selector::All)
            .unwrap();
        assert_eq!(sub.row_keys(), text_keys(&["b", "c", "d"]));

        let sub = g.get(&Selector::PosRange(3, 2), &Selector::All).unwrap();
        assert!(sub.is_empty());
        let sub = g.get(&Selector::PosRange(9, 12), &Selector::All).unwrap();
        assert!(sub.is_empty());
    }

    #[test]
    fn selection_condenses_stranded_keys() {
        // Row "c" has no entry in column "x", so asking for rows b..d at
        // column "x" drops "c" from the result keys entirely.
        let g = grid();
        let sub = g
            .get(
                &Selector::Range(Key::from("b"), Key::from("d")),
                &Selector::Key(Key::from("x")),
            )
            .unwrap();
        assert_eq!(sub.row_keys(), text_keys(&["b", "d"]));
        assert_eq!(sub.nnz(), 2);
        sub.validate().unwrap();
    }

    #[test]
    fn selection_repools_string_values() {
        let rows = text_keys(&["s1", "s2"]);
        let cols = text_keys(&["genre", "genre"]);
        let a = Assoc::from_triples(
            &rows,
            &cols,
            &[Value::from("rock"), Value::from("pop")],
        )
        .unwrap();
        let sub = a
            .get(&Selector::Key(Key::from("s2")), &Selector::All)
            .unwrap();
        sub.validate().unwrap();
        assert_eq!(sub.value_pool().strings().unwrap(), ["pop"]);
        assert_eq!(
            sub.get_value(&Key::from("s2"), &Key::from("genre")),
            Value::from("pop")
        );
    }

    #[test]
    fn set_inserts_updates_and_deletes() {
        let mut a = Assoc::empty();
        a.set(Key::from("r"), Key::from("c"), Value::from(2.0)).unwrap();
        assert_eq!(a.size(), (1, 1));
        assert_eq!(a.get_value(&Key::from("r"), &Key::from("c")), Value::from(2.0));

        // New keys splice into sorted order.
        a.set(Key::from("b"), Key::from("c"), Value::from(1.0)).unwrap();
        assert_eq!(a.row_keys(), text_keys(&["b", "r"]));

        // Overwrite keeps the later value.
        a.set(Key::from("r"), Key::from("c"), Value::from(9.0)).unwrap();
        assert_eq!(a.get_value(&Key::from("r"), &Key::from("c")), Value::from(9.0));

        // Deleting the only entry of a key condenses the key away.
        a.set(Key::from("b"), Key::from("c"), Value::from(0.0)).unwrap();
        assert_eq!(a.row_keys(), text_keys(&["r"]));
        a.validate().unwrap();

        a.set(Key::from("r"), Key::from("c"), Value::from("")).unwrap();
        assert!(a.is_empty());
    }

    #[test]
    fn set_rejects_kind_changes() {
        let mut a = Assoc::from_triples(
            &text_keys(&["r"]),
            &text_keys(&["c"]),
            &num_values(&[1.0]),
        )
        .unwrap();
        assert!(matches!(
            a.set(Key::from("r"), Key::from("d"), Value::from("text"))
                .unwrap_err(),
            Error::KindMismatch { op: "set", .. }
        ));
        // Deleting with the other kind's empty value is allowed.
        a.set(Key::from("r"), Key::from("c"), Value::from("")).unwrap();
        assert!(a.is_empty());
    }
}
