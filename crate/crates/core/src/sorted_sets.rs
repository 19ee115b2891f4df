//! Merges of sorted key sequences, with the index maps that let adjacency
//! matrices follow their keys through a union or intersection.

/// Result of merging two sorted, duplicate-free sequences.
///
/// The two maps read differently for the two operations:
///
/// * **union** — `map_left[i]` is the position in `merged` of `left[i]`
///   (one entry per *input* element), and likewise `map_right` for `right`.
///   These are exactly the row/column targets for scattering an adjacency
///   matrix into union shape.
/// * **intersection** — `map_left[k]` is the position in `left` of
///   `merged[k]` (one entry per *output* element), and likewise `map_right`.
///   These are exactly the indices for selecting the shared submatrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MergeResult<T> {
    pub merged: Vec<T>,
    pub map_left: Vec<usize>,
    pub map_right: Vec<usize>,
}

fn strictly_sorted<T: Ord>(xs: &[T]) -> bool {
    xs.windows(2).all(|w| w[0] < w[1])
}

/// Sorted union of two sorted duplicate-free sequences, with positions of
/// every input element in the result.
///
/// Inputs must be strictly sorted; this is checked in debug builds only.
pub fn sorted_union<T: Ord + Clone>(left: &[T], right: &[T]) -> MergeResult<T> {
    debug_assert!(strictly_sorted(left), "left input not strictly sorted");
    debug_assert!(strictly_sorted(right), "right input not strictly sorted");

    let mut merged = Vec::with_capacity(left.len().max(right.len()));
    let mut map_left = Vec::with_capacity(left.len());
    let mut map_right = Vec::with_capacity(right.len());
    let (mut i, mut j) = (0, 0);
    while i < left.len() && j < right.len() {
        use std::cmp::Ordering::*;
        match left[i].cmp(&right[j]) {
            Less => {
                map_left.push(merged.len());
                merged.push(left[i].clone());
                i += 1;
            }
            Greater => {
                map_right.push(merged.len());
                merged.push(right[j].clone());
                j += 1;
            }
            Equal => {
                map_left.push(merged.len());
                map_right.push(merged.len());
                merged.push(left[i].clone());
                i += 1;
                j += 1;
            }
        }
    }
    // At most one remainder is nonempty; append it in bulk.
    for x in &left[i..] {
        map_left.push(merged.len());
        merged.push(x.clone());
    }
    for x in &right[j..] {
        map_right.push(merged.len());
        merged.push(x.clone());
    }

    MergeResult {
        merged,
        map_left,
        map_right,
    }
}

/// Sorted intersection of two sorted duplicate-free sequences, with the
/// position of every output element in each input.
///
/// Inputs must be strictly sorted; this is checked in debug builds only.
pub fn sorted_intersection<T: Ord + Clone>(left: &[T], right: &[T]) -> MergeResult<T> {
    debug_assert!(strictly_sorted(left), "left input not strictly sorted");
    debug_assert!(strictly_sorted(right), "right input not strictly sorted");

    let mut merged = Vec::new();
    let mut map_left = Vec::new();
    let mut map_right = Vec::new();
    let (mut i, mut j) = (0, 0);
    while i < left.len() && j < right.len() {
        use std::cmp::Ordering::*;
        match left[i].cmp(&right[j]) {
            Less => i += 1,
            Greater => j += 1,
            Equal => {
                merged.push(left[i].clone());
                map_left.push(i);
                map_right.push(j);
                i += 1;
                j += 1;
            }
        }
    }

    MergeResult {
        merged,
        map_left,
        map_right,
    }
}

/// Below this length the index sort stays sequential even when the `parallel`
/// feature is on; thread dispatch would cost more than it saves.
#[cfg(feature = "parallel")]
const PAR_SORT_MIN: usize = 1 << 12;

fn sort_indices_seq<T: Ord>(idx: &mut [u32], items: &[T]) {
    idx.sort_unstable_by(|&a, &b| {
        items[a as usize]
            .cmp(&items[b as usize])
            .then(a.cmp(&b))
    });
}

#[cfg(feature = "parallel")]
fn sort_indices_par<T: Ord + Sync>(idx: &mut [u32], items: &[T]) {
    use rayon::prelude::*;
    idx.par_sort_unstable_by(|&a, &b| {
        items[a as usize]
            .cmp(&items[b as usize])
            .then(a.cmp(&b))
    });
}

fn build_unique<T: Ord + Clone>(items: &[T], idx: &[u32]) -> (Vec<T>, Vec<usize>) {
    let mut unique: Vec<T> = Vec::new();
    let mut positions = vec![0usize; items.len()];
    for &t in idx {
        let item = &items[t as usize];
        if unique.last() != Some(item) {
            unique.push(item.clone());
        }
        positions[t as usize] = unique.len() - 1;
    }
    (unique, positions)
}

fn index_vec(n: usize) -> Vec<u32> {
    assert!(n < u32::MAX as usize, "sequence too long to index");
    (0..n as u32).collect()
}

pub(crate) fn sorted_unique_seq<T: Ord + Clone>(items: &[T]) -> (Vec<T>, Vec<usize>) {
    let mut idx = index_vec(items.len());
    sort_indices_seq(&mut idx, items);
    build_unique(items, &idx)
}

#[cfg(feature = "parallel")]
pub(crate) fn sorted_unique_par<T: Ord + Clone + Sync>(items: &[T]) -> (Vec<T>, Vec<usize>) {
    let mut idx = index_vec(items.len());
    sort_indices_par(&mut idx, items);
    build_unique(items, &idx)
}

/// Sorted duplicate-free copy of `items`, plus for each input element its
/// position in that copy. Works for any mix of keys under the total key
/// order (numbers sort before texts).
pub fn sorted_unique<T: Ord + Clone + Send + Sync>(items: &[T]) -> (Vec<T>, Vec<usize>) {
    #[cfg(feature = "parallel")]
    if items.len() >= PAR_SORT_MIN {
        return sorted_unique_par(items);
    }
    sorted_unique_seq(items)
}
