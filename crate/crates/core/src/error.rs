use std::path::PathBuf;

use thiserror::Error;

/// Errors surfaced by construction, algebra, selection, and persistence.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{op}: shape mismatch {lhs:?} vs {rhs:?}")]
    ShapeMismatch {
        op: &'static str,
        lhs: (usize, usize),
        rhs: (usize, usize),
    },

    #[error("matmul: inner dimensions disagree, {lhs:?} @ {rhs:?}")]
    InnerDimMismatch {
        lhs: (usize, usize),
        rhs: (usize, usize),
    },

    #[error("{axis} index {index} out of range for length {len}")]
    IndexOutOfRange {
        axis: &'static str,
        index: usize,
        len: usize,
    },

    #[error("{axis} indices must be strictly increasing")]
    NotStrictlyIncreasing { axis: &'static str },

    #[error("argument lengths do not agree: {0:?}")]
    LengthMismatch(Vec<usize>),

    #[error("values mix numbers and strings")]
    MixedValues,

    #[error("{op}: operands have different value kinds ({lhs} vs {rhs})")]
    KindMismatch {
        op: &'static str,
        lhs: &'static str,
        rhs: &'static str,
    },

    #[error("adjacency entry {value} is not a 1-based pointer into a value pool of {pool} strings")]
    BadPoolPointer { value: f64, pool: usize },

    #[error("{have} {axis} keys cannot label {need} adjacency {axis}s")]
    TooFewKeys {
        axis: &'static str,
        have: usize,
        need: usize,
    },

    #[error("malformed range selector {0:?}: expected \"lo,:,hi,\" with a trailing delimiter")]
    BadRange(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}:{line}: expected 3 fields, found {found}")]
    BadTripleLine {
        path: PathBuf,
        line: usize,
        found: usize,
    },

    #[error("field {0:?} contains the delimiter or a line break")]
    UnwritableField(String),

    #[error("benchmark exponent n={0} outside the supported range 5..=18")]
    BadExponent(u32),

    #[error("invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
