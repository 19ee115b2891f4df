//! Associative arrays over sorted keys, backed by sparse matrices.
//!
//! An [`Assoc`] maps pairs of keys — row and column, each either numeric or
//! textual — to values that are either numbers or strings. Internally it
//! stores sorted, duplicate-free key vectors plus a sparse matrix of stored
//! values, so set operations on keys and linear algebra on values compose:
//! add two arrays and their key sets union; multiply them and the shared
//! keys align the product.
//!
//! The layers, bottom up:
//!
//! * [`semiring`] — pluggable (⊕, ⊗) algebras over `f64` for matrix
//!   products, plus a string algebra for ordering/concatenation, each with a
//!   sampling axiom checker.
//! * [`sorted_sets`] — unions, intersections, and deduplication of sorted
//!   vectors, returning the index maps that relate inputs to outputs.
//! * [`sparse`] — COO/CSR/CSC matrices with canonical storage and the add /
//!   elementwise-multiply / semiring-matmul kernels.
//! * [`assoc`] — the associative array itself: construction from triples,
//!   selection, algebra, transpose.
//! * [`io`] — tab-separated triple files and the synthetic datasets used by
//!   the benchmark driver.
//!
//! With the default `parallel` feature the heavy kernels (sorting, merges,
//! matrix ops) switch to multi-threaded lanes above a size threshold. Both
//! lanes produce bit-identical results: work splits by row, each row folds
//! in a fixed order, and chunks are stitched back in order, so disabling the
//! feature (`--no-default-features`) changes speed, never answers.
//!
//! ```
//! use assoc_array::key::{num_values, text_keys};
//! use assoc_array::{Assoc, Key, Selector};
//!
//! // A little incidence table: which song carries which tag.
//! let plays = Assoc::from_triples(
//!     &text_keys(["song1", "song1", "song2", "song3", "song3"]),
//!     &text_keys(["classical", "quiet", "rock", "quiet", "rock"]),
//!     &num_values([1.0, 1.0, 1.0, 1.0, 1.0]),
//! ).unwrap();
//!
//! // Cell lookup and key-range slicing.
//! assert_eq!(
//!     plays.get_value(&Key::text("song2"), &Key::text("rock")).as_num(),
//!     Some(1.0)
//! );
//! let quiet_or_rock = plays
//!     .get(&Selector::All, &Selector::parse("quiet,:,rock,").unwrap())
//!     .unwrap();
//! assert_eq!(quiet_or_rock.size(), (3, 2));
//!
//! // Tag co-occurrence: (tags × songs) · (songs × tags) counts shared songs.
//! let cooc = plays.transpose().array_product(&plays).unwrap();
//! assert_eq!(
//!     cooc.get_value(&Key::text("quiet"), &Key::text("rock")).as_num(),
//!     Some(1.0)
//! );
//! ```

pub mod assoc;
pub mod error;
pub mod io;
pub mod key;
pub mod semiring;
pub mod sorted_sets;
pub mod sparse;

#[doc(hidden)]
pub mod kernels;

pub use assoc::{Assoc, Selector, ValuePool};
pub use error::{Error, Result};
pub use key::{Key, Value, ValueKind, ValueOp};
pub use semiring::{max_min, max_plus, plus_times, Semiring, StringAlgebra};
pub use sparse::{DupRule, Layout, SparseMatrix};
