//! Reading and writing arrays as tab-separated triple files, and the
//! synthetic datasets the benchmark driver works on.
//!
//! The file format is one stored entry per line — row key, column key, value
//! — separated by single tabs, UTF-8, LF line endings, no header. Keys are
//! written as displayed, so numeric keys come back as *text* keys on re-read
//! (the file carries no type marks); values come back numeric when every
//! value in the file parses as a number, string otherwise.

use std::fs::{self, File};
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::assoc::Assoc;
use crate::error::{Error, Result};
use crate::key::{Key, Value, ValueOp};

/// Largest dataset exponent [`generate_bench`] accepts; 8·2^26 triples is
/// past half a billion and anything larger is a typo, not a benchmark.
pub const MAX_EXPONENT: u32 = 26;

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> Error + '_ {
    move |source| Error::Io {
        path: path.to_owned(),
        source,
    }
}

fn check_field(field: &str) -> Result<()> {
    if field.contains(['\t', '\n', '\r']) {
        return Err(Error::UnwritableField(field.to_owned()));
    }
    Ok(())
}

/// Write the array's stored entries as tab-separated triples, row-major.
///
/// Fields containing a tab or line break have no representation in the
/// format and are refused ([`Error::UnwritableField`]) before anything is
/// written. Numbers are written in the shortest form that reads back to the
/// same bits.
pub fn write_triples(path: impl AsRef<Path>, a: &Assoc) -> Result<()> {
    let path = path.as_ref();
    let triples = a.triples();
    let mut lines = String::new();
    for (r, c, v) in &triples {
        let r = r.to_string();
        let c = c.to_string();
        let v = v.to_string();
        check_field(&r)?;
        check_field(&c)?;
        check_field(&v)?;
        lines.push_str(&r);
        lines.push('\t');
        lines.push_str(&c);
        lines.push('\t');
        lines.push_str(&v);
        lines.push('\n');
    }
    let mut out = BufWriter::new(File::create(path).map_err(io_err(path))?);
    out.write_all(lines.as_bytes()).map_err(io_err(path))?;
    out.flush().map_err(io_err(path))
}

/// Read a triple file written by [`write_triples`] (or by hand), folding
/// colliding coordinates with [`ValueOp::Min`].
pub fn read_triples(path: impl AsRef<Path>) -> Result<Assoc> {
    read_triples_with(path, ValueOp::Min)
}

/// Read a triple file with an explicit collision fold.
///
/// Every line must hold exactly three tab-separated fields. Keys are always
/// read as text; values become numbers only if every value field in the file
/// parses as one.
pub fn read_triples_with(path: impl AsRef<Path>, op: ValueOp) -> Result<Assoc> {
    let path = path.as_ref();
    let file = BufReader::new(File::open(path).map_err(io_err(path))?);
    let mut rows = Vec::new();
    let mut cols = Vec::new();
    let mut raw_vals: Vec<String> = Vec::new();
    for (line_ix, line) in file.lines().enumerate() {
        let line = line.map_err(io_err(path))?;
        let mut fields = line.split('\t');
        let (Some(r), Some(c), Some(v), None) =
            (fields.next(), fields.next(), fields.next(), fields.next())
        else {
            return Err(Error::BadTripleLine {
                path: path.to_owned(),
                line: line_ix + 1,
                found: line.split('\t').count(),
            });
        };
        rows.push(Key::from(r));
        cols.push(Key::from(c));
        raw_vals.push(v.to_owned());
    }

    let all_numeric = !raw_vals.is_empty() && raw_vals.iter().all(|v| v.parse::<f64>().is_ok());
    let vals: Vec<Value> = if all_numeric {
        raw_vals
            .into_iter()
            .map(|v| Value::Num(v.parse().unwrap()))
            .collect()
    } else {
        raw_vals.into_iter().map(Value::Str).collect()
    };
    Assoc::from_triples_with(&rows, &cols, &vals, op)
}

/// One synthetic workload: random key/value columns sized `8 · 2^n`, drawn
/// from a keyspace of `2^n` distinct keys so that collision density stays
/// flat as `n` grows.
///
/// `rows`/`cols` address one array and `rows2`/`cols2` an independent
/// second one; `num_vals` and `str_vals` are value columns for numeric and
/// string variants of either.
#[derive(Clone, Debug)]
pub struct BenchDataset {
    pub n: u32,
    pub rows: Vec<Key>,
    pub cols: Vec<Key>,
    pub rows2: Vec<Key>,
    pub cols2: Vec<Key>,
    pub num_vals: Vec<Value>,
    pub str_vals: Vec<Value>,
}

/// Generate the workload for exponent `n` deterministically from `seed`.
///
/// The generator is keyed on (seed, n) — the same pair always yields the
/// same dataset, and different exponents draw from independent streams, so
/// growing a sweep never shifts the data of the sizes already run. Keys are
/// decimal integers in `[0, 2^n)` (as text), numeric values are integers in
/// `[0, 100]` (zeros thin the array out on construction), and string values
/// are eight lowercase letters each.
pub fn generate_bench(n: u32, seed: u64) -> Result<BenchDataset> {
    if n > MAX_EXPONENT {
        return Err(Error::BadExponent(n));
    }
    let count = 8usize << n;
    let keyspace = 1u64 << n;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(n as u64);

    let draw_keys = |rng: &mut ChaCha8Rng| -> Vec<Key> {
        (0..count)
            .map(|_| Key::Text(rng.random_range(0..keyspace).to_string()))
            .collect()
    };
    let rows = draw_keys(&mut rng);
    let cols = draw_keys(&mut rng);
    let rows2 = draw_keys(&mut rng);
    let cols2 = draw_keys(&mut rng);
    let num_vals = (0..count)
        .map(|_| Value::Num(rng.random_range(0..=100u32) as f64))
        .collect();
    let str_vals = (0..count)
        .map(|_| {
            Value::Str(
                (0..8)
                    .map(|_| char::from(b'a' + rng.random_range(0..26u8)))
                    .collect(),
            )
        })
        .collect();
    Ok(BenchDataset {
        n,
        rows,
        cols,
        rows2,
        cols2,
        num_vals,
        str_vals,
    })
}

impl BenchDataset {
    /// Write the six data columns into `dir`, one item per line, as
    /// `rows.txt`, `cols.txt`, `rows2.txt`, `cols2.txt`, `num_vals.txt`,
    /// and `string_vals.txt`.
    pub fn write_dataset(&self, dir: impl AsRef<Path>) -> Result<()> {
        let dir = dir.as_ref();
        fs::create_dir_all(dir).map_err(io_err(dir))?;
        let write_lines = |name: &str, lines: &mut dyn Iterator<Item = String>| -> Result<()> {
            let path = dir.join(name);
            let mut out = BufWriter::new(File::create(&path).map_err(io_err(&path))?);
            for line in lines {
                writeln!(out, "{line}").map_err(io_err(&path))?;
            }
            out.flush().map_err(io_err(&path))
        };
        let keys = |ks: &[Key]| ks.iter().map(Key::to_string).collect::<Vec<_>>();
        let vals = |vs: &[Value]| vs.iter().map(Value::to_string).collect::<Vec<_>>();
        write_lines("rows.txt", &mut keys(&self.rows).into_iter())?;
        write_lines("cols.txt", &mut keys(&self.cols).into_iter())?;
        write_lines("rows2.txt", &mut keys(&self.rows2).into_iter())?;
        write_lines("cols2.txt", &mut keys(&self.cols2).into_iter())?;
        write_lines("num_vals.txt", &mut vals(&self.num_vals).into_iter())?;
        write_lines("string_vals.txt", &mut vals(&self.str_vals).into_iter())
    }
}
