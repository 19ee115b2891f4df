//! Benchmark harness for the associative array crate.
//!
//! The pieces compose into a small pipeline:
//!
//! 1. [`run_benchmarks`] sweeps a size exponent range, building synthetic
//!    datasets and timing a fixed menu of operations ([`TestKind`]).
//! 2. [`check_scaling`] inspects the resulting [`BenchRecord`]s for
//!    superlinear blow-ups between consecutive sizes.
//! 3. [`write_report`] / [`parse_report`] round-trip the records through a
//!    delimited text format, and [`render_table`] pretty-prints them.
//!
//! Each step up in the size exponent doubles both the number of generated
//! triples and the key space they are drawn from, so a well-behaved
//! implementation should see roughly linear growth in the guarded tests.

use std::fmt;
use std::io::Write;
use std::path::Path;
use std::str::FromStr;
use std::time::Instant;

use anyhow::{bail, ensure, Context, Result};

use assoc_array::io::generate_bench;
use assoc_array::{plus_times, Assoc};

/// One timed operation in the benchmark menu.
///
/// Variants are declared in alphabetical order of their names so the derived
/// `Ord` matches the report's sort order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TestKind {
    /// Union-add two numeric arrays built from independent key draws.
    Add,
    /// Build a numeric array from raw triples.
    CtorNum,
    /// Build a string-valued array from raw triples.
    CtorStr,
    /// Elementwise multiply two numeric arrays (intersection of keys).
    EwiseMul,
    /// Array product: rows of one array against columns of the other.
    Matmul,
}

impl TestKind {
    /// Every test, in the order `run` executes them for a given size.
    pub const ALL: [TestKind; 5] = [
        TestKind::CtorNum,
        TestKind::CtorStr,
        TestKind::Add,
        TestKind::Matmul,
        TestKind::EwiseMul,
    ];

    /// Stable name used on the command line and in report files.
    pub fn name(self) -> &'static str {
        match self {
            TestKind::Add => "add",
            TestKind::CtorNum => "ctor_num",
            TestKind::CtorStr => "ctor_str",
            TestKind::EwiseMul => "ewise_mul",
            TestKind::Matmul => "matmul",
        }
    }
}

impl fmt::Display for TestKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TestKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        TestKind::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = TestKind::ALL.iter().map(|t| t.name()).collect();
                format!("unknown test {s:?}; expected one of {}", names.join(", "))
            })
    }
}

/// Knobs for one benchmark sweep.
#[derive(Clone, Debug)]
pub struct BenchConfig {
    /// Smallest size exponent (inclusive). A run at exponent `n` uses
    /// `8 * 2^n` triples drawn from a `2^n` key space.
    pub n_min: u32,
    /// Largest size exponent (inclusive).
    pub n_max: u32,
    /// Timed repetitions per (test, size); one extra untimed warmup runs first.
    pub reps: usize,
    /// Seed shared by all sizes; each size also mixes in its exponent, so
    /// datasets at different sizes are independent draws.
    pub seed: u64,
    /// Which tests to run.
    pub tests: Vec<TestKind>,
    /// Skip `matmul` above this exponent (its output grows quadratically).
    pub matmul_cap: u32,
    /// Skip `ewise_mul` above this exponent (intersections get too sparse to
    /// say anything useful, and the operand build dominates).
    pub ewise_cap: u32,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            n_min: 5,
            n_max: 13,
            reps: 3,
            seed: 42,
            tests: TestKind::ALL.to_vec(),
            matmul_cap: 17,
            ewise_cap: 13,
        }
    }
}

/// Timing result for one (test, size) cell.
#[derive(Clone, Debug, PartialEq)]
pub struct BenchRecord {
    pub test: TestKind,
    /// Size exponent this record was measured at.
    pub n: u32,
    /// Mean of `runs`, in seconds.
    pub mean_seconds: f64,
    /// Individual timed repetitions, in seconds, in execution order.
    pub runs: Vec<f64>,
    /// Stored entries in the first operand (for constructors: input triples).
    pub nnz_in_a: usize,
    /// Stored entries in the second operand (0 for constructors).
    pub nnz_in_b: usize,
    /// Stored entries in the result.
    pub nnz_out: usize,
}

/// Run `op` once untimed, then `reps` timed repetitions.
///
/// Returns the per-repetition wall-clock seconds and the last result so the
/// caller can validate it and report its size.
fn time_reps<T>(reps: usize, mut op: impl FnMut() -> T) -> (Vec<f64>, T) {
    let mut result = op();
    let mut runs = Vec::with_capacity(reps);
    for _ in 0..reps {
        let start = Instant::now();
        result = op();
        runs.push(start.elapsed().as_secs_f64());
    }
    (runs, result)
}

/// Execute the configured sweep, invoking `on_record` after each measurement
/// (handy for progress output while a long sweep is running).
///
/// Dataset generation and operand construction happen outside the timed
/// region; each test times exactly the operation it is named after. Results
/// are validated after timing so a fast-but-wrong kernel cannot pass
/// unnoticed.
pub fn run_benchmarks(
    cfg: &BenchConfig,
    mut on_record: impl FnMut(&BenchRecord),
) -> Result<Vec<BenchRecord>> {
    ensure!(
        cfg.n_min <= cfg.n_max,
        "size range is empty: n-min {} exceeds n-max {}",
        cfg.n_min,
        cfg.n_max
    );
    ensure!(cfg.reps >= 1, "reps must be at least 1");
    ensure!(!cfg.tests.is_empty(), "no tests selected");

    let ring = plus_times();
    let mut records = Vec::new();
    for n in cfg.n_min..=cfg.n_max {
        let data = generate_bench(n, cfg.seed)
            .with_context(|| format!("generate dataset for n={n}"))?;
        let a = Assoc::from_triples(&data.rows, &data.cols, &data.num_vals)
            .context("build first operand")?;
        let b = Assoc::from_triples(&data.rows2, &data.cols2, &data.num_vals)
            .context("build second operand")?;

        for &test in &cfg.tests {
            if test == TestKind::Matmul && n > cfg.matmul_cap {
                continue;
            }
            if test == TestKind::EwiseMul && n > cfg.ewise_cap {
                continue;
            }

            let (runs, out, nnz_in_a, nnz_in_b) = match test {
                TestKind::CtorNum => {
                    let (runs, out) = time_reps(cfg.reps, || {
                        Assoc::from_triples(&data.rows, &data.cols, &data.num_vals)
                            .expect("generated triples are well formed")
                    });
                    (runs, out, data.rows.len(), 0)
                }
                TestKind::CtorStr => {
                    let (runs, out) = time_reps(cfg.reps, || {
                        Assoc::from_triples(&data.rows, &data.cols, &data.str_vals)
                            .expect("generated triples are well formed")
                    });
                    (runs, out, data.rows.len(), 0)
                }
                TestKind::Add => {
                    let (runs, out) =
                        time_reps(cfg.reps, || a.add(&b).expect("numeric operands"));
                    (runs, out, a.nnz(), b.nnz())
                }
                TestKind::Matmul => {
                    let (runs, out) = time_reps(cfg.reps, || {
                        a.array_product_with(&b, &ring)
                            .expect("numeric operands")
                    });
                    (runs, out, a.nnz(), b.nnz())
                }
                TestKind::EwiseMul => {
                    let (runs, out) = time_reps(cfg.reps, || {
                        a.multiply_elementwise(&b).expect("numeric operands")
                    });
                    (runs, out, a.nnz(), b.nnz())
                }
            };

            out.validate()
                .with_context(|| format!("{test} result failed validation at n={n}"))?;

            let mean_seconds = runs.iter().sum::<f64>() / runs.len() as f64;
            let record = BenchRecord {
                test,
                n,
                mean_seconds,
                runs,
                nnz_in_a,
                nnz_in_b,
                nnz_out: out.nnz(),
            };
            on_record(&record);
            records.push(record);
        }
    }
    Ok(records)
}

/// Tests whose work is expected to grow linearly with the dataset, and which
/// are therefore eligible for the scaling guard.
///
/// `matmul` and `ewise_mul` are excluded: their output sizes depend on key
/// collision statistics, not just input length, so a fixed growth factor
/// would misfire on them.
pub const GUARDED_TESTS: [TestKind; 3] = [TestKind::Add, TestKind::CtorNum, TestKind::CtorStr];

/// Means below this are treated as timer noise and skipped by the guard.
const NOISE_FLOOR_SECONDS: f64 = 1e-4;

/// Flag consecutive-size pairs where a guarded test's mean time grew by more
/// than `factor`, even though the input only doubled.
///
/// Returns one human-readable line per violation; empty means the sweep looks
/// healthy. Pairs whose baseline mean is under 100µs are ignored — at that
/// scale allocator luck dominates and ratios are meaningless.
pub fn check_scaling(records: &[BenchRecord], factor: f64) -> Vec<String> {
    let mut violations = Vec::new();
    for test in GUARDED_TESTS {
        let mut rs: Vec<&BenchRecord> = records.iter().filter(|r| r.test == test).collect();
        rs.sort_by_key(|r| r.n);
        for pair in rs.windows(2) {
            if pair[1].n != pair[0].n + 1 {
                continue;
            }
            if pair[0].mean_seconds < NOISE_FLOOR_SECONDS {
                continue;
            }
            if pair[1].mean_seconds > factor * pair[0].mean_seconds {
                violations.push(format!(
                    "{test}: n={} took {:.6}s but n={} took {:.6}s ({:.1}x, allowed {factor}x)",
                    pair[0].n,
                    pair[0].mean_seconds,
                    pair[1].n,
                    pair[1].mean_seconds,
                    pair[1].mean_seconds / pair[0].mean_seconds,
                ));
            }
        }
    }
    violations
}

/// On-disk representation of a report.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Csv,
    Tsv,
}

impl ReportFormat {
    fn separator(self) -> char {
        match self {
            ReportFormat::Csv => ',',
            ReportFormat::Tsv => '\t',
        }
    }
}

const REPORT_COLUMNS: [&str; 7] = [
    "test",
    "n",
    "mean_seconds",
    "runs",
    "nnz_in_a",
    "nnz_in_b",
    "nnz_out",
];

/// Write records as delimited text, sorted by (test, n), one row per record.
///
/// The `runs` column packs the individual repetitions with `;` so the file
/// stays one-row-per-record. Floats use Rust's shortest round-trip `Display`,
/// so parsing the file back reproduces the exact values.
pub fn write_report(
    mut w: impl Write,
    records: &[BenchRecord],
    format: ReportFormat,
) -> Result<()> {
    let sep = format.separator();
    let mut sorted: Vec<&BenchRecord> = records.iter().collect();
    sorted.sort_by_key(|r| (r.test, r.n));

    let header: Vec<&str> = REPORT_COLUMNS.to_vec();
    writeln!(w, "{}", header.join(&sep.to_string()))?;
    for r in sorted {
        let runs = r
            .runs
            .iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(";");
        let fields = [
            r.test.name().to_string(),
            r.n.to_string(),
            r.mean_seconds.to_string(),
            runs,
            r.nnz_in_a.to_string(),
            r.nnz_in_b.to_string(),
            r.nnz_out.to_string(),
        ];
        writeln!(w, "{}", fields.join(&sep.to_string()))?;
    }
    Ok(())
}

/// Parse a report produced by [`write_report`].
///
/// The separator is sniffed from the header line (a tab means TSV, otherwise
/// CSV), so callers don't need to know how the file was written.
pub fn parse_report(text: &str) -> Result<Vec<BenchRecord>> {
    let mut lines = text.lines();
    let header = lines.next().context("report is empty")?;
    let sep = if header.contains('\t') { '\t' } else { ',' };
    let found: Vec<&str> = header.split(sep).collect();
    ensure!(
        found == REPORT_COLUMNS,
        "unrecognized report header: {header:?}"
    );

    let mut records = Vec::new();
    for (ix, line) in lines.enumerate() {
        let line_no = ix + 2;
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(sep).collect();
        ensure!(
            fields.len() == REPORT_COLUMNS.len(),
            "line {line_no}: expected {} fields, found {}",
            REPORT_COLUMNS.len(),
            fields.len()
        );
        let test: TestKind = fields[0]
            .parse()
            .map_err(|e: String| anyhow::anyhow!(e))
            .with_context(|| format!("line {line_no}: bad test name"))?;
        let n: u32 = fields[1]
            .parse()
            .with_context(|| format!("line {line_no}: bad n"))?;
        let mean_seconds: f64 = fields[2]
            .parse()
            .with_context(|| format!("line {line_no}: bad mean_seconds"))?;
        let runs: Vec<f64> = fields[3]
            .split(';')
            .map(|x| x.parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .with_context(|| format!("line {line_no}: bad runs"))?;
        ensure!(!runs.is_empty(), "line {line_no}: empty runs column");
        let nnz_in_a: usize = fields[4]
            .parse()
            .with_context(|| format!("line {line_no}: bad nnz_in_a"))?;
        let nnz_in_b: usize = fields[5]
            .parse()
            .with_context(|| format!("line {line_no}: bad nnz_in_b"))?;
        let nnz_out: usize = fields[6]
            .parse()
            .with_context(|| format!("line {line_no}: bad nnz_out"))?;
        records.push(BenchRecord {
            test,
            n,
            mean_seconds,
            runs,
            nnz_in_a,
            nnz_in_b,
            nnz_out,
        });
    }
    if records.is_empty() {
        bail!("report contains a header but no records");
    }
    Ok(records)
}

/// Read and parse a report file.
pub fn read_report(path: &Path) -> Result<Vec<BenchRecord>> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("read report {}", path.display()))?;
    parse_report(&text).with_context(|| format!("parse report {}", path.display()))
}

/// Render records as an aligned text table for human eyes.
pub fn render_table(records: &[BenchRecord]) -> String {
    let mut sorted: Vec<&BenchRecord> = records.iter().collect();
    sorted.sort_by_key(|r| (r.test, r.n));

    let mut rows: Vec<[String; 7]> = vec![REPORT_COLUMNS.map(String::from)];
    for r in sorted {
        let runs = r
            .runs
            .iter()
            .map(|x| format!("{x:.6}"))
            .collect::<Vec<_>>()
            .join(";");
        rows.push([
            r.test.name().to_string(),
            r.n.to_string(),
            format!("{:.6}", r.mean_seconds),
            runs,
            r.nnz_in_a.to_string(),
            r.nnz_in_b.to_string(),
            r.nnz_out.to_string(),
        ]);
    }

    let mut widths = [0usize; 7];
    for row in &rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }

    let mut out = String::new();
    for row in &rows {
        let line: Vec<String> = row
            .iter()
            .zip(widths)
            .map(|(cell, w)| format!("{cell:<w$}"))
            .collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_records() -> Vec<BenchRecord> {
        vec![
            BenchRecord {
                test: TestKind::Add,
                n: 5,
                mean_seconds: 0.000125,
                runs: vec![0.000120, 0.000130],
                nnz_in_a: 200,
                nnz_in_b: 210,
                nnz_out: 400,
            },
            BenchRecord {
                test: TestKind::Add,
                n: 6,
                mean_seconds: 0.000300,
                runs: vec![0.000290, 0.000310],
                nnz_in_a: 400,
                nnz_in_b: 420,
                nnz_out: 800,
            },
            BenchRecord {
                test: TestKind::CtorNum,
                n: 5,
                mean_seconds: 1.0 / 3.0,
                runs: vec![0.25, 0.5, 0.25],
                nnz_in_a: 256,
                nnz_in_b: 0,
                nnz_out: 240,
            },
        ]
    }

    #[test]
    fn report_round_trips_exactly_in_both_formats() {
        let records = sample_records();
        for format in [ReportFormat::Csv, ReportFormat::Tsv] {
            let mut buf = Vec::new();
            write_report(&mut buf, &records, format).unwrap();
            let text = String::from_utf8(buf).unwrap();
            let back = parse_report(&text).unwrap();
            // write_report sorts by (test, n); the sample is already sorted.
            assert_eq!(back, records);
        }
    }

    #[test]
    fn report_rows_come_back_sorted() {
        let mut records = sample_records();
        records.reverse();
        let mut buf = Vec::new();
        write_report(&mut buf, &records, ReportFormat::Csv).unwrap();
        let back = parse_report(&String::from_utf8(buf).unwrap()).unwrap();
        let order: Vec<(TestKind, u32)> = back.iter().map(|r| (r.test, r.n)).collect();
        let mut expected = order.clone();
        expected.sort();
        assert_eq!(order, expected);
    }

    #[test]
    fn parse_report_rejects_malformed_input() {
        assert!(parse_report("").is_err());
        assert!(parse_report("bogus,header\n").is_err());
        let header = "test,n,mean_seconds,runs,nnz_in_a,nnz_in_b,nnz_out\n";
        assert!(parse_report(header).is_err(), "header with no records");
        let short_row = format!("{header}add,5,0.1\n");
        assert!(parse_report(&short_row).is_err());
        let bad_test = format!("{header}frobnicate,5,0.1,0.1,1,1,1\n");
        assert!(parse_report(&bad_test).is_err());
        let bad_num = format!("{header}add,five,0.1,0.1,1,1,1\n");
        assert!(parse_report(&bad_num).is_err());
    }

    #[test]
    fn scaling_guard_flags_only_consecutive_superlinear_pairs() {
        let mk = |test, n, mean: f64| BenchRecord {
            test,
            n,
            mean_seconds: mean,
            runs: vec![mean],
            nnz_in_a: 0,
            nnz_in_b: 0,
            nnz_out: 0,
        };
        // 2.4x growth between consecutive sizes: fine at factor 8, flagged at 2.
        let healthy = vec![
            mk(TestKind::Add, 5, 0.001),
            mk(TestKind::Add, 6, 0.0024),
        ];
        assert!(check_scaling(&healthy, 8.0).is_empty());
        assert_eq!(check_scaling(&healthy, 2.0).len(), 1);

        // Sub-noise-floor baselines are skipped entirely.
        let noisy = vec![
            mk(TestKind::Add, 5, 0.00001),
            mk(TestKind::Add, 6, 0.01),
        ];
        assert!(check_scaling(&noisy, 2.0).is_empty());

        // Non-consecutive sizes are never compared.
        let gapped = vec![
            mk(TestKind::Add, 5, 0.001),
            mk(TestKind::Add, 7, 1.0),
        ];
        assert!(check_scaling(&gapped, 2.0).is_empty());

        // Unguarded tests are ignored even when they blow up.
        let matmul = vec![
            mk(TestKind::Matmul, 5, 0.001),
            mk(TestKind::Matmul, 6, 1.0),
        ];
        assert!(check_scaling(&matmul, 2.0).is_empty());
    }

    #[test]
    fn test_kind_names_round_trip() {
        for t in TestKind::ALL {
            assert_eq!(t.name().parse::<TestKind>().unwrap(), t);
        }
        assert!("frobnicate".parse::<TestKind>().is_err());
    }

    #[test]
    fn tiny_sweep_produces_expected_coverage() {
        let cfg = BenchConfig {
            n_min: 3,
            n_max: 5,
            reps: 2,
            seed: 7,
            tests: TestKind::ALL.to_vec(),
            matmul_cap: 4,
            ewise_cap: 17,
        };
        let mut seen = Vec::new();
        let records = run_benchmarks(&cfg, |r| seen.push((r.test, r.n))).unwrap();
        assert_eq!(seen.len(), records.len());

        // Every (test, n) cell is present except matmul above its cap.
        for n in 3..=5 {
            for test in TestKind::ALL {
                let expected = !(test == TestKind::Matmul && n > 4);
                let present = records.iter().any(|r| r.test == test && r.n == n);
                assert_eq!(present, expected, "{test} at n={n}");
            }
        }
        for r in &records {
            assert_eq!(r.runs.len(), 2);
            let mean = r.runs.iter().sum::<f64>() / 2.0;
            assert_eq!(r.mean_seconds, mean);
            assert!(r.runs.iter().all(|&x| x >= 0.0));
            assert!(r.nnz_in_a > 0);
        }
    }

    #[test]
    fn run_benchmarks_rejects_bad_configs() {
        let base = BenchConfig::default();
        let swapped = BenchConfig {
            n_min: 6,
            n_max: 5,
            ..base.clone()
        };
        assert!(run_benchmarks(&swapped, |_| ()).is_err());
        let no_reps = BenchConfig {
            reps: 0,
            n_min: 3,
            n_max: 3,
            ..base.clone()
        };
        assert!(run_benchmarks(&no_reps, |_| ()).is_err());
        let no_tests = BenchConfig {
            tests: vec![],
            n_min: 3,
            n_max: 3,
            ..base
        };
        assert!(run_benchmarks(&no_tests, |_| ()).is_err());
    }

    #[test]
    fn table_render_includes_all_cells() {
        let records = sample_records();
        let table = render_table(&records);
        let lines: Vec<&str> = table.lines().collect();
        assert_eq!(lines.len(), 1 + records.len());
        assert!(lines[0].starts_with("test"));
        assert!(table.contains("ctor_num"));
        assert!(table.contains("0.333333"));
    }
}
