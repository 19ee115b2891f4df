use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use assoc_array::io::generate_bench;
use assoc_bench::{
    check_scaling, read_report, render_table, run_benchmarks, write_report, BenchConfig,
    ReportFormat, TestKind,
};

#[derive(Parser)]
#[command(
    name = "assoc-bench",
    version,
    about = "Generate datasets, time associative array operations, and render reports"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Write one synthetic dataset into a directory as six column files.
    Gen {
        /// Size exponent: the dataset holds 8 * 2^n triples drawn from a
        /// 2^n key space.
        #[arg(long)]
        n: u32,
        /// Seed for the generator; the same (seed, n) always yields the
        /// same dataset.
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Directory for rows.txt, cols.txt, rows2.txt, cols2.txt,
        /// num_vals.txt and string_vals.txt (created if missing).
        #[arg(long)]
        out_dir: PathBuf,
    },
    /// Time the operation suite over a sweep of size exponents.
    Run {
        /// Smallest size exponent (inclusive).
        #[arg(long, default_value_t = 5)]
        n_min: u32,
        /// Largest size exponent (inclusive).
        #[arg(long, default_value_t = 13)]
        n_max: u32,
        /// Timed repetitions per measurement (one extra warmup runs first).
        #[arg(long, default_value_t = 3)]
        reps: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Comma-separated subset of tests to run
        /// (ctor_num, ctor_str, add, matmul, ewise_mul); default is all.
        #[arg(long, value_delimiter = ',')]
        tests: Option<Vec<String>>,
        /// Report file; written to stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Report file format.
        #[arg(long, value_enum, default_value_t = FileFormat::Csv)]
        format: FileFormat,
        /// Skip matmul above this exponent.
        #[arg(long, default_value_t = 17)]
        matmul_cap: u32,
        /// Skip ewise_mul above this exponent.
        #[arg(long, default_value_t = 13)]
        ewise_cap: u32,
        /// Fail (exit 2) if a guarded test's mean time grows by more than
        /// this factor between consecutive exponents; 0 disables the guard.
        #[arg(long, default_value_t = 0.0)]
        guard: f64,
        /// Worker threads for the parallel kernels; 0 means one per core.
        /// Ignored when built without the parallel feature.
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
    /// Re-render an existing report as csv, tsv, or an aligned table.
    Report {
        /// Report file produced by `run` (csv or tsv; sniffed automatically).
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = RenderFormat::Table)]
        format: RenderFormat,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FileFormat {
    Csv,
    Tsv,
}

impl From<FileFormat> for ReportFormat {
    fn from(f: FileFormat) -> ReportFormat {
        match f {
            FileFormat::Csv => ReportFormat::Csv,
            FileFormat::Tsv => ReportFormat::Tsv,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum RenderFormat {
    Csv,
    Tsv,
    Table,
}

fn main() -> ExitCode {
    match real_main() {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn real_main() -> Result<ExitCode> {
    let cli = Cli::parse();
    match cli.cmd {
        Cmd::Gen { n, seed, out_dir } => {
            let data = generate_bench(n, seed)?;
            data.write_dataset(&out_dir)
                .with_context(|| format!("write dataset to {}", out_dir.display()))?;
            eprintln!(
                "wrote {} triples (n={n}, seed={seed}) to {}",
                data.rows.len(),
                out_dir.display()
            );
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Run {
            n_min,
            n_max,
            reps,
            seed,
            tests,
            out,
            format,
            matmul_cap,
            ewise_cap,
            guard,
            threads,
        } => {
            configure_threads(threads)?;
            let tests = match tests {
                None => TestKind::ALL.to_vec(),
                Some(names) => names
                    .iter()
                    .map(|s| s.trim().parse::<TestKind>())
                    .collect::<std::result::Result<Vec<_>, _>>()
                    .map_err(|e| anyhow::anyhow!(e))?,
            };
            let cfg = BenchConfig {
                n_min,
                n_max,
                reps,
                seed,
                tests,
                matmul_cap,
                ewise_cap,
            };
            let records = run_benchmarks(&cfg, |r| {
                eprintln!(
                    "{:<9} n={:<2} mean={:.6}s  out={} entries",
                    r.test.name(),
                    r.n,
                    r.mean_seconds,
                    r.nnz_out
                );
            })?;

            match &out {
                Some(path) => {
                    let file = File::create(path)
                        .with_context(|| format!("create {}", path.display()))?;
                    write_report(BufWriter::new(file), &records, format.into())?;
                    eprintln!("report written to {}", path.display());
                }
                None => {
                    let stdout = io::stdout().lock();
                    write_report(stdout, &records, format.into())?;
                }
            }

            if guard > 0.0 {
                let violations = check_scaling(&records, guard);
                if !violations.is_empty() {
                    for v in &violations {
                        eprintln!("scaling violation: {v}");
                    }
                    return Ok(ExitCode::from(2));
                }
                eprintln!("scaling guard passed (factor {guard})");
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Report { input, format } => {
            let records = read_report(&input)?;
            let mut stdout = io::stdout().lock();
            match format {
                RenderFormat::Csv => write_report(stdout, &records, ReportFormat::Csv)?,
                RenderFormat::Tsv => write_report(stdout, &records, ReportFormat::Tsv)?,
                RenderFormat::Table => stdout.write_all(render_table(&records).as_bytes())?,
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

#[cfg(feature = "parallel")]
fn configure_threads(threads: usize) -> Result<()> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .context("initialize worker threads")
}

#[cfg(not(feature = "parallel"))]
fn configure_threads(threads: usize) -> Result<()> {
    if threads != 1 {
        eprintln!("note: built without the parallel feature; --threads has no effect");
    }
    Ok(())
}
