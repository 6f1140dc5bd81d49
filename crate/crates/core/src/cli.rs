// SPDX-License-Identifier: Apache-2.0

//! Command-line front end. Results go to stdout as one JSON line (CSV for
//! `bench`), diagnostics to stderr.
//!
//! Exit codes: 0 when a frame was found (or for `gen`/`bench`), 1 when none
//! exists, 2 on bad input.

use std::fmt::Write as _;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::approx::{approx_max_frame, DECISION_EPSILON};
use crate::error::{Error, Result};
use crate::exact::max_matching_frame;
use crate::grid::{Frame, Matrix};
use crate::io::{self, Format, Instance};
use crate::oracle::brute_max_frame;

#[derive(Debug, Parser)]
#[command(
    name = "matching-frames",
    version,
    about = "Maximum-perimeter matching frames in 2D strings"
)]
pub struct Cli {
    /// Worker threads for the solvers.
    #[arg(long, global = true, default_value_t = 1)]
    pub threads: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FileFormat {
    Raw,
    Tokens,
}

impl From<FileFormat> for Format {
    fn from(f: FileFormat) -> Self {
        match f {
            FileFormat::Raw => Format::Raw,
            FileFormat::Tokens => Format::Tokens,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GenKind {
    Random,
    Alternating,
    AllEqual,
    Planted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BenchMode {
    Exact,
    Approx,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact maximum matching frame.
    Exact {
        /// Matrix file, `-` for stdin.
        path: PathBuf,
        #[arg(long, value_enum, default_value = "raw")]
        format: FileFormat,
        /// Use exhaustive search instead (small inputs only).
        #[arg(long)]
        oracle: bool,
    },
    /// Frame within a factor (1 - epsilon) of the maximum.
    Approx {
        path: PathBuf,
        #[arg(long)]
        epsilon: f64,
        #[arg(long, value_enum, default_value = "raw")]
        format: FileFormat,
    },
    /// Whether any matching frame exists.
    Decide {
        path: PathBuf,
        #[arg(long, value_enum, default_value = "raw")]
        format: FileFormat,
    },
    /// Writes a generated matrix to stdout.
    Gen {
        #[arg(value_enum)]
        kind: GenKind,
        rows: usize,
        cols: usize,
        #[arg(long, default_value_t = 2)]
        alphabet: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Planted frame as `u,d,l,r`.
        #[arg(long, value_delimiter = ',')]
        frame: Option<Vec<usize>>,
        #[arg(long, value_enum, default_value = "raw")]
        format: FileFormat,
    },
    /// Median solver time on random square binary matrices, as CSV.
    Bench {
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        #[arg(long, value_enum)]
        mode: BenchMode,
        #[arg(long, default_value_t = 0.5)]
        epsilon: f64,
        #[arg(long, default_value_t = 3)]
        repetitions: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Approx,
    Decide,
    Oracle,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResultRecord {
    pub frame: Option<Frame>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub perimeter: Option<usize>,
    pub mode: Mode,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<f64>,
    pub elapsed_ms: f64,
}

impl ResultRecord {
    fn timed(
        mode: Mode,
        epsilon: Option<f64>,
        run: impl FnOnce() -> Result<Option<Frame>>,
    ) -> Result<Self> {
        let start = Instant::now();
        let frame = run()?;
        let elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
        Ok(Self {
            frame,
            perimeter: frame.map(|f| f.perimeter()),
            mode,
            epsilon,
            elapsed_ms,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("record serializes")
    }
}

fn check_epsilon(epsilon: f64) -> Result<()> {
    if epsilon > 0.0 && epsilon < 1.0 {
        Ok(())
    } else {
        Err(Error::invalid(format!(
            "epsilon must lie in (0, 1), got {epsilon}"
        )))
    }
}

pub fn cmd_exact(m: &Matrix, oracle: bool) -> Result<ResultRecord> {
    if oracle {
        ResultRecord::timed(Mode::Oracle, None, || brute_max_frame(m))
    } else {
        ResultRecord::timed(Mode::Exact, None, || Ok(max_matching_frame(m).frame))
    }
}

pub fn cmd_approx(m: &Matrix, epsilon: f64) -> Result<ResultRecord> {
    check_epsilon(epsilon)?;
    ResultRecord::timed(Mode::Approx, Some(epsilon), || approx_max_frame(m, epsilon))
}

/// Approximation at a fixed epsilon; only the presence of a frame matters.
pub fn cmd_decide(m: &Matrix) -> Result<ResultRecord> {
    ResultRecord::timed(Mode::Decide, None, || approx_max_frame(m, DECISION_EPSILON))
}

pub fn cmd_gen(
    kind: GenKind,
    rows: usize,
    cols: usize,
    alphabet: usize,
    seed: u64,
    frame: Option<Frame>,
    format: Format,
) -> Result<Vec<u8>> {
    let instance = match (kind, frame) {
        (GenKind::Random, _) => Instance::Random,
        (GenKind::Alternating, _) => Instance::Alternating,
        (GenKind::AllEqual, _) => Instance::AllEqual,
        (GenKind::Planted, Some(f)) => Instance::Planted(f),
        (GenKind::Planted, None) => return Err(Error::invalid("planted needs --frame u,d,l,r")),
    };
    let m = io::generate(instance, rows, cols, alphabet, seed)?;
    // Token files are read back with first-occurrence codes.
    let m = if format == Format::Tokens {
        m.canonicalized()
    } else {
        m
    };
    io::write(&m, format)
}

/// Median wall time of `solve` over `repetitions` runs, in milliseconds.
pub fn median_ms(repetitions: usize, mut solve: impl FnMut()) -> f64 {
    let mut times: Vec<f64> = (0..repetitions.max(1))
        .map(|_| {
            let start = Instant::now();
            solve();
            start.elapsed().as_secs_f64() * 1e3
        })
        .collect();
    times.sort_by(f64::total_cmp);
    times[times.len() / 2]
}

pub fn cmd_bench(
    sizes: &[usize],
    mode: BenchMode,
    epsilon: f64,
    repetitions: usize,
    seed: u64,
) -> Result<String> {
    check_epsilon(epsilon)?;
    let mut out = String::from("size,mode,median_ms\n");
    for &n in sizes {
        let m = io::generate(Instance::Random, n, n, 2, seed)?;
        let (name, ms) = match mode {
            BenchMode::Exact => (
                "exact",
                median_ms(repetitions, || {
                    let _ = max_matching_frame(&m);
                }),
            ),
            BenchMode::Approx => (
                "approx",
                median_ms(repetitions, || {
                    let _ = approx_max_frame(&m, epsilon);
                }),
            ),
        };
        writeln!(out, "{n},{name},{ms:.3}").expect("write to string");
    }
    Ok(out)
}

fn read_matrix(path: &Path, format: FileFormat) -> Result<Matrix> {
    let mut bytes = Vec::new();
    let read = if path == Path::new("-") {
        std::io::stdin().read_to_end(&mut bytes)
    } else {
        std::fs::File::open(path).and_then(|mut f| f.read_to_end(&mut bytes))
    };
    read.map_err(|e| Error::invalid(format!("{}: {e}", path.display())))?;
    io::parse(&bytes, format.into())
}

fn execute(cli: Cli) -> Result<ExitCode> {
    let record = match cli.command {
        Command::Exact {
            path,
            format,
            oracle,
        } => cmd_exact(&read_matrix(&path, format)?, oracle)?,
        Command::Approx {
            path,
            epsilon,
            format,
        } => {
            check_epsilon(epsilon)?;
            cmd_approx(&read_matrix(&path, format)?, epsilon)?
        }
        Command::Decide { path, format } => cmd_decide(&read_matrix(&path, format)?)?,
        Command::Gen {
            kind,
            rows,
            cols,
            alphabet,
            seed,
            frame,
            format,
        } => {
            let frame = match frame.as_deref() {
                None => None,
                Some(&[u, d, l, r]) => Some(Frame::new(u, d, l, r)?),
                Some(_) => return Err(Error::invalid("--frame takes four values u,d,l,r")),
            };
            let bytes = cmd_gen(kind, rows, cols, alphabet, seed, frame, format.into())?;
            std::io::stdout()
                .write_all(&bytes)
                .map_err(|e| Error::invalid(e.to_string()))?;
            return Ok(ExitCode::SUCCESS);
        }
        Command::Bench {
            sizes,
            mode,
            epsilon,
            repetitions,
            seed,
        } => {
            print!("{}", cmd_bench(&sizes, mode, epsilon, repetitions, seed)?);
            return Ok(ExitCode::SUCCESS);
        }
    };
    println!("{}", record.to_json());
    Ok(if record.frame.is_some() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

/// Parses `std::env::args` and runs the command.
pub fn run() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads.max(1))
        .build_global()
    {
        eprintln!("matching-frames: {e}");
        return ExitCode::from(2);
    }
    match execute(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("matching-frames: {e}");
            ExitCode::from(2)
        }
    }
}
