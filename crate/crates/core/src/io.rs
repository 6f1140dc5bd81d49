// SPDX-License-Identifier: Apache-2.0

//! Matrix files and instance generators.
//!
//! Two formats:
//! * `raw`: one line per row, one symbol per byte, code = byte value.
//! * `tokens`: a header `n m`, then `n` lines of `m` whitespace-separated
//!   tokens; tokens get codes `0, 1, ...` in order of first occurrence.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::grid::{Frame, Matrix, SymbolCode};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Raw,
    Tokens,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "raw" => Ok(Format::Raw),
            "tokens" => Ok(Format::Tokens),
            _ => Err(Error::invalid(format!(
                "unknown format {s:?}, expected raw or tokens"
            ))),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Raw => "raw",
            Format::Tokens => "tokens",
        })
    }
}

pub fn parse(bytes: &[u8], format: Format) -> Result<Matrix> {
    match format {
        Format::Raw => parse_raw(bytes),
        Format::Tokens => parse_tokens(bytes),
    }
}

fn lines(bytes: &[u8]) -> Vec<&[u8]> {
    let mut out: Vec<&[u8]> = bytes
        .split(|&b| b == b'\n')
        .map(|l| l.strip_suffix(b"\r").unwrap_or(l))
        .collect();
    if out.last().is_some_and(|l| l.is_empty()) {
        out.pop();
    }
    out
}

fn parse_raw(bytes: &[u8]) -> Result<Matrix> {
    let rows = lines(bytes);
    let Some(first) = rows.first() else {
        return Err(Error::Parse {
            line: 1,
            msg: "empty file".into(),
        });
    };
    let width = first.len();
    if width == 0 {
        return Err(Error::Parse {
            line: 1,
            msg: "empty row".into(),
        });
    }
    let mut cells = Vec::with_capacity(rows.len() * width);
    for (k, row) in rows.iter().enumerate() {
        if row.len() != width {
            return Err(Error::Parse {
                line: k + 1,
                msg: format!("row has {} symbols, expected {width}", row.len()),
            });
        }
        cells.extend(row.iter().map(|&b| SymbolCode::from(b)));
    }
    Matrix::new(rows.len(), width, cells)
}

fn parse_tokens(bytes: &[u8]) -> Result<Matrix> {
    let text = std::str::from_utf8(bytes).map_err(|e| Error::Parse {
        line: 1,
        msg: e.to_string(),
    })?;
    let mut rows = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty());
    let (_, header) = rows.next().ok_or_else(|| Error::Parse {
        line: 1,
        msg: "missing header".into(),
    })?;
    let dims: Vec<usize> = header
        .split_whitespace()
        .map(|t| t.parse::<usize>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|e| Error::Parse {
            line: 1,
            msg: format!("bad header: {e}"),
        })?;
    let &[n, m] = dims.as_slice() else {
        return Err(Error::Parse {
            line: 1,
            msg: "header must be `n m`".into(),
        });
    };
    if n == 0 || m == 0 {
        return Err(Error::Parse {
            line: 1,
            msg: format!("dimensions must be positive, got {n} {m}"),
        });
    }
    let mut codes: HashMap<&str, SymbolCode> = HashMap::new();
    let mut cells = Vec::with_capacity(n * m);
    let mut seen = 0;
    for (k, line) in rows {
        if seen == n {
            return Err(Error::Parse {
                line: k + 1,
                msg: format!("more than {n} rows"),
            });
        }
        let before = cells.len();
        for token in line.split_whitespace() {
            let next = codes.len() as SymbolCode;
            cells.push(*codes.entry(token).or_insert(next));
        }
        if cells.len() - before != m {
            return Err(Error::Parse {
                line: k + 1,
                msg: format!("row has {} tokens, expected {m}", cells.len() - before),
            });
        }
        seen += 1;
    }
    if seen != n {
        return Err(Error::Parse {
            line: text.lines().count() + 1,
            msg: format!("expected {n} rows, found {seen}"),
        });
    }
    Matrix::new(n, m, cells)
}

/// Renders `m`. Raw output needs every code to be a byte other than `\n`
/// and `\r`.
pub fn write(m: &Matrix, format: Format) -> Result<Vec<u8>> {
    let mut out = Vec::new();
    match format {
        Format::Raw => {
            for i in 1..=m.rows() {
                for &c in m.row(i) {
                    match u8::try_from(c) {
                        Ok(b) if b != b'\n' && b != b'\r' => out.push(b),
                        _ => return Err(Error::invalid(format!("code {c} has no raw byte"))),
                    }
                }
                out.push(b'\n');
            }
        }
        Format::Tokens => {
            out.extend(format!("{} {}\n", m.rows(), m.cols()).bytes());
            for i in 1..=m.rows() {
                let row: Vec<String> = m.row(i).iter().map(|c| c.to_string()).collect();
                out.extend(row.join(" ").bytes());
                out.push(b'\n');
            }
        }
    }
    Ok(out)
}

/// Symbols used when generated matrices are written in raw form.
pub const RAW_SYMBOLS: &[u8] = b"abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Instance {
    Random,
    Alternating,
    AllEqual,
    /// Random, with the border of this frame overwritten to match.
    Planted(Frame),
}

/// Deterministic instance of `kind` over `alphabet` symbols. Codes are the
/// bytes of [`RAW_SYMBOLS`], so the result can be written raw.
pub fn generate(
    kind: Instance,
    rows: usize,
    cols: usize,
    alphabet: usize,
    seed: u64,
) -> Result<Matrix> {
    if !(1..=RAW_SYMBOLS.len()).contains(&alphabet) {
        return Err(Error::invalid(format!(
            "alphabet must be in 1..={}, got {alphabet}",
            RAW_SYMBOLS.len()
        )));
    }
    let symbol = |k: usize| SymbolCode::from(RAW_SYMBOLS[k]);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cells: Vec<SymbolCode> = match kind {
        Instance::Random | Instance::Planted(_) => (0..rows * cols)
            .map(|_| symbol(rng.gen_range(0..alphabet)))
            .collect(),
        Instance::Alternating => (0..rows * cols)
            .map(|k| symbol((k / cols + k % cols) % alphabet.max(2).min(RAW_SYMBOLS.len())))
            .collect(),
        Instance::AllEqual => vec![symbol(0); rows * cols],
    };
    let mut m = Matrix::new(rows, cols, cells)?;
    if let Instance::Planted(f) = kind {
        plant(&mut m, &f)?;
    }
    Ok(m)
}

/// Copies the top row of `f` onto its bottom row, then its left column onto
/// its right column.
pub fn plant(m: &mut Matrix, f: &Frame) -> Result<()> {
    if f.u == 0 || f.l == 0 || f.u >= f.d || f.l >= f.r || !m.contains_frame(f) {
        return Err(Error::invalid(format!(
            "cannot plant {f} in a {}x{} matrix",
            m.rows(),
            m.cols()
        )));
    }
    for j in f.l..=f.r {
        m.set(f.d, j, m.get(f.u, j));
    }
    for i in f.u..=f.d {
        m.set(i, f.r, m.get(i, f.l));
    }
    Ok(())
}
