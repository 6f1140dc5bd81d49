// SPDX-License-Identifier: Apache-2.0

//! Matrices over integer symbol codes and the frames drawn on them.
//!
//! Every public coordinate is 1-based: row `1` is the top row and column `1`
//! the leftmost column. Cells are stored row-major.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A symbol of the input alphabet. Codes above a matrix's `alphabet_max` are
/// reserved for sentinels.
pub type SymbolCode = u32;

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    cells: Vec<SymbolCode>,
    alphabet_max: SymbolCode,
}

impl Matrix {
    /// Builds a matrix from row-major cells. `alphabet_max` is the largest code
    /// present.
    pub fn new(rows: usize, cols: usize, cells: Vec<SymbolCode>) -> Result<Self> {
        let alphabet_max = cells.iter().copied().max().unwrap_or(0);
        Self::with_alphabet(rows, cols, cells, alphabet_max)
    }

    /// Like [`Matrix::new`] but with an explicit alphabet bound; cells above it
    /// are treated as sentinels.
    pub fn with_alphabet(
        rows: usize,
        cols: usize,
        cells: Vec<SymbolCode>,
        alphabet_max: SymbolCode,
    ) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::invalid(format!(
                "matrix must be non-empty, got {rows}x{cols}"
            )));
        }
        if cells.len() != rows * cols {
            return Err(Error::invalid(format!(
                "{rows}x{cols} matrix needs {} cells, got {}",
                rows * cols,
                cells.len()
            )));
        }
        Ok(Self {
            rows,
            cols,
            cells,
            alphabet_max,
        })
    }

    pub fn from_rows<R: AsRef<[SymbolCode]>>(rows: &[R]) -> Result<Self> {
        let n = rows.len();
        let m = rows.first().map_or(0, |r| r.as_ref().len());
        let mut cells = Vec::with_capacity(n * m);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != m {
                return Err(Error::invalid(format!(
                    "row {} has {} cells, expected {m}",
                    i + 1,
                    row.len()
                )));
            }
            cells.extend_from_slice(row);
        }
        Self::new(n, m, cells)
    }

    /// One row per string, one symbol per byte.
    pub fn from_strs<S: AsRef<str>>(rows: &[S]) -> Result<Self> {
        let rows: Vec<Vec<SymbolCode>> = rows
            .iter()
            .map(|r| r.as_ref().bytes().map(SymbolCode::from).collect())
            .collect();
        Self::from_rows(&rows)
    }

    pub fn filled(rows: usize, cols: usize, code: SymbolCode) -> Result<Self> {
        Self::new(rows, cols, vec![code; rows * cols])
    }

    /// A matrix where every cell holds a different code.
    pub fn distinct(rows: usize, cols: usize) -> Result<Self> {
        Self::new(rows, cols, (0..(rows * cols) as SymbolCode).collect())
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn alphabet_max(&self) -> SymbolCode {
        self.alphabet_max
    }

    /// Largest code stored in any cell, sentinels included.
    pub fn max_code(&self) -> SymbolCode {
        self.cells.iter().copied().max().unwrap_or(0)
    }

    pub fn cells(&self) -> &[SymbolCode] {
        &self.cells
    }

    /// Cell `(i, j)`, 1-based.
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> SymbolCode {
        debug_assert!((1..=self.rows).contains(&i) && (1..=self.cols).contains(&j));
        self.cells[(i - 1) * self.cols + (j - 1)]
    }

    pub fn try_get(&self, i: usize, j: usize) -> Result<SymbolCode> {
        if (1..=self.rows).contains(&i) && (1..=self.cols).contains(&j) {
            Ok(self.get(i, j))
        } else {
            Err(Error::bounds(format!(
                "cell ({i}, {j}) outside {}x{}",
                self.rows, self.cols
            )))
        }
    }

    /// Row `i`, 1-based.
    #[inline]
    pub fn row(&self, i: usize) -> &[SymbolCode] {
        let start = (i - 1) * self.cols;
        &self.cells[start..start + self.cols]
    }

    pub(crate) fn set(&mut self, i: usize, j: usize, code: SymbolCode) {
        self.cells[(i - 1) * self.cols + (j - 1)] = code;
    }

    /// Copy of rows `top..top+height` and columns `left..left+width`, where
    /// `top` and `left` are 0-based offsets.
    pub fn submatrix(&self, top: usize, left: usize, height: usize, width: usize) -> Result<Self> {
        if height == 0 || width == 0 || top + height > self.rows || left + width > self.cols {
            return Err(Error::bounds(format!(
                "submatrix at offset ({top}, {left}) of size {height}x{width} outside {}x{}",
                self.rows, self.cols
            )));
        }
        let mut cells = Vec::with_capacity(height * width);
        for i in top..top + height {
            let start = i * self.cols + left;
            cells.extend_from_slice(&self.cells[start..start + width]);
        }
        Self::with_alphabet(height, width, cells, self.alphabet_max)
    }

    /// Relabels symbols with `0, 1, 2, ...` in row-major order of first
    /// appearance. Equality between cells is preserved.
    pub fn canonicalized(&self) -> Self {
        let mut seen = std::collections::HashMap::new();
        let cells: Vec<SymbolCode> = self
            .cells
            .iter()
            .map(|&c| {
                let next = seen.len() as SymbolCode;
                *seen.entry(c).or_insert(next)
            })
            .collect();
        Self::new(self.rows, self.cols, cells).expect("same shape")
    }

    pub fn contains_frame(&self, f: &Frame) -> bool {
        f.d <= self.rows && f.r <= self.cols
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "Matrix {}x{} (alphabet_max {})",
            self.rows, self.cols, self.alphabet_max
        )?;
        for i in 1..=self.rows {
            let row: Vec<String> = self.row(i).iter().map(|c| c.to_string()).collect();
            writeln!(f, "  {}", row.join(" "))?;
        }
        Ok(())
    }
}

/// `(u, d, l, r)`: top row, bottom row, left column, right column.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Frame {
    pub u: usize,
    pub d: usize,
    pub l: usize,
    pub r: usize,
}

impl Frame {
    pub fn new(u: usize, d: usize, l: usize, r: usize) -> Result<Self> {
        if u == 0 || l == 0 || u >= d || l >= r {
            return Err(Error::invalid(format!(
                "({u}, {d}, {l}, {r}) is not a frame: need 1 <= u < d and 1 <= l < r"
            )));
        }
        Ok(Self { u, d, l, r })
    }

    #[inline]
    pub fn height(&self) -> usize {
        self.d - self.u
    }

    #[inline]
    pub fn width(&self) -> usize {
        self.r - self.l
    }

    #[inline]
    pub fn perimeter(&self) -> usize {
        2 * (self.height() + self.width())
    }

    /// The same rectangle seen in the transposed matrix.
    #[inline]
    pub fn transposed(&self) -> Self {
        Self {
            u: self.l,
            d: self.r,
            l: self.u,
            r: self.d,
        }
    }

    /// Shifts a frame found in a window back into parent coordinates.
    #[inline]
    pub fn offset(&self, rows: usize, cols: usize) -> Self {
        Self {
            u: self.u + rows,
            d: self.d + rows,
            l: self.l + cols,
            r: self.r + cols,
        }
    }

    pub fn contains(&self, p: Position) -> bool {
        (self.u..=self.d).contains(&p.i) && (self.l..=self.r).contains(&p.j)
    }

    /// Preference order among frames: larger perimeter first, then the
    /// lexicographically smallest `(u, l, d, r)`.
    pub fn preference(&self, other: &Self) -> Ordering {
        other.perimeter().cmp(&self.perimeter()).then_with(|| {
            (self.u, self.l, self.d, self.r).cmp(&(other.u, other.l, other.d, other.r))
        })
    }
}

impl fmt::Display for Frame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}, {})", self.u, self.d, self.l, self.r)
    }
}

/// Keeps whichever of two optional frames is preferred.
pub fn better(a: Option<Frame>, b: Option<Frame>) -> Option<Frame> {
    match (a, b) {
        (Some(x), Some(y)) => Some(if y.preference(&x) == Ordering::Less {
            y
        } else {
            x
        }),
        (x, None) => x,
        (None, y) => y,
    }
}

/// A cell position `(i, j)`, 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Position {
    pub i: usize,
    pub j: usize,
}

impl Position {
    pub fn new(i: usize, j: usize) -> Self {
        Self { i, j }
    }
}

pub fn perimeter(f: &Frame) -> usize {
    f.perimeter()
}

/// Whether the top and bottom rows of `f` agree on `[l..r]` and its left and
/// right columns agree on `[u..d]`.
pub fn is_matching(m: &Matrix, f: &Frame) -> Result<bool> {
    if !m.contains_frame(f) {
        return Err(Error::bounds(format!(
            "frame {f} outside {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    let rows_agree = m.row(f.u)[f.l - 1..f.r] == m.row(f.d)[f.l - 1..f.r];
    Ok(rows_agree && (f.u..=f.d).all(|i| m.get(i, f.l) == m.get(i, f.r)))
}

pub fn transpose(m: &Matrix) -> Matrix {
    let (n, w) = (m.rows(), m.cols());
    let mut cells = Vec::with_capacity(n * w);
    for j in 1..=w {
        for i in 1..=n {
            cells.push(m.get(i, j));
        }
    }
    Matrix::with_alphabet(w, n, cells, m.alphabet_max()).expect("same cell count")
}
