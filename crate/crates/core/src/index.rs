// SPDX-License-Identifier: Apache-2.0

//! Suffix structures over the rows and columns of a matrix.
//!
//! A *line family* is either the rows or the columns. Its lines are
//! concatenated as `line_1 $_1 line_2 $_2 ... line_K $_K` with distinct
//! sentinels above every cell code. The forward orientation indexes suffixes
//! `line[o..]`; the reverse orientation indexes the reversed prefixes
//! `line[..=o]` read right to left, through the reversed concatenation.
//! Everything beyond the matrix itself is built on first use.

use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::grid::{transpose, Matrix};
use crate::range::PermutationIndex;
use crate::suffix::{compress, Fingerprint, LcpIndex, LexSortedArray, SuffixArray};

/// One orientation of one line family. Line ids and offsets are 0-based.
#[derive(Debug)]
pub(crate) struct Orientation {
    reversed: bool,
    line_len: usize,
    text_len: usize,
    lcp: LcpIndex,
    lsa: Vec<LexSortedArray>,
    /// `adjacent[o][p]`: LCP of the lines at lex positions `p` and `p + 1`.
    adjacent: Vec<Vec<u32>>,
    ranges: Vec<OnceLock<PermutationIndex>>,
}

impl Orientation {
    fn build(text: Vec<u32>, upper: usize, line_len: usize, reversed: bool) -> Self {
        let n = text.len();
        let stride = line_len + 1;
        let sa = SuffixArray::from_ranks(&text, upper);
        let lcp = LcpIndex::new(&text, &sa);
        let between = lcp.adjacent();
        let mut lsa: Vec<Vec<u32>> = vec![Vec::with_capacity(n / stride); line_len];
        let mut adjacent: Vec<Vec<u32>> = vec![Vec::with_capacity(n / stride); line_len];
        let mut last = vec![u32::MAX; line_len];
        // (lcp, rank) with lcp increasing: the minimum of `between` over any
        // suffix of the ranks seen so far.
        let mut minima: Vec<(u32, u32)> = Vec::new();
        for (r, &p) in sa.raw().iter().enumerate() {
            if r > 0 {
                let v = between[r - 1];
                while minima.last().is_some_and(|&(w, _)| w >= v) {
                    minima.pop();
                }
                minima.push((v, r as u32));
            }
            let q = if reversed {
                n - 1 - p as usize
            } else {
                p as usize
            };
            let offset = q % stride;
            if offset < line_len {
                let prev = last[offset];
                if prev != u32::MAX {
                    let k = minima.partition_point(|&(_, rank)| rank <= prev);
                    adjacent[offset].push(minima[k].0);
                }
                last[offset] = r as u32;
                lsa[offset].push((q / stride) as u32);
            }
        }
        Self {
            reversed,
            line_len,
            text_len: n,
            lcp,
            lsa: lsa.into_iter().map(LexSortedArray::from_entries).collect(),
            adjacent,
            ranges: (0..line_len).map(|_| OnceLock::new()).collect(),
        }
    }

    #[inline]
    fn text_pos(&self, line: usize, offset: usize) -> usize {
        let q = line * (self.line_len + 1) + offset;
        if self.reversed {
            self.text_len - 1 - q
        } else {
            q
        }
    }

    /// Length of the string of any line at `offset`.
    #[inline]
    pub(crate) fn span(&self, offset: usize) -> usize {
        if self.reversed {
            offset + 1
        } else {
            self.line_len - offset
        }
    }

    #[inline]
    pub(crate) fn lcp(&self, offset: usize, a: usize, b: usize) -> usize {
        if a == b {
            return self.span(offset);
        }
        self.lcp
            .lcp0(self.text_pos(a, offset), self.text_pos(b, offset))
    }

    #[inline]
    pub(crate) fn lsa(&self, offset: usize) -> &LexSortedArray {
        &self.lsa[offset]
    }

    /// Lex range (0-based, inclusive) of lines sharing `len` symbols with
    /// `line` at `offset`.
    #[inline]
    pub(crate) fn range(&self, offset: usize, line: usize, len: usize) -> (usize, usize) {
        self.lsa[offset].range_of(line, len, |a, b| self.lcp(offset, a, b))
    }

    /// Points `(line, lex position)` at `offset`.
    pub(crate) fn points(&self, offset: usize) -> &PermutationIndex {
        self.ranges[offset].get_or_init(|| {
            let lsa = &self.lsa[offset];
            let positions = (0..lsa.len()).map(|id| lsa.pos_of(id) as u32).collect();
            let ids = (0..lsa.len()).map(|p| lsa.id_at(p) as u32).collect();
            PermutationIndex::from_parts(positions, ids)
        })
    }

    /// LCPs of lex-adjacent lines at `offset`.
    #[inline]
    pub(crate) fn adjacent(&self, offset: usize) -> &[u32] {
        &self.adjacent[offset]
    }

    /// Longest common extension between two distinct lines at a common
    /// offset, over all offsets.
    pub(crate) fn max_shared_run(&self) -> usize {
        self.adjacent
            .iter()
            .flat_map(|a| a.iter().copied())
            .max()
            .unwrap_or(0) as usize
    }
}

/// The rows of a matrix as a line family. Columns are the rows of the
/// transpose.
#[derive(Debug)]
struct Family {
    matrix: Arc<Matrix>,
    forward: OnceLock<Orientation>,
    reverse: OnceLock<Orientation>,
}

impl Family {
    fn new(matrix: Arc<Matrix>) -> Self {
        Self {
            matrix,
            forward: OnceLock::new(),
            reverse: OnceLock::new(),
        }
    }

    fn line_len(&self) -> usize {
        self.matrix.cols()
    }

    /// The concatenation as dense ranks, and its largest rank.
    fn text(&self) -> (Vec<u32>, usize) {
        let m = &*self.matrix;
        let (lines, len) = (m.rows(), m.cols());
        let cells = m.cells().len();
        let max_code = m.max_code() as usize;
        let (ranks, top) = if max_code <= 4 * cells {
            (m.cells().to_vec(), max_code)
        } else {
            compress(m.cells())
        };
        let mut text = Vec::with_capacity(lines * (len + 1));
        for k in 0..lines {
            text.extend_from_slice(&ranks[k * len..(k + 1) * len]);
            text.push((top + 1 + k) as u32);
        }
        (text, top + lines)
    }

    fn forward(&self) -> &Orientation {
        self.forward.get_or_init(|| {
            let (text, upper) = self.text();
            Orientation::build(text, upper, self.line_len(), false)
        })
    }

    fn reverse(&self) -> &Orientation {
        self.reverse.get_or_init(|| {
            let (mut text, upper) = self.text();
            text.reverse();
            Orientation::build(text, upper, self.line_len(), true)
        })
    }
}

/// Which coordinate a [`MatrixIndex`] range query optimizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RangeObjective {
    MinLine,
    MaxLine,
    MinLex,
    MaxLex,
}

/// LCP, lex-sorted arrays, fingerprints and 2D range structures for the rows
/// and columns of a matrix. Cheap to clone; the transposed view shares all
/// structures.
#[derive(Debug, Clone)]
pub struct MatrixIndex {
    matrix: Arc<Matrix>,
    rows: Arc<Family>,
    cols: Arc<Family>,
}

impl MatrixIndex {
    pub fn build(matrix: &Matrix) -> Self {
        Self::from_arc(Arc::new(matrix.clone()))
    }

    pub fn from_arc(matrix: Arc<Matrix>) -> Self {
        let transposed = Arc::new(transpose(&matrix));
        Self {
            rows: Arc::new(Family::new(matrix.clone())),
            cols: Arc::new(Family::new(transposed)),
            matrix,
        }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    /// Index of the transposed matrix: rows and columns swap roles.
    pub fn transposed(&self) -> Self {
        Self {
            matrix: self.cols.matrix.clone(),
            rows: self.cols.clone(),
            cols: self.rows.clone(),
        }
    }

    pub(crate) fn rows_fwd(&self) -> &Orientation {
        self.rows.forward()
    }

    pub(crate) fn rows_rev(&self) -> &Orientation {
        self.rows.reverse()
    }

    pub(crate) fn cols_fwd(&self) -> &Orientation {
        self.cols.forward()
    }

    pub(crate) fn cols_rev(&self) -> &Orientation {
        self.cols.reverse()
    }

    fn check(&self, what: &str, v: usize, max: usize) -> Result<usize> {
        if (1..=max).contains(&v) {
            Ok(v - 1)
        } else {
            Err(Error::bounds(format!("{what} {v} outside 1..={max}")))
        }
    }

    fn check_row(&self, i: usize) -> Result<usize> {
        self.check("row", i, self.matrix.rows())
    }

    fn check_col(&self, j: usize) -> Result<usize> {
        self.check("column", j, self.matrix.cols())
    }

    /// Longest `t` with `M[i][l..l+t-1] == M[j][l..l+t-1]`.
    pub fn row_lcp(&self, l: usize, i: usize, j: usize) -> Result<usize> {
        let (l, i, j) = (self.check_col(l)?, self.check_row(i)?, self.check_row(j)?);
        Ok(self.rows_fwd().lcp(l, i, j))
    }

    /// Longest `t` with `M[i][l-t+1..l] == M[j][l-t+1..l]`.
    pub fn rev_row_lcp(&self, l: usize, i: usize, j: usize) -> Result<usize> {
        let (l, i, j) = (self.check_col(l)?, self.check_row(i)?, self.check_row(j)?);
        Ok(self.rows_rev().lcp(l, i, j))
    }

    /// Longest `t` with columns `j1` and `j2` equal on rows `u..u+t-1`.
    pub fn col_lcp(&self, u: usize, j1: usize, j2: usize) -> Result<usize> {
        let (u, a, b) = (self.check_row(u)?, self.check_col(j1)?, self.check_col(j2)?);
        Ok(self.cols_fwd().lcp(u, a, b))
    }

    /// Longest `t` with columns `j1` and `j2` equal on rows `u-t+1..u`.
    pub fn rev_col_lcp(&self, u: usize, j1: usize, j2: usize) -> Result<usize> {
        let (u, a, b) = (self.check_row(u)?, self.check_col(j1)?, self.check_col(j2)?);
        Ok(self.cols_rev().lcp(u, a, b))
    }

    /// Row ids sorted by `M[i][l..]`, 1-based.
    pub fn row_lsa(&self, l: usize) -> Result<Vec<usize>> {
        Ok(self.rows_fwd().lsa(self.check_col(l)?).entries())
    }

    /// Column ids sorted by `M[u..][j]`, 1-based.
    pub fn col_lsa(&self, u: usize) -> Result<Vec<usize>> {
        Ok(self.cols_fwd().lsa(self.check_row(u)?).entries())
    }

    fn fingerprint(
        side: &Orientation,
        offset: usize,
        line: usize,
        t: usize,
    ) -> Result<Fingerprint> {
        let span = side.span(offset);
        if t > span {
            return Err(Error::invalid(format!(
                "length {t} exceeds the remaining {span} symbols"
            )));
        }
        let (lo, hi) = side.range(offset, line, t);
        Ok(Fingerprint {
            i: lo + 1,
            j: hi + 1,
            m: t,
        })
    }

    /// Lex range of rows whose `t` symbols from column `l` equal row `i`'s.
    pub fn row_fingerprint(&self, l: usize, i: usize, t: usize) -> Result<Fingerprint> {
        let (l, i) = (self.check_col(l)?, self.check_row(i)?);
        Self::fingerprint(self.rows_fwd(), l, i, t)
    }

    /// Lex range of columns whose `t` symbols from row `u` equal column `j`'s.
    pub fn col_fingerprint(&self, u: usize, j: usize, t: usize) -> Result<Fingerprint> {
        let (u, j) = (self.check_row(u)?, self.check_col(j)?);
        Self::fingerprint(self.cols_fwd(), u, j, t)
    }

    fn range_query(
        side: &Orientation,
        offset: usize,
        lines: (usize, usize),
        lex: (usize, usize),
        obj: RangeObjective,
    ) -> Option<(usize, usize)> {
        let count = side.lsa(offset).len();
        let clip = |(a, b): (usize, usize)| -> Option<(usize, usize)> {
            let (a, b) = (a.max(1), b.min(count));
            (a <= b).then(|| (a - 1, b - 1))
        };
        let (lines, lex) = (clip(lines)?, clip(lex)?);
        let points = side.points(offset);
        let hit = match obj {
            RangeObjective::MinLine => points.min_first(lines, lex),
            RangeObjective::MaxLine => points.max_first(lines, lex),
            RangeObjective::MinLex => points.min_second(lines, lex),
            RangeObjective::MaxLex => points.max_second(lines, lex),
        };
        hit.map(|(k, p)| (k + 1, p + 1))
    }

    /// Best point `(row, lex position)` among rows in `rows` whose lex
    /// position at column `l` lies in `lex`. Bounds are inclusive and 1-based.
    pub fn row_range_query(
        &self,
        l: usize,
        rows: (usize, usize),
        lex: (usize, usize),
        obj: RangeObjective,
    ) -> Result<Option<(usize, usize)>> {
        let l = self.check_col(l)?;
        Ok(Self::range_query(self.rows_fwd(), l, rows, lex, obj))
    }

    /// Column analogue of [`MatrixIndex::row_range_query`] at row `u`.
    pub fn col_range_query(
        &self,
        u: usize,
        cols: (usize, usize),
        lex: (usize, usize),
        obj: RangeObjective,
    ) -> Result<Option<(usize, usize)>> {
        let u = self.check_row(u)?;
        Ok(Self::range_query(self.cols_fwd(), u, cols, lex, obj))
    }

    /// Longest horizontal run shared by two distinct rows at the same
    /// columns.
    pub fn max_row_run(&self) -> usize {
        self.rows_fwd().max_shared_run()
    }

    /// Longest vertical run shared by two distinct columns at the same rows.
    pub fn max_col_run(&self) -> usize {
        self.cols_fwd().max_shared_run()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn alternating() -> Matrix {
        Matrix::from_strs(&["abab", "baba", "abab", "baba"]).unwrap()
    }

    #[test]
    fn lsa_examples() {
        let one = MatrixIndex::build(&Matrix::from_strs(&["x"]).unwrap());
        assert_eq!(one.row_lsa(1).unwrap(), vec![1]);
        assert_eq!(one.col_lsa(1).unwrap(), vec![1]);

        let two = MatrixIndex::build(&Matrix::from_strs(&["aba", "aab"]).unwrap());
        assert_eq!(two.row_lsa(1).unwrap(), vec![2, 1]);

        let alt = MatrixIndex::build(&alternating());
        assert_eq!(alt.row_lsa(1).unwrap(), vec![1, 3, 2, 4]);
    }

    #[test]
    fn lcp_examples() {
        let x = MatrixIndex::build(&alternating());
        assert_eq!(x.row_lcp(1, 1, 3).unwrap(), 4);
        assert_eq!(x.row_lcp(1, 1, 2).unwrap(), 0);
        assert_eq!(x.row_lcp(2, 2, 2).unwrap(), 3);
        assert_eq!(x.rev_row_lcp(4, 1, 3).unwrap(), 4);
        assert_eq!(x.rev_row_lcp(1, 1, 3).unwrap(), 1);
        assert_eq!(x.rev_row_lcp(1, 1, 2).unwrap(), 0);
        assert_eq!(x.col_lcp(1, 1, 3).unwrap(), 4);
        assert_eq!(x.col_lcp(1, 1, 2).unwrap(), 0);
        assert!(x.row_lcp(5, 1, 1).is_err());
        assert!(x.col_lcp(1, 0, 1).is_err());

        let flat = MatrixIndex::build(&Matrix::filled(8, 8, 0).unwrap());
        assert_eq!(flat.col_lcp(4, 1, 5).unwrap(), 5);
        assert_eq!(flat.rev_col_lcp(4, 1, 5).unwrap(), 4);
    }

    #[test]
    fn fingerprint_examples() {
        let x = MatrixIndex::build(&alternating());
        let fp = x.row_fingerprint(1, 1, 4).unwrap();
        let lsa = x.row_lsa(1).unwrap();
        let mut members = lsa[fp.i - 1..fp.j].to_vec();
        members.sort();
        assert_eq!(members, vec![1, 3]);
        assert_eq!(
            x.row_fingerprint(2, 3, 0).unwrap(),
            Fingerprint { i: 1, j: 4, m: 0 }
        );
        assert!(x.row_fingerprint(2, 3, 4).is_err());

        let distinct = MatrixIndex::build(&Matrix::distinct(3, 4).unwrap());
        let fp = distinct.col_fingerprint(1, 2, 1).unwrap();
        assert_eq!(fp.i, fp.j);
    }

    #[test]
    fn range_query_examples() {
        let x = MatrixIndex::build(&alternating());
        let lsa = x.row_lsa(1).unwrap();
        let pos2 = lsa.iter().position(|&r| r == 2).unwrap() + 1;
        assert_eq!(
            x.row_range_query(1, (2, 2), (1, 4), RangeObjective::MinLex)
                .unwrap(),
            Some((2, pos2))
        );
        assert_eq!(
            x.row_range_query(1, (5, 9), (1, 4), RangeObjective::MinLine)
                .unwrap(),
            None
        );
        assert_eq!(
            x.row_range_query(1, (1, 4), (1, 2), RangeObjective::MaxLine)
                .unwrap(),
            Some((3, 2))
        );
    }

    #[test]
    fn transposed_view_swaps_families() {
        let m = Matrix::from_strs(&["abc", "abd"]).unwrap();
        let x = MatrixIndex::build(&m);
        let t = x.transposed();
        assert_eq!(t.matrix(), &transpose(&m));
        assert_eq!(t.col_lcp(1, 1, 2).unwrap(), x.row_lcp(1, 1, 2).unwrap());
        assert_eq!(t.transposed().matrix(), &m);
    }

    #[test]
    fn sentinel_codes_do_not_collide_with_masks() {
        // Cells above alphabet_max behave like ordinary distinct symbols.
        let m = Matrix::with_alphabet(2, 2, vec![0, 1, 0, 2], 0).unwrap();
        let x = MatrixIndex::build(&m);
        assert_eq!(x.row_lcp(1, 1, 2).unwrap(), 1);
        let wide = Matrix::new(2, 2, vec![u32::MAX, 5, u32::MAX, 5]).unwrap();
        assert_eq!(MatrixIndex::build(&wide).row_lcp(1, 1, 2).unwrap(), 2);
    }

    fn naive_row_lcp(m: &Matrix, l: usize, i: usize, j: usize) -> usize {
        (l..=m.cols())
            .take_while(|&c| m.get(i, c) == m.get(j, c))
            .count()
    }

    fn naive_rev_row_lcp(m: &Matrix, l: usize, i: usize, j: usize) -> usize {
        (1..=l)
            .rev()
            .take_while(|&c| m.get(i, c) == m.get(j, c))
            .count()
    }

    fn exhaustive_check(m: &Matrix) {
        let x = MatrixIndex::build(m);
        let t = transpose(m);
        for l in 1..=m.cols() {
            let lsa = x.row_lsa(l).unwrap();
            for w in lsa.windows(2) {
                assert!(m.row(w[0])[l - 1..] <= m.row(w[1])[l - 1..]);
            }
            for i in 1..=m.rows() {
                for j in 1..=m.rows() {
                    let lcp = x.row_lcp(l, i, j).unwrap();
                    assert_eq!(lcp, naive_row_lcp(m, l, i, j));
                    assert!(lcp <= m.cols() - l + 1);
                    assert_eq!(
                        x.rev_row_lcp(l, i, j).unwrap(),
                        naive_rev_row_lcp(m, l, i, j)
                    );
                }
            }
        }
        for u in 1..=m.rows() {
            for a in 1..=m.cols() {
                for b in 1..=m.cols() {
                    assert_eq!(x.col_lcp(u, a, b).unwrap(), naive_row_lcp(&t, u, a, b));
                    assert_eq!(
                        x.rev_col_lcp(u, a, b).unwrap(),
                        naive_rev_row_lcp(&t, u, a, b)
                    );
                }
            }
        }
        for side in [x.rows_fwd(), x.rows_rev(), x.cols_fwd(), x.cols_rev()] {
            for offset in 0..side.lsa.len() {
                let lsa = side.lsa(offset);
                let expected: Vec<u32> = (1..lsa.len())
                    .map(|p| side.lcp(offset, lsa.id_at(p - 1), lsa.id_at(p)) as u32)
                    .collect();
                assert_eq!(side.adjacent(offset), &expected[..]);
            }
        }
    }

    #[test]
    fn exhaustive_binary_matrices() {
        for (n, m) in [(1, 1), (2, 2), (2, 3), (3, 3), (3, 4)] {
            for bits in 0u32..(1 << (n * m)) {
                let cells = (0..n * m).map(|k| (bits >> k) & 1).collect();
                exhaustive_check(&Matrix::new(n, m, cells).unwrap());
            }
        }
    }

    fn matrices(max: usize) -> impl Strategy<Value = Matrix> {
        (1..=max, 1..=max, 1u32..4).prop_flat_map(|(n, m, sigma)| {
            prop::collection::vec(0..sigma, n * m)
                .prop_map(move |cells| Matrix::new(n, m, cells).unwrap())
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn lcp_matches_naive(m in matrices(16)) {
            exhaustive_check(&m);
        }

        #[test]
        fn range_queries_match_scan(m in matrices(20), seed in any::<u64>()) {
            let x = MatrixIndex::build(&m);
            let mut state = seed | 1;
            let mut next = |bound: usize| {
                state ^= state << 13;
                state ^= state >> 7;
                state ^= state << 17;
                (state % bound as u64) as usize + 1
            };
            for _ in 0..50 {
                let l = next(m.cols());
                let lsa = x.row_lsa(l).unwrap();
                let (a, b) = (next(m.rows()), next(m.rows()));
                let (c, d) = (next(m.rows()), next(m.rows()));
                let rows = (a.min(b), a.max(b));
                let lex = (c.min(d), c.max(d));
                let inside: Vec<(usize, usize)> = lsa.iter().enumerate()
                    .map(|(p, &r)| (r, p + 1))
                    .filter(|&(r, p)| rows.0 <= r && r <= rows.1 && lex.0 <= p && p <= lex.1)
                    .collect();
                let q = |obj| x.row_range_query(l, rows, lex, obj).unwrap();
                prop_assert_eq!(q(RangeObjective::MinLine), inside.iter().copied().min_by_key(|t| t.0));
                prop_assert_eq!(q(RangeObjective::MaxLine), inside.iter().copied().max_by_key(|t| t.0));
                prop_assert_eq!(q(RangeObjective::MinLex), inside.iter().copied().min_by_key(|t| t.1));
                prop_assert_eq!(q(RangeObjective::MaxLex), inside.iter().copied().max_by_key(|t| t.1));
            }
        }
    }
}
