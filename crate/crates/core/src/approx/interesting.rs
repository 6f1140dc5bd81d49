// SPDX-License-Identifier: Apache-2.0

//! Interesting pairs of row suffixes.
//!
//! For the row suffixes `S_k = M[k][l..]` at a fixed column `l`, a pair
//! `(i, j)` with `i < j` is interesting when every `S_k` strictly between them
//! shares a shorter prefix with `S_i` than `S_j` does. From each `i` they form
//! one descending chain, found with two range queries per link.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::index::{MatrixIndex, Orientation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct InterestingTriplet {
    pub u: usize,
    pub d: usize,
    pub l: usize,
}

/// Largest LCP between row `i` and any row in `i+1..=j` at `offset`, 0-based.
#[inline]
pub(crate) fn longest_below(rows: &Orientation, offset: usize, i: usize, j: usize) -> usize {
    let lsa = rows.lsa(offset);
    let points = rows.points(offset);
    let pos = lsa.pos_of(i);
    let mut best = 0;
    if pos > 0 {
        if let Some((k, _)) = points.max_second((i + 1, j), (0, pos - 1)) {
            best = rows.lcp(offset, i, k);
        }
    }
    if pos + 1 < lsa.len() {
        if let Some((k, _)) = points.min_second((i + 1, j), (pos + 1, lsa.len() - 1)) {
            best = best.max(rows.lcp(offset, i, k));
        }
    }
    best
}

/// Smallest row in `i+1..=j` attaining [`longest_below`], 0-based.
#[inline]
pub(crate) fn first_longest_below(rows: &Orientation, offset: usize, i: usize, j: usize) -> usize {
    let len = longest_below(rows, offset, i, j);
    let lex = rows.range(offset, i, len);
    rows.points(offset)
        .min_first((i + 1, j), lex)
        .expect("the maximizing row is in range")
        .0
}

/// Walks the chain of interesting partners of row `i` at `offset`, largest
/// first, until `visit` returns false. 0-based.
#[inline]
pub(crate) fn walk_chain(
    rows: &Orientation,
    offset: usize,
    i: usize,
    last: usize,
    mut visit: impl FnMut(usize) -> bool,
) {
    let mut hi = last;
    while hi > i {
        let j = first_longest_below(rows, offset, i, hi);
        if !visit(j) || j == i + 1 {
            return;
        }
        hi = j - 1;
    }
}

fn check(index: &MatrixIndex, l: usize, i: usize, j: usize) -> Result<()> {
    let m = index.matrix();
    if !(1..=m.cols()).contains(&l) || i == 0 || j > m.rows() {
        return Err(Error::bounds(format!(
            "({l}, {i}, {j}) outside {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    if i >= j {
        return Err(Error::invalid(format!("empty row range {}..={j}", i + 1)));
    }
    Ok(())
}

/// `max_{k in i+1..=j} LCP(M[i][l..], M[k][l..])`.
pub fn compute_l(index: &MatrixIndex, l: usize, i: usize, j: usize) -> Result<usize> {
    check(index, l, i, j)?;
    Ok(longest_below(index.rows_fwd(), l - 1, i - 1, j - 1))
}

/// The smallest `k in i+1..=j` attaining [`compute_l`].
pub fn compute_i(index: &MatrixIndex, l: usize, i: usize, j: usize) -> Result<usize> {
    check(index, l, i, j)?;
    Ok(first_longest_below(index.rows_fwd(), l - 1, i - 1, j - 1) + 1)
}

/// All interesting triplets `(u, d, l)`, grouped by column then by `u`, with
/// `d` decreasing inside each group.
pub fn interesting_triplets(index: &MatrixIndex) -> Vec<InterestingTriplet> {
    let m = index.matrix();
    let rows = index.rows_fwd();
    let mut out = Vec::new();
    for offset in 0..m.cols() {
        for i in 0..m.rows() {
            walk_chain(rows, offset, i, m.rows() - 1, |j| {
                out.push(InterestingTriplet {
                    u: i + 1,
                    d: j + 1,
                    l: offset + 1,
                });
                true
            });
        }
    }
    out
}
