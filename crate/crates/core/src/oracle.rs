// SPDX-License-Identifier: Apache-2.0

//! Brute-force reference implementations for small inputs.

use std::collections::BTreeSet;

use crate::approx::InnerRectangle;
use crate::error::{Error, Result};
use crate::grid::{better, Frame, Matrix};
use crate::scds::{HorizontalAlignedPair, VerticalAlignedPair};

/// Largest matrix (in cells) the exhaustive frame searches accept.
pub const MAX_CELLS: usize = 32 * 32;

/// Largest tuple [`brute_interesting_pairs`] accepts.
pub const MAX_TUPLE: usize = 200;

fn guard(m: &Matrix) -> Result<()> {
    let cells = m.rows() * m.cols();
    if cells > MAX_CELLS {
        return Err(Error::TooLarge {
            rows: m.rows(),
            cols: m.cols(),
            limit: MAX_CELLS,
        });
    }
    Ok(())
}

fn matches(m: &Matrix, u: usize, d: usize, l: usize, r: usize) -> bool {
    m.row(u)[l - 1..r] == m.row(d)[l - 1..r] && (u..=d).all(|i| m.get(i, l) == m.get(i, r))
}

fn best_where(m: &Matrix, keep: impl Fn(usize, usize, usize, usize) -> bool) -> Option<Frame> {
    let (n, w) = (m.rows(), m.cols());
    let mut best = None;
    for u in 1..=n {
        for d in u + 1..=n {
            for l in 1..=w {
                for r in l + 1..=w {
                    if keep(u, d, l, r) && matches(m, u, d, l, r) {
                        best = better(best, Some(Frame { u, d, l, r }));
                    }
                }
            }
        }
    }
    best
}

/// Every frame checked directly. Ties go to the smallest `(u, l, d, r)`.
pub fn brute_max_frame(m: &Matrix) -> Result<Option<Frame>> {
    guard(m)?;
    Ok(best_where(m, |_, _, _, _| true))
}

/// Best matching frame strictly containing `inner`.
pub fn brute_surrounding(m: &Matrix, inner: &InnerRectangle) -> Result<Option<Frame>> {
    guard(m)?;
    Ok(best_where(m, |u, d, l, r| {
        inner.surrounded_by(&Frame { u, d, l, r })
    }))
}

fn lcp<T: Eq>(a: &[T], b: &[T]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

/// Pairs `(i, j)`, 1-based, such that every string strictly between them
/// shares a shorter prefix with string `i` than string `j` does.
pub fn brute_interesting_pairs<T: Eq, S: AsRef<[T]>>(
    strings: &[S],
) -> Result<BTreeSet<(usize, usize)>> {
    let n = strings.len();
    if n > MAX_TUPLE {
        return Err(Error::TooLarge {
            rows: n,
            cols: 1,
            limit: MAX_TUPLE,
        });
    }
    let mut pairs = BTreeSet::new();
    for i in 0..n {
        let si = strings[i].as_ref();
        for j in i + 1..n {
            let target = lcp(si, strings[j].as_ref());
            if (i + 1..j).all(|k| lcp(si, strings[k].as_ref()) < target) {
                pairs.insert((i + 1, j + 1));
            }
        }
    }
    Ok(pairs)
}

/// Widest stored pair compatible with `h`; ties go to the smallest
/// `(a1, a2, b1, b2)`.
pub fn brute_max_compatible(
    pairs: &[VerticalAlignedPair],
    h: &HorizontalAlignedPair,
) -> Option<VerticalAlignedPair> {
    pairs
        .iter()
        .filter(|p| p.compatible_with(h))
        .min_by(|p, q| q.distance().cmp(&p.distance()).then_with(|| p.cmp(q)))
        .copied()
}
