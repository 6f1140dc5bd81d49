// SPDX-License-Identifier: Apache-2.0

//! Deciding whether a window holds a matching frame around its inner
//! rectangle.

use crate::approx::interesting::{walk_chain, InterestingTriplet};
use crate::approx::windows::{InnerRectangle, Window};
use crate::error::{Error, Result};
use crate::grid::{Frame, Matrix, SymbolCode};
use crate::index::MatrixIndex;

fn check_inner(m: &Matrix, inner: &InnerRectangle) -> Result<()> {
    if !inner.is_empty()
        && (inner.u == 0 || inner.l == 0 || inner.d > m.rows() || inner.r > m.cols())
    {
        return Err(Error::bounds(format!(
            "inner rectangle ({}, {}, {}, {}) outside {}x{}",
            inner.u,
            inner.d,
            inner.l,
            inner.r,
            m.rows(),
            m.cols()
        )));
    }
    Ok(())
}

/// Copy of `m` where every cell of `inner` holds its own fresh code above all
/// existing codes.
pub(crate) fn masked(m: &Matrix, inner: &InnerRectangle) -> Matrix {
    let mut out = m.clone();
    if inner.is_empty() {
        return out;
    }
    let mut next = m.max_code() as u64 + 1;
    for i in inner.u..=inner.d {
        for j in inner.l..=inner.r {
            out.set(i, j, next as SymbolCode);
            next += 1;
        }
    }
    out
}

/// The window's sub-matrix of `m` with its inner rectangle masked.
pub fn mask_inner(window: &Window, m: &Matrix) -> Result<Matrix> {
    let sub = m.submatrix(window.top, window.left, window.height, window.width)?;
    check_inner(&sub, &window.inner)?;
    let cells = sub.rows() * sub.cols();
    if sub.max_code() as u64 + cells as u64 >= SymbolCode::MAX as u64 {
        return Err(Error::invalid("no fresh codes left for masking"));
    }
    Ok(masked(&sub, &window.inner))
}

/// A column `r` making `(u, d, l, r)` a matching frame around `inner`, given
/// the index of the masked window.
pub fn verify_surrounding(
    index: &MatrixIndex,
    t: &InterestingTriplet,
    inner: &InnerRectangle,
) -> Option<usize> {
    let m = index.matrix();
    if t.u >= inner.u
        || t.d <= inner.d
        || t.l >= inner.l
        || t.u >= t.d
        || t.d > m.rows()
        || t.l > m.cols()
    {
        return None;
    }
    let agree = index.rows_fwd().lcp(t.l - 1, t.u - 1, t.d - 1);
    let (from, to) = ((inner.r + 1).max(t.l + 1), t.l + agree - 1);
    if from > to {
        return None;
    }
    let cols = index.cols_fwd();
    let lex = cols.range(t.u - 1, t.l - 1, t.d - t.u + 1);
    cols.points(t.u - 1)
        .min_first((from - 1, to - 1), lex)
        .map(|(r, _)| r + 1)
}

/// First matching frame strictly containing a non-empty `inner`, through
/// interesting triplets of the masked window.
fn decide_masked(window: &Matrix, inner: &InnerRectangle) -> Option<Frame> {
    let index = MatrixIndex::build(&masked(window, inner));
    let rows = index.rows_fwd();
    let last = window.rows() - 1;
    for l in 1..inner.l.min(window.cols() + 1) {
        for u in 1..inner.u.min(window.rows() + 1) {
            let mut found = None;
            walk_chain(rows, l - 1, u - 1, last, |j| {
                let d = j + 1;
                if d <= inner.d {
                    return false;
                }
                let t = InterestingTriplet { u, d, l };
                found = verify_surrounding(&index, &t, inner).map(|r| Frame { u, d, l, r });
                found.is_none()
            });
            if found.is_some() {
                return found;
            }
        }
    }
    None
}

/// Row-pair scan used when the inner rectangle is empty in some direction.
fn decide_by_rows(window: &Matrix, inner: &InnerRectangle) -> Option<Frame> {
    let index = MatrixIndex::build(window);
    let cols = index.cols_fwd();
    let (n, w) = (window.rows(), window.cols());
    let mut first = vec![usize::MAX; w];
    for u in 1..inner.u.min(n + 1) {
        for d in (u + 1).max(inner.d + 1)..=n {
            let (top, bottom) = (window.row(u), window.row(d));
            let mut a = 0;
            while a < w {
                if top[a] != bottom[a] {
                    a += 1;
                    continue;
                }
                let mut b = a;
                while b + 1 < w && top[b + 1] == bottom[b + 1] {
                    b += 1;
                }
                let mut touched = Vec::new();
                for k in a..=b {
                    let (key, _) = cols.range(u - 1, k, d - u + 1);
                    if k + 1 < inner.l && first[key] == usize::MAX {
                        first[key] = k;
                        touched.push(key);
                    } else if k + 1 > inner.r && first[key] != usize::MAX {
                        return Some(Frame {
                            u,
                            d,
                            l: first[key] + 1,
                            r: k + 1,
                        });
                    }
                }
                touched.into_iter().for_each(|key| first[key] = usize::MAX);
                a = b + 1;
            }
        }
    }
    None
}

/// Some matching frame of `window` strictly containing `inner`, or `None` if
/// there is none.
pub fn decide_surrounding(window: &Matrix, inner: &InnerRectangle) -> Result<Option<Frame>> {
    check_inner(window, inner)?;
    if inner.is_empty() {
        return Ok(decide_by_rows(window, inner));
    }
    if window.max_code() as u64 + (window.rows() * window.cols()) as u64 >= SymbolCode::MAX as u64 {
        return Err(Error::invalid("no fresh codes left for masking"));
    }
    Ok(decide_masked(window, inner))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::is_matching;

    fn alternating() -> Matrix {
        Matrix::from_strs(&["abab", "baba", "abab", "baba"]).unwrap()
    }

    #[test]
    fn masking() {
        let m = Matrix::filled(4, 4, 3).unwrap();
        let one = masked(&m, &InnerRectangle::new(2, 2, 3, 3));
        assert_eq!(one.get(2, 3), 4);
        assert_eq!(one.cells().iter().filter(|&&c| c != 3).count(), 1);
        let block = masked(&m, &InnerRectangle::new(2, 3, 2, 3));
        let mut codes: Vec<_> = (2..=3)
            .flat_map(|i| (2..=3).map(move |j| (i, j)))
            .map(|(i, j)| block.get(i, j))
            .collect();
        codes.sort();
        codes.dedup();
        assert_eq!(codes.len(), 4);
        assert!(codes.iter().all(|&c| c > 3));

        let window = Window {
            top: 1,
            left: 0,
            height: 3,
            width: 4,
            inner: InnerRectangle::new(2, 2, 2, 3),
        };
        let sub = mask_inner(&window, &alternating()).unwrap();
        assert_eq!(sub.rows(), 3);
        assert_eq!(sub.get(1, 1), alternating().get(2, 1));
        assert!(sub.get(2, 2) > 1 && sub.get(2, 3) > 1);
    }

    #[test]
    fn verify_examples() {
        let inner = InnerRectangle::new(2, 2, 2, 2);
        let x = MatrixIndex::build(&masked(&alternating(), &inner));
        assert_eq!(
            verify_surrounding(&x, &InterestingTriplet { u: 1, d: 3, l: 1 }, &inner),
            Some(3)
        );
        assert_eq!(
            verify_surrounding(&x, &InterestingTriplet { u: 2, d: 4, l: 1 }, &inner),
            None
        );
        let distinct = MatrixIndex::build(&Matrix::distinct(4, 4).unwrap());
        assert_eq!(
            verify_surrounding(&distinct, &InterestingTriplet { u: 1, d: 3, l: 1 }, &inner),
            None
        );
    }

    #[test]
    fn decide_examples() {
        let alt = alternating();
        let f = decide_surrounding(&alt, &InnerRectangle::new(2, 2, 2, 2))
            .unwrap()
            .unwrap();
        assert!(is_matching(&alt, &f).unwrap());
        assert!(f.u < 2 && f.d > 2 && f.l < 2 && f.r > 2);
        let distinct = Matrix::distinct(6, 6).unwrap();
        assert_eq!(
            decide_surrounding(&distinct, &InnerRectangle::new(3, 4, 3, 4)).unwrap(),
            None
        );
        assert!(decide_surrounding(&alt, &InnerRectangle::new(2, 5, 2, 2)).is_err());
    }

    #[test]
    fn empty_inner_falls_back_to_row_scan() {
        let alt = alternating();
        let f = decide_surrounding(&alt, &InnerRectangle::new(3, 2, 2, 2))
            .unwrap()
            .unwrap();
        assert!(is_matching(&alt, &f).unwrap() && f.u < 3 && f.d > 2 && f.l < 2 && f.r > 2);
        assert_eq!(
            decide_surrounding(&alt, &InnerRectangle::new(4, 3, 4, 2))
                .unwrap()
                .unwrap()
                .perimeter(),
            8
        );
    }
}
