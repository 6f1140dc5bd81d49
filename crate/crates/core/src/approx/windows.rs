// SPDX-License-Identifier: Apache-2.0

use serde::Serialize;

use crate::error::{Error, Result};
use crate::grid::Frame;

/// A rectangle inside a window, 1-based and window-relative. Empty when
/// `u > d` or `l > r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct InnerRectangle {
    pub u: usize,
    pub d: usize,
    pub l: usize,
    pub r: usize,
}

impl InnerRectangle {
    pub fn new(u: usize, d: usize, l: usize, r: usize) -> Self {
        Self { u, d, l, r }
    }

    pub fn is_empty(&self) -> bool {
        self.u > self.d || self.l > self.r
    }

    /// Whether `f` strictly contains the rectangle.
    pub fn surrounded_by(&self, f: &Frame) -> bool {
        f.u < self.u && f.d > self.d && f.l < self.l && f.r > self.r
    }
}

/// A sub-matrix at 0-based offset `(top, left)` of its parent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Window {
    pub top: usize,
    pub left: usize,
    pub height: usize,
    pub width: usize,
    pub inner: InnerRectangle,
}

/// Powers of the class base `a = 1 + eps/3`, rounded robustly: values within
/// floating-point noise of an integer are taken as that integer.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Scale {
    pub(crate) epsilon: f64,
    pub(crate) base: f64,
}

impl Scale {
    pub(crate) fn new(epsilon: f64) -> Self {
        Self {
            epsilon,
            base: 1.0 + epsilon / 3.0,
        }
    }

    fn snap(v: f64) -> Option<f64> {
        let r = v.round();
        ((v - r).abs() <= 1e-9 * r.abs().max(1.0)).then_some(r)
    }

    /// `ceil(a^k)`, saturating.
    pub(crate) fn ceil_pow(&self, k: i32) -> usize {
        let v = self.base.powi(k);
        let c = Self::snap(v).unwrap_or_else(|| v.ceil());
        if c >= usize::MAX as f64 {
            usize::MAX
        } else {
            c as usize
        }
    }

    /// `floor(eps * a^(h+1) / 3)`.
    pub(crate) fn stride(&self, h: i32) -> usize {
        let v = self.epsilon * self.base.powi(h + 1) / 3.0;
        let f = Self::snap(v).unwrap_or_else(|| v.floor());
        if f >= usize::MAX as f64 {
            usize::MAX
        } else {
            f as usize
        }
    }

    /// Largest `h >= 0` with `ceil(a^h) <= bound`.
    pub(crate) fn last_exponent_within(&self, bound: usize) -> i32 {
        let mut h = 0;
        while self.ceil_pow(h + 1) <= bound {
            h += 1;
        }
        h
    }
}

/// Window size, offsets and inner band along one axis; `None` when the
/// stride rounds to zero.
fn axis(len: usize, scale: &Scale, k: i32) -> Option<(usize, Vec<usize>, usize, usize)> {
    let size = scale.ceil_pow(k + 2).min(len);
    let stride = scale.stride(k);
    if stride == 0 {
        return None;
    }
    let last = len - size;
    let mut offsets: Vec<usize> = (0..=last / stride).map(|t| t * stride).collect();
    if offsets.last() != Some(&last) {
        offsets.push(last);
    }
    let low = scale.ceil_pow(k);
    // Inner band rows `size - low + 1 ..= low - 1`.
    Some((
        size,
        offsets,
        (size + 1).saturating_sub(low),
        low.saturating_sub(1),
    ))
}

/// Windows for size class `(h, w)`: every frame with height in
/// `[ceil(a^h) .. ceil(a^(h+1)) - 1]` and width in `[ceil(a^w) .. ceil(a^(w+1)) - 1]`
/// strictly contains the inner rectangle of some window.
pub fn decompose(n: usize, m: usize, epsilon: f64, h: u32, w: u32) -> Result<Vec<Window>> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::invalid(format!(
            "epsilon must lie in (0, 1), got {epsilon}"
        )));
    }
    if n == 0 || m == 0 {
        return Err(Error::invalid("empty matrix"));
    }
    let scale = Scale::new(epsilon);
    let (Some(rows), Some(cols)) = (axis(n, &scale, h as i32), axis(m, &scale, w as i32)) else {
        return Err(Error::DegenerateStride { h, w });
    };
    let (height, tops, iu, id) = rows;
    let (width, lefts, il, ir) = cols;
    let inner = InnerRectangle::new(iu, id, il, ir);
    Ok(tops
        .iter()
        .flat_map(|&top| {
            lefts.iter().map(move |&left| Window {
                top,
                left,
                height,
                width,
                inner,
            })
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn powers_snap_to_integers() {
        let s = Scale::new(0.3);
        assert_eq!(s.ceil_pow(0), 1);
        assert_eq!(s.ceil_pow(1), 2);
        assert_eq!(s.ceil_pow(2), 2); // 1.21
        let exact = Scale::new(0.75); // a = 1.25
        assert_eq!(exact.ceil_pow(2), 2); // 1.5625
        assert_eq!(exact.ceil_pow(4), 3); // 2.44...
        assert_eq!(
            Scale {
                epsilon: 3.0,
                base: 2.0
            }
            .ceil_pow(10),
            1024
        );
        assert_eq!(s.last_exponent_within(2), 7);
    }

    #[test]
    fn window_layout() {
        let eps = 0.3;
        let s = Scale::new(eps);
        let h = s.last_exponent_within(20) as u32;
        let windows = decompose(100, 100, eps, h, h).unwrap();
        let size = s.ceil_pow(h as i32 + 2);
        let stride = s.stride(h as i32);
        assert!(windows
            .iter()
            .all(|w| w.height == size && w.top + w.height <= 100 && w.left + w.width <= 100));
        let mut tops: Vec<usize> = windows.iter().map(|w| w.top).collect();
        tops.dedup();
        tops.sort();
        tops.dedup();
        for pair in tops.windows(2).take(tops.len() - 2) {
            assert_eq!(pair[1] - pair[0], stride);
        }
        assert_eq!(*tops.last().unwrap(), 100 - size);
    }

    #[test]
    fn clamped_to_the_matrix() {
        let windows = decompose(10, 7, 0.5, 40, 40).unwrap();
        assert_eq!(windows.len(), 1);
        assert_eq!((windows[0].height, windows[0].width), (10, 7));
    }

    #[test]
    fn degenerate_stride() {
        assert_eq!(
            decompose(50, 50, 0.5, 0, 3),
            Err(Error::DegenerateStride { h: 0, w: 3 })
        );
        assert!(decompose(50, 50, 1.5, 5, 5).is_err());
    }

    #[test]
    fn every_class_frame_is_surrounded_somewhere() {
        let (n, m, eps) = (100usize, 100usize, 0.3);
        let s = Scale::new(eps);
        let h = s.last_exponent_within(20) as u32;
        let w = h + 2;
        let windows = decompose(n, m, eps, h, w).unwrap();
        let (hl, hh) = (s.ceil_pow(h as i32), s.ceil_pow(h as i32 + 1) - 1);
        let (wl, wh) = (s.ceil_pow(w as i32), s.ceil_pow(w as i32 + 1) - 1);
        // Coverage along each axis is independent, so checking (u, d) and
        // (l, r) separately covers every frame in the class.
        let covered =
            |lo: usize,
             hi: usize,
             len: usize,
             get: &dyn Fn(&Window) -> (usize, usize, usize, usize)| {
                for a in 1..=len {
                    for b in a + lo..=(a + hi).min(len) {
                        assert!(windows.iter().any(|win| {
                            let (off, size, ilo, ihi) = get(win);
                            a > off && b > off && a - off < ilo && b - off > ihi && b - off <= size
                        }));
                    }
                }
            };
        covered(hl, hh, n, &|w| (w.top, w.height, w.inner.u, w.inner.d));
        covered(wl, wh, m, &|w| (w.left, w.width, w.inner.l, w.inner.r));
        let bound = (n * m) as f64 / (eps * eps * s.base.powi((h + w) as i32));
        assert!((windows.len() as f64) < 20.0 * bound);
    }
}
