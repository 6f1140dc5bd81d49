// SPDX-License-Identifier: Apache-2.0

//! Exact maximum matching frame.
//!
//! Short frames (height at most `x`) are found row pair by row pair: inside
//! every maximal column range where the two rows agree, columns with equal
//! vertical strings between the rows are grouped by fingerprint and the
//! widest group wins. Tall frames are found by covering the matrix with a
//! grid of anchor positions for each size class `(H, W)` and, per anchor,
//! matching horizontal row pairs against a store of vertical column pairs.

use rayon::prelude::*;
use serde::Serialize;

use crate::grid::{better, Frame, Matrix, Position};
use crate::index::{MatrixIndex, Orientation};
use crate::scds::Scds;

/// Which run produced a frame.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Source {
    Short,
    Tall,
    TransposedShort,
    TransposedTall,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SearchResult {
    pub frame: Option<Frame>,
    pub source: Option<Source>,
}

impl SearchResult {
    fn none() -> Self {
        Self {
            frame: None,
            source: None,
        }
    }

    fn offer(&mut self, frame: Option<Frame>, source: Source) {
        let kept = better(self.frame, frame);
        if kept != self.frame {
            self.frame = kept;
            self.source = Some(source);
        }
    }

    pub fn perimeter(&self) -> Option<usize> {
        self.frame.map(|f| f.perimeter())
    }
}

/// Inclusion-maximal column ranges `[a..b]` (1-based) on which rows `u` and
/// `d` agree, left to right.
pub fn maximal_equal_ranges(m: &Matrix, u: usize, d: usize) -> Vec<(usize, usize)> {
    let (top, bottom) = (m.row(u), m.row(d));
    let mut ranges = Vec::new();
    let mut a = 0;
    while a < top.len() {
        if top[a] != bottom[a] {
            a += 1;
            continue;
        }
        let mut b = a;
        while b + 1 < top.len() && top[b + 1] == bottom[b + 1] {
            b += 1;
        }
        ranges.push((a + 1, b + 1));
        a = b + 1;
    }
    ranges
}

/// Per-worker scratch for the short search.
struct Scratch {
    /// Leftmost column seen per group, valid when `stamp` matches.
    stamp: Vec<u32>,
    first: Vec<u32>,
    generation: u32,
    /// Union-find over lex positions of the columns starting at the top row.
    parent: Vec<u32>,
    /// Lex positions `p` grouped by the LCP of columns at `p` and `p + 1`.
    links: Vec<Vec<u32>>,
}

impl Scratch {
    fn new(size: usize, x: usize) -> Self {
        Self {
            stamp: vec![0; size],
            first: vec![0; size],
            generation: 0,
            parent: vec![0; size],
            links: vec![Vec::new(); x + 2],
        }
    }

    fn reset(&mut self) {
        self.generation += 1;
        if self.generation == u32::MAX {
            self.stamp.iter_mut().for_each(|s| *s = 0);
            self.generation = 1;
        }
    }

    /// First column recorded under `key`, recording `col` if there is none.
    #[inline]
    fn first_or_insert(&mut self, key: usize, col: usize) -> usize {
        if self.stamp[key] == self.generation {
            self.first[key] as usize
        } else {
            self.stamp[key] = self.generation;
            self.first[key] = col as u32;
            col
        }
    }

    #[inline]
    fn find(&mut self, mut p: usize) -> usize {
        while self.parent[p] as usize != p {
            let up = self.parent[self.parent[p] as usize];
            self.parent[p] = up;
            p = up as usize;
        }
        p
    }

    fn link(&mut self, p: usize) {
        let (a, b) = (self.find(p), self.find(p + 1));
        self.parent[b] = a as u32;
    }
}

/// Best short frame whose top row is `top` (0-based).
///
/// Columns agreeing on rows `top..=bottom` are adjacent in the lex order of
/// the column strings starting at `top`, joined by adjacent LCPs of at least
/// `bottom - top + 1`. Bottoms are visited from the lowest up so groups only
/// merge, tracked by a union-find keyed on lex position.
fn short_from(
    m: &Matrix,
    cols: &Orientation,
    top: usize,
    x: usize,
    scratch: &mut Scratch,
) -> Option<Frame> {
    let (n, w) = (m.rows(), m.cols());
    let last = (top + x).min(n - 1);
    let lsa = cols.lsa(top);
    let cap = last - top + 1;
    scratch.links.iter_mut().for_each(Vec::clear);
    for p in 0..w {
        scratch.parent[p] = p as u32;
    }
    for (p, &shared) in cols.adjacent(top).iter().enumerate() {
        let shared = (shared as usize).min(cap);
        if shared > 0 {
            scratch.links[shared].push(p as u32);
        }
    }
    for k in 0..scratch.links[cap].len() {
        let p = scratch.links[cap][k] as usize;
        scratch.link(p);
    }

    let mut best: Option<Frame> = None;
    let upper = m.row(top + 1);
    for bottom in (top + 1..=last).rev() {
        let height = bottom - top;
        if height + 1 < cap {
            for k in 0..scratch.links[height + 1].len() {
                let p = scratch.links[height + 1][k] as usize;
                scratch.link(p);
            }
        }
        let lower = m.row(bottom + 1);
        let mut a = 0;
        while a < w {
            if upper[a] != lower[a] {
                a += 1;
                continue;
            }
            let mut b = a;
            while b + 1 < w && upper[b + 1] == lower[b + 1] {
                b += 1;
            }
            let floor = best.map_or(0, |f| f.perimeter());
            if b > a && 2 * (height + b - a) >= floor {
                scratch.reset();
                let mut widest: Option<(usize, usize)> = None;
                for k in a..=b {
                    let key = scratch.find(lsa.pos_of(k));
                    let first = scratch.first_or_insert(key, k);
                    if first < k && widest.map_or(true, |(l, r)| k - first > r - l) {
                        widest = Some((first, k));
                    }
                }
                if let Some((l, r)) = widest {
                    best = better(
                        best,
                        Some(Frame {
                            u: top + 1,
                            d: bottom + 1,
                            l: l + 1,
                            r: r + 1,
                        }),
                    );
                }
            }
            a = b + 1;
        }
    }
    best
}

/// Maximum matching frame among those with height at most `x`.
pub fn short_frame_search(index: &MatrixIndex, x: usize) -> Option<Frame> {
    let m = index.matrix();
    let (n, w) = (m.rows(), m.cols());
    if n < 2 || w < 2 {
        return None;
    }
    let x = x.clamp(1, n - 1);
    let cols = index.cols_fwd();
    (0..n - 1)
        .into_par_iter()
        .map_init(
            || Scratch::new(w, x),
            |scratch, top| short_from(m, cols, top, x, scratch),
        )
        .reduce(|| None, better)
}

struct Sides<'a> {
    m: &'a Matrix,
    rows_fwd: &'a Orientation,
    rows_rev: &'a Orientation,
    cols_fwd: &'a Orientation,
    cols_rev: &'a Orientation,
}

impl<'a> Sides<'a> {
    fn new(index: &'a MatrixIndex) -> Self {
        Self {
            m: index.matrix(),
            rows_fwd: index.rows_fwd(),
            rows_rev: index.rows_rev(),
            cols_fwd: index.cols_fwd(),
            cols_rev: index.cols_rev(),
        }
    }

    /// Best matching frame containing `(i, j)` with height in
    /// `[ceil(H/2)..H]` and width in `[ceil(W/2)..W]`, ignoring candidates
    /// whose perimeter cannot reach `floor`.
    fn anchored(&self, i: usize, j: usize, h: usize, w: usize, floor: usize) -> Option<Frame> {
        let (n, m) = (self.m.rows(), self.m.cols());
        let (h_lo, w_lo) = (h.div_ceil(2).max(1), w.div_ceil(2).max(1));
        if h == 0 || w == 0 || h_lo >= n || w_lo >= m {
            return None;
        }
        if 2 * (h.min(n - 1) + w.min(m - 1)) < floor {
            return None;
        }

        let row_i = self.m.row(i);
        let mut coords = Vec::new();
        for l in j.saturating_sub(w).max(1)..=j {
            for r in j.max(l + w_lo)..=(l + w).min(m) {
                if row_i[l - 1] != row_i[r - 1] {
                    continue;
                }
                let down = self.cols_fwd.lcp(i - 1, l - 1, r - 1);
                let up = self.cols_rev.lcp(i - 1, l - 1, r - 1);
                let a1 = (i + 1 - up).max(i.saturating_sub(h));
                let a2 = (i + down - 1).min(i + h);
                if a2 - a1 >= h_lo {
                    coords.extend([a1 as i64, a2 as i64, l as i64, r as i64]);
                }
            }
        }
        if coords.is_empty() {
            return None;
        }
        let store = Scds::from_coords(coords);

        let mut best: Option<Frame> = None;
        for u in i.saturating_sub(h).max(1)..=i {
            for d in i.max(u + h_lo)..=(u + h).min(n) {
                if self.m.get(u, j) != self.m.get(d, j) {
                    continue;
                }
                let right = self.rows_fwd.lcp(j - 1, u - 1, d - 1);
                let left = self.rows_rev.lcp(j - 1, u - 1, d - 1);
                let j1 = (j + 1 - left).max(j.saturating_sub(w));
                let j2 = (j + right - 1).min(j + w);
                if j2 - j1 < w_lo {
                    continue;
                }
                let reach = 2 * (d - u + w.min(j2 - j1));
                if reach < floor.max(best.map_or(0, |f| f.perimeter())) {
                    continue;
                }
                if let Some(c) = store.max_compatible_raw(u as i64, d as i64, j1 as i64, j2 as i64)
                {
                    let found = Frame {
                        u,
                        d,
                        l: c[2] as usize,
                        r: c[3] as usize,
                    };
                    best = better(best, Some(found));
                }
            }
        }
        best
    }
}

/// Maximum matching frame containing `p` with height in `[ceil(H/2)..H]`
/// and width in `[ceil(W/2)..W]`.
pub fn phw_frame_search(index: &MatrixIndex, p: Position, h: usize, w: usize) -> Option<Frame> {
    let m = index.matrix();
    if !(1..=m.rows()).contains(&p.i) || !(1..=m.cols()).contains(&p.j) {
        return None;
    }
    Sides::new(index).anchored(p.i, p.j, h, w, 0)
}

/// Anchor coordinates for one axis: multiples of `stride` in `1..=len`, plus
/// `len` itself.
fn anchors(len: usize, stride: usize) -> Vec<usize> {
    let mut out: Vec<usize> = (1..=len / stride).map(|k| k * stride).collect();
    if out.last() != Some(&len) {
        out.push(len);
    }
    out
}

/// Maximum matching frame among those with height at least `x` and height at
/// most width.
pub fn tall_frame_search(index: &MatrixIndex, x: usize) -> Option<Frame> {
    tall_above(index, x, 0)
}

/// Tall search that skips size classes unable to reach `floor`.
fn tall_above(index: &MatrixIndex, x: usize, floor: usize) -> Option<Frame> {
    let m = index.matrix();
    let (n, w) = (m.rows(), m.cols());
    if n < 2 || w < 2 {
        return None;
    }
    let x = x.max(1);
    let scales = |limit: usize, cap: usize| {
        let mut out = Vec::new();
        let mut s = 2 * x;
        while s < cap && s.div_ceil(2) <= limit {
            out.push(s);
            s *= 2;
        }
        out
    };
    let heights = scales(n - 1, usize::MAX);
    let widths = scales(w - 1, 2 * w);
    let mut classes: Vec<(usize, usize, usize)> = heights
        .iter()
        .flat_map(|&hh| {
            widths
                .iter()
                .filter(move |&&ww| hh <= ww)
                .map(move |&ww| (hh, ww))
        })
        .map(|(hh, ww)| (2 * (hh.min(n - 1) + ww.min(w - 1)), hh, ww))
        .collect();
    classes.sort_by(|a, b| b.cmp(a));

    // A frame of height h needs two columns agreeing on h + 1 rows, and
    // likewise for widths.
    let col_run = index.cols_fwd().max_shared_run();
    let row_run = index.rows_fwd().max_shared_run();

    let sides = Sides::new(index);
    let mut best: Option<Frame> = None;
    for (reach, hh, ww) in classes {
        let floor = best.map_or(floor, |f| f.perimeter().max(floor));
        if reach < floor || hh.div_ceil(2) + 1 > col_run || ww.div_ceil(2) + 1 > row_run {
            continue;
        }
        let grid: Vec<(usize, usize)> = anchors(n, hh / 2)
            .into_iter()
            .flat_map(|i| anchors(w, ww / 2).into_iter().map(move |j| (i, j)))
            .collect();
        let found = grid
            .into_par_iter()
            .map(|(i, j)| sides.anchored(i, j, hh, ww, floor))
            .reduce(|| None, better);
        best = better(best, found);
    }
    best
}

fn ceil_sqrt(v: usize) -> usize {
    let mut r = (v as f64).sqrt() as usize;
    while r * r < v {
        r += 1;
    }
    while r > 0 && (r - 1) * (r - 1) >= v {
        r -= 1;
    }
    r
}

/// Maximum matching frame of `m`.
pub fn max_matching_frame(m: &Matrix) -> SearchResult {
    max_matching_frame_indexed(&MatrixIndex::build(m))
}

/// Maximum matching frame of an indexed matrix. Runs short and tall searches
/// on the matrix and its transpose with threshold `ceil(sqrt(width))`, or
/// short searches only with threshold `min(n, m)`, whichever is cheaper.
pub fn max_matching_frame_indexed(index: &MatrixIndex) -> SearchResult {
    let m = index.matrix();
    let (n, w) = (m.rows(), m.cols());
    let mut result = SearchResult::none();
    if n < 2 || w < 2 {
        return result;
    }
    let flipped = index.transposed();
    let (small, large) = (n.min(w), n.max(w));
    let with_tall = ceil_sqrt(large) * ceil_sqrt(large) < small * small;

    if with_tall {
        let (x, xt) = (ceil_sqrt(w), ceil_sqrt(n));
        result.offer(short_frame_search(index, x), Source::Short);
        result.offer(
            short_frame_search(&flipped, xt).map(|f| f.transposed()),
            Source::TransposedShort,
        );
        let floor = result.perimeter().unwrap_or(0);
        result.offer(tall_above(index, x, floor), Source::Tall);
        let floor = result.perimeter().unwrap_or(0);
        result.offer(
            tall_above(&flipped, xt, floor).map(|f| f.transposed()),
            Source::TransposedTall,
        );
    } else {
        result.offer(short_frame_search(index, small), Source::Short);
        result.offer(
            short_frame_search(&flipped, small).map(|f| f.transposed()),
            Source::TransposedShort,
        );
    }
    result
}
