// SPDX-License-Identifier: Apache-2.0

//! `(1 - eps)`-approximate maximum matching frame.
//!
//! Frames with a side shorter than `max(2, ceil(9 / eps^2))` are found
//! exactly by the short search on the matrix and its transpose. Longer frames
//! are bucketed into geometric size classes with base `a = 1 + eps/3`; each
//! class is covered by overlapping windows, and a window is only asked
//! whether some matching frame surrounds its inner rectangle. Any such frame
//! is within the ratio of the best frame of its class.

mod decision;
mod interesting;
mod windows;

pub use decision::{decide_surrounding, mask_inner, verify_surrounding};
pub use interesting::{compute_i, compute_l, interesting_triplets, InterestingTriplet};
pub use windows::{decompose, InnerRectangle, Window};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::short_frame_search;
use crate::grid::{better, Frame, Matrix};
use crate::index::MatrixIndex;
use windows::Scale;

/// Epsilon used for the existence decision.
pub const DECISION_EPSILON: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ApproxOptions {
    pub epsilon: f64,
    /// Overrides the side length below which frames are searched exactly.
    /// Values below the default void the ratio guarantee, and small ones make
    /// the window stride degenerate, which is reported as an error.
    pub exact_below: Option<usize>,
}

impl ApproxOptions {
    pub fn new(epsilon: f64) -> Self {
        Self {
            epsilon,
            exact_below: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct ApproxStats {
    /// Side length handled by the exact short search.
    pub exact_below: usize,
    pub classes: usize,
    pub classes_searched: usize,
    pub windows_searched: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ApproxReport {
    pub frame: Option<Frame>,
    pub stats: ApproxStats,
}

/// Default exact-search threshold for `epsilon`.
pub fn exact_threshold(epsilon: f64) -> usize {
    ((9.0 / (epsilon * epsilon)).ceil() as usize).max(2)
}

/// A matching frame with perimeter at least `(1 - eps)` times the maximum, or
/// `None` when the matrix has no matching frame.
pub fn approx_max_frame(m: &Matrix, epsilon: f64) -> Result<Option<Frame>> {
    Ok(approx_max_frame_with(m, &ApproxOptions::new(epsilon))?.frame)
}

/// Whether `m` contains any matching frame.
pub fn decide(m: &Matrix) -> Result<bool> {
    Ok(approx_max_frame(m, DECISION_EPSILON)?.is_some())
}

pub fn approx_max_frame_with(m: &Matrix, options: &ApproxOptions) -> Result<ApproxReport> {
    let epsilon = options.epsilon;
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::invalid(format!(
            "epsilon must lie in (0, 1), got {epsilon}"
        )));
    }
    let (n, w) = (m.rows(), m.cols());
    let floor = options
        .exact_below
        .unwrap_or_else(|| exact_threshold(epsilon))
        .max(1);
    let mut stats = ApproxStats {
        exact_below: floor,
        ..Default::default()
    };
    if n < 2 || w < 2 {
        return Ok(ApproxReport { frame: None, stats });
    }

    let index = MatrixIndex::build(m);
    let mut best = short_frame_search(&index, floor);
    best = better(
        best,
        short_frame_search(&index.transposed(), floor).map(|f| f.transposed()),
    );
    if floor >= n - 1 || floor >= w - 1 {
        return Ok(ApproxReport { frame: best, stats });
    }

    // A height h needs two columns agreeing on h + 1 rows; same for widths.
    let col_run = index.max_col_run();
    let row_run = index.max_row_run();
    let scale = Scale::new(epsilon);
    let exponents = |len: usize, run: usize| {
        let start = scale.last_exponent_within(floor + 1);
        (start..).take_while(move |&k| {
            let low = scale.ceil_pow(k);
            low < len && low < run
        })
    };
    let class_reach = |h: i32, w: i32| 2 * (scale.ceil_pow(h + 1) - 1 + scale.ceil_pow(w + 1) - 1);
    let mut classes: Vec<(usize, i32, i32)> = exponents(n, col_run)
        .flat_map(|h| exponents(w, row_run).map(move |v| (h, v)))
        .map(|(h, v)| (class_reach(h, v), h, v))
        .collect();
    classes.sort_by(|a, b| b.cmp(a));
    stats.classes = classes.len();
    drop(index);

    let enough = |best: Option<Frame>, reach: usize| {
        best.is_some_and(|f| f.perimeter() as f64 >= (1.0 - epsilon) * reach as f64)
    };
    let chunk = 4 * rayon::current_num_threads().max(1);
    for (reach, h, v) in classes {
        if enough(best, reach) {
            continue;
        }
        stats.classes_searched += 1;
        let windows = decompose(n, w, epsilon, h as u32, v as u32)?;
        for group in windows.chunks(chunk) {
            if enough(best, reach) {
                break;
            }
            stats.windows_searched += group.len();
            let found = group
                .par_iter()
                .map(|win| -> Result<Option<Frame>> {
                    let sub = m.submatrix(win.top, win.left, win.height, win.width)?;
                    Ok(decide_surrounding(&sub, &win.inner)?.map(|f| f.offset(win.top, win.left)))
                })
                .try_reduce(|| None, |a, b| Ok(better(a, b)))?;
            best = better(best, found);
        }
    }
    Ok(ApproxReport { frame: best, stats })
}
