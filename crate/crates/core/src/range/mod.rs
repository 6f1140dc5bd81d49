// SPDX-License-Identifier: Apache-2.0

//! Static orthogonal range argmax/argmin over valued integer points.
//!
//! Two backends share one tie order: better value first, then the
//! lexicographically smallest coordinates, then the smallest input index.
//! Low dimensions use a layered range tree; higher ones a kd-tree with
//! branch-and-bound on subtree optima.
//!
//! [`PermutationIndex`] covers the special case where the points are
//! `(k, perm[k])` for a permutation, which is what the matrix index needs.

mod kd;
mod tree;
mod wavelet;

pub use wavelet::PermutationIndex;

use crate::error::{Error, Result};

pub const NEG_INF: i64 = i64::MIN;
pub const POS_INF: i64 = i64::MAX;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValuedPoint {
    pub coords: Vec<i64>,
    pub value: i64,
}

impl ValuedPoint {
    pub fn new(coords: Vec<i64>, value: i64) -> Self {
        Self { coords, value }
    }
}

/// A closed box `[lo[k] ..= hi[k]]` per axis. Use [`NEG_INF`] / [`POS_INF`] for
/// open sides.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RangeBox {
    pub lo: Vec<i64>,
    pub hi: Vec<i64>,
}

impl RangeBox {
    pub fn new(lo: Vec<i64>, hi: Vec<i64>) -> Self {
        assert_eq!(lo.len(), hi.len(), "box bounds of different dimension");
        Self { lo, hi }
    }

    pub fn full(dim: usize) -> Self {
        Self {
            lo: vec![NEG_INF; dim],
            hi: vec![POS_INF; dim],
        }
    }

    pub fn contains(&self, coords: &[i64]) -> bool {
        coords
            .iter()
            .zip(self.lo.iter().zip(&self.hi))
            .all(|(c, (lo, hi))| lo <= c && c <= hi)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Objective {
    Max,
    Min,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Backend {
    /// Layered range tree; dimensions 1 and 2 only.
    Layered,
    KdTree,
}

/// Flat point storage shared by the backends.
#[derive(Debug, Clone)]
pub(crate) struct Points {
    dim: usize,
    coords: Vec<i64>,
    values: Vec<i64>,
}

impl Points {
    #[inline]
    pub(crate) fn len(&self) -> usize {
        self.values.len()
    }

    #[inline]
    pub(crate) fn coord(&self, id: u32, axis: usize) -> i64 {
        self.coords[id as usize * self.dim + axis]
    }

    #[inline]
    pub(crate) fn coords_of(&self, id: u32) -> &[i64] {
        let at = id as usize * self.dim;
        &self.coords[at..at + self.dim]
    }

    #[inline]
    pub(crate) fn value(&self, id: u32) -> i64 {
        self.values[id as usize]
    }

    /// Whether point `a` ranks strictly before point `b` under `obj`.
    #[inline]
    pub(crate) fn beats(&self, obj: Objective, a: u32, b: u32) -> bool {
        let (va, vb) = (self.value(a), self.value(b));
        if va != vb {
            return match obj {
                Objective::Max => va > vb,
                Objective::Min => va < vb,
            };
        }
        match self.coords_of(a).cmp(self.coords_of(b)) {
            std::cmp::Ordering::Equal => a < b,
            ord => ord.is_lt(),
        }
    }

    #[inline]
    pub(crate) fn pick(&self, obj: Objective, a: Option<u32>, b: Option<u32>) -> Option<u32> {
        match (a, b) {
            (Some(x), Some(y)) => Some(if self.beats(obj, y, x) { y } else { x }),
            (x, None) => x,
            (None, y) => y,
        }
    }
}

#[derive(Debug, Clone)]
enum Engine {
    Layered(tree::LayeredTree),
    Kd(kd::KdTree),
}

#[derive(Debug, Clone)]
pub struct RangeIndex {
    points: Points,
    engine: Engine,
}

impl RangeIndex {
    /// Builds with the default backend for `dim`.
    pub fn build(points: &[ValuedPoint], dim: usize) -> Result<Self> {
        let backend = if dim <= 2 {
            Backend::Layered
        } else {
            Backend::KdTree
        };
        Self::build_with(points, dim, backend)
    }

    pub fn build_with(points: &[ValuedPoint], dim: usize, backend: Backend) -> Result<Self> {
        let mut coords = Vec::with_capacity(points.len() * dim);
        for (k, p) in points.iter().enumerate() {
            if p.coords.len() != dim {
                return Err(Error::invalid(format!(
                    "point {k} has {} coordinates, index dimension is {dim}",
                    p.coords.len()
                )));
            }
            coords.extend_from_slice(&p.coords);
        }
        let values = points.iter().map(|p| p.value).collect();
        Self::from_flat(dim, coords, values, backend)
    }

    pub(crate) fn from_flat(
        dim: usize,
        coords: Vec<i64>,
        values: Vec<i64>,
        backend: Backend,
    ) -> Result<Self> {
        if dim == 0 {
            return Err(Error::invalid("dimension must be at least 1"));
        }
        if values.len() >= u32::MAX as usize {
            return Err(Error::invalid("too many points"));
        }
        debug_assert_eq!(coords.len(), values.len() * dim);
        let points = Points {
            dim,
            coords,
            values,
        };
        let engine = match backend {
            Backend::Layered if dim <= 2 => Engine::Layered(tree::LayeredTree::build(&points)),
            Backend::Layered => {
                return Err(Error::invalid(format!(
                    "layered backend supports dimension 1 or 2, got {dim}"
                )))
            }
            Backend::KdTree => Engine::Kd(kd::KdTree::build(&points)),
        };
        Ok(Self { points, engine })
    }

    pub fn dim(&self) -> usize {
        self.points.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.len() == 0
    }

    pub fn point(&self, id: usize) -> ValuedPoint {
        let id = id as u32;
        ValuedPoint::new(self.points.coords_of(id).to_vec(), self.points.value(id))
    }

    /// Input index of the best point inside the box.
    ///
    /// # Panics
    /// If the box dimension differs from the index dimension.
    pub fn query(&self, obj: Objective, bounds: &RangeBox) -> Option<usize> {
        assert_eq!(
            bounds.lo.len(),
            self.dim(),
            "box dimension differs from index dimension"
        );
        self.best_id(obj, &bounds.lo, &bounds.hi)
    }

    pub fn query_max(&self, bounds: &RangeBox) -> Option<ValuedPoint> {
        self.query(Objective::Max, bounds).map(|id| self.point(id))
    }

    pub fn query_min(&self, bounds: &RangeBox) -> Option<ValuedPoint> {
        self.query(Objective::Min, bounds).map(|id| self.point(id))
    }

    #[inline]
    pub(crate) fn best_id(&self, obj: Objective, lo: &[i64], hi: &[i64]) -> Option<usize> {
        if self.is_empty() || lo.iter().zip(hi).any(|(a, b)| a > b) {
            return None;
        }
        let id = match &self.engine {
            Engine::Layered(t) => t.query(&self.points, obj, lo, hi),
            Engine::Kd(t) => t.query(&self.points, obj, lo, hi),
        };
        id.map(|id| id as usize)
    }

    pub(crate) fn coords_of(&self, id: usize) -> &[i64] {
        self.points.coords_of(id as u32)
    }
}

/// Linear scan with the same tie order as [`RangeIndex`].
pub fn scan_best(points: &[ValuedPoint], obj: Objective, bounds: &RangeBox) -> Option<usize> {
    let mut best: Option<usize> = None;
    for (k, p) in points.iter().enumerate() {
        if !bounds.contains(&p.coords) {
            continue;
        }
        best = match best {
            None => Some(k),
            Some(b) => {
                let q = &points[b];
                let wins = match p.value.cmp(&q.value) {
                    std::cmp::Ordering::Equal => p.coords < q.coords,
                    ord => match obj {
                        Objective::Max => ord.is_gt(),
                        Objective::Min => ord.is_lt(),
                    },
                };
                Some(if wins { k } else { b })
            }
        };
    }
    best
}
