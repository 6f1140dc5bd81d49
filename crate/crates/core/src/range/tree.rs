// SPDX-License-Identifier: Apache-2.0

//! Layered range tree for one or two dimensions.

use super::{Objective, Points};

/// Points sorted by one axis, with bottom-up segment trees of argmax and
/// argmin over that order.
#[derive(Debug, Clone)]
pub(crate) struct SortedLayer {
    keys: Vec<i64>,
    best_max: Vec<u32>,
    best_min: Vec<u32>,
}

impl SortedLayer {
    fn build(points: &Points, ids: Vec<u32>, axis: usize) -> Self {
        let n = ids.len();
        let keys = ids.iter().map(|&id| points.coord(id, axis)).collect();
        let mut best_max = vec![0u32; 2 * n];
        let mut best_min = vec![0u32; 2 * n];
        best_max[n..].copy_from_slice(&ids);
        best_min[n..].copy_from_slice(&ids);
        for i in (1..n).rev() {
            let (a, b) = (best_max[2 * i], best_max[2 * i + 1]);
            best_max[i] = if points.beats(Objective::Max, b, a) {
                b
            } else {
                a
            };
            let (a, b) = (best_min[2 * i], best_min[2 * i + 1]);
            best_min[i] = if points.beats(Objective::Min, b, a) {
                b
            } else {
                a
            };
        }
        Self {
            keys,
            best_max,
            best_min,
        }
    }

    fn query(&self, points: &Points, obj: Objective, lo: i64, hi: i64) -> Option<u32> {
        let n = self.keys.len();
        let mut l = self.keys.partition_point(|&k| k < lo) + n;
        let mut r = self.keys.partition_point(|&k| k <= hi) + n;
        let tree = match obj {
            Objective::Max => &self.best_max,
            Objective::Min => &self.best_min,
        };
        let mut best = None;
        while l < r {
            if l & 1 == 1 {
                best = points.pick(obj, best, Some(tree[l]));
                l += 1;
            }
            if r & 1 == 1 {
                r -= 1;
                best = points.pick(obj, best, Some(tree[r]));
            }
            l >>= 1;
            r >>= 1;
        }
        best
    }
}

#[derive(Debug, Clone)]
pub(crate) enum LayeredTree {
    Line(SortedLayer),
    /// Bottom-up segment tree over points sorted by the first axis; node `k`
    /// holds its points sorted by the second axis.
    Plane {
        xs: Vec<i64>,
        nodes: Vec<SortedLayer>,
    },
}

impl LayeredTree {
    pub(crate) fn build(points: &Points) -> Self {
        let n = points.len();
        let mut ids: Vec<u32> = (0..n as u32).collect();
        if points.dim == 1 {
            ids.sort_by_key(|&id| points.coord(id, 0));
            return LayeredTree::Line(SortedLayer::build(points, ids, 0));
        }
        ids.sort_by_key(|&id| points.coord(id, 0));
        let xs = ids.iter().map(|&id| points.coord(id, 0)).collect();

        let mut lists: Vec<Vec<u32>> = vec![Vec::new(); 2 * n];
        for (k, &id) in ids.iter().enumerate() {
            lists[n + k] = vec![id];
        }
        for i in (1..n).rev() {
            let (a, b) = (&lists[2 * i], &lists[2 * i + 1]);
            let mut merged = Vec::with_capacity(a.len() + b.len());
            let (mut p, mut q) = (0, 0);
            while p < a.len() && q < b.len() {
                if points.coord(a[p], 1) <= points.coord(b[q], 1) {
                    merged.push(a[p]);
                    p += 1;
                } else {
                    merged.push(b[q]);
                    q += 1;
                }
            }
            merged.extend_from_slice(&a[p..]);
            merged.extend_from_slice(&b[q..]);
            lists[i] = merged;
        }
        let nodes = lists
            .into_iter()
            .map(|list| SortedLayer::build(points, list, 1))
            .collect();
        LayeredTree::Plane { xs, nodes }
    }

    pub(crate) fn query(
        &self,
        points: &Points,
        obj: Objective,
        lo: &[i64],
        hi: &[i64],
    ) -> Option<u32> {
        match self {
            LayeredTree::Line(layer) => layer.query(points, obj, lo[0], hi[0]),
            LayeredTree::Plane { xs, nodes } => {
                let n = xs.len();
                let mut l = xs.partition_point(|&x| x < lo[0]) + n;
                let mut r = xs.partition_point(|&x| x <= hi[0]) + n;
                let mut best = None;
                while l < r {
                    if l & 1 == 1 {
                        best = points.pick(obj, best, nodes[l].query(points, obj, lo[1], hi[1]));
                        l += 1;
                    }
                    if r & 1 == 1 {
                        r -= 1;
                        best = points.pick(obj, best, nodes[r].query(points, obj, lo[1], hi[1]));
                    }
                    l >>= 1;
                    r >>= 1;
                }
                best
            }
        }
    }
}
