// SPDX-License-Identifier: Apache-2.0

//! kd-tree with per-subtree optima, searched by branch and bound.

use super::{Objective, Points};

const LEAF_SIZE: usize = 8;
const NIL: u32 = u32::MAX;

#[derive(Debug, Clone)]
struct Node {
    start: u32,
    end: u32,
    left: u32,
    right: u32,
    best_max: u32,
    best_min: u32,
}

#[derive(Debug, Clone)]
pub(crate) struct KdTree {
    ids: Vec<u32>,
    nodes: Vec<Node>,
    // Bounding boxes, `dim` entries per node.
    low: Vec<i64>,
    high: Vec<i64>,
}

impl KdTree {
    pub(crate) fn build(points: &Points) -> Self {
        let mut tree = KdTree {
            ids: (0..points.len() as u32).collect(),
            nodes: Vec::new(),
            low: Vec::new(),
            high: Vec::new(),
        };
        if points.len() > 0 {
            tree.build_node(points, 0, points.len());
        }
        tree
    }

    fn build_node(&mut self, points: &Points, start: usize, end: usize) -> u32 {
        let dim = points.dim;
        let at = self.nodes.len() as u32;
        let mut low = vec![i64::MAX; dim];
        let mut high = vec![i64::MIN; dim];
        for &id in &self.ids[start..end] {
            for (axis, c) in points.coords_of(id).iter().enumerate() {
                low[axis] = low[axis].min(*c);
                high[axis] = high[axis].max(*c);
            }
        }
        self.low.extend_from_slice(&low);
        self.high.extend_from_slice(&high);
        self.nodes.push(Node {
            start: start as u32,
            end: end as u32,
            left: NIL,
            right: NIL,
            best_max: 0,
            best_min: 0,
        });

        let (best_max, best_min) = if end - start <= LEAF_SIZE {
            let slice = &self.ids[start..end];
            let fold = |obj| {
                slice
                    .iter()
                    .copied()
                    .reduce(|a, b| if points.beats(obj, b, a) { b } else { a })
                    .unwrap()
            };
            (fold(Objective::Max), fold(Objective::Min))
        } else {
            // Split the widest axis at the median.
            let axis = (0..dim)
                .max_by_key(|&k| (high[k] as i128 - low[k] as i128, std::cmp::Reverse(k)))
                .unwrap();
            let mid = start + (end - start) / 2;
            self.ids[start..end]
                .select_nth_unstable_by_key(mid - start, |&id| points.coord(id, axis));
            let left = self.build_node(points, start, mid);
            let right = self.build_node(points, mid, end);
            let (l, r) = (&self.nodes[left as usize], &self.nodes[right as usize]);
            let best_max = if points.beats(Objective::Max, r.best_max, l.best_max) {
                r.best_max
            } else {
                l.best_max
            };
            let best_min = if points.beats(Objective::Min, r.best_min, l.best_min) {
                r.best_min
            } else {
                l.best_min
            };
            let node = &mut self.nodes[at as usize];
            node.left = left;
            node.right = right;
            (best_max, best_min)
        };
        let node = &mut self.nodes[at as usize];
        node.best_max = best_max;
        node.best_min = best_min;
        at
    }

    pub(crate) fn query(
        &self,
        points: &Points,
        obj: Objective,
        lo: &[i64],
        hi: &[i64],
    ) -> Option<u32> {
        if self.nodes.is_empty() {
            return None;
        }
        let mut best = None;
        self.visit(points, obj, lo, hi, 0, &mut best);
        best
    }

    fn visit(
        &self,
        points: &Points,
        obj: Objective,
        lo: &[i64],
        hi: &[i64],
        at: u32,
        best: &mut Option<u32>,
    ) {
        let node = &self.nodes[at as usize];
        let top = match obj {
            Objective::Max => node.best_max,
            Objective::Min => node.best_min,
        };
        if let Some(b) = *best {
            if !points.beats(obj, top, b) {
                return;
            }
        }
        let dim = points.dim;
        let base = at as usize * dim;
        let (low, high) = (&self.low[base..base + dim], &self.high[base..base + dim]);
        let mut inside = true;
        for k in 0..dim {
            if high[k] < lo[k] || low[k] > hi[k] {
                return;
            }
            inside &= lo[k] <= low[k] && high[k] <= hi[k];
        }
        if inside {
            *best = Some(top);
            return;
        }
        if node.left == NIL {
            for &id in &self.ids[node.start as usize..node.end as usize] {
                let c = points.coords_of(id);
                if (0..dim).all(|k| lo[k] <= c[k] && c[k] <= hi[k]) {
                    *best = points.pick(obj, *best, Some(id));
                }
            }
            return;
        }
        let (mut first, mut second) = (node.left, node.right);
        let best_of = |n: u32| {
            let n = &self.nodes[n as usize];
            match obj {
                Objective::Max => n.best_max,
                Objective::Min => n.best_min,
            }
        };
        if points.beats(obj, best_of(second), best_of(first)) {
            std::mem::swap(&mut first, &mut second);
        }
        self.visit(points, obj, lo, hi, first, best);
        self.visit(points, obj, lo, hi, second, best);
    }
}
