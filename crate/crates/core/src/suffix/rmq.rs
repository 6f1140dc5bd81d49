// SPDX-License-Identifier: Apache-2.0

//! Constant-time range minimum over a static `u32` array.
//!
//! Blocks of 64 values: a sparse table over block minima answers the part of a
//! query spanning whole blocks, and a per-position bitmask of the monotone
//! stack inside each block answers the partial blocks.

const BLOCK: usize = 64;

#[derive(Debug, Clone)]
pub(crate) struct RangeMin {
    values: Vec<u32>,
    // masks[i]: bit k set iff block_start(i) + k is on the minima stack after
    // scanning up to i.
    masks: Vec<u64>,
    // sparse[level][b]: min over blocks b..b + 2^level.
    sparse: Vec<Vec<u32>>,
}

impl RangeMin {
    pub(crate) fn new(values: Vec<u32>) -> Self {
        let n = values.len();
        let mut masks = vec![0u64; n];
        let blocks = n.div_ceil(BLOCK);
        let mut block_min = vec![u32::MAX; blocks];

        for (b, block) in block_min.iter_mut().enumerate() {
            let start = b * BLOCK;
            let end = (start + BLOCK).min(n);
            let mut mask = 0u64;
            for i in start..end {
                // Pop entries not smaller than the new value; ties keep the
                // newer one, which is fine for a min value query.
                while mask != 0 {
                    let top = 63 - mask.leading_zeros() as usize;
                    if values[start + top] >= values[i] {
                        mask &= !(1u64 << top);
                    } else {
                        break;
                    }
                }
                mask |= 1u64 << (i - start);
                masks[i] = mask;
                *block = (*block).min(values[i]);
            }
        }

        let mut sparse = vec![block_min];
        let mut width = 1;
        while 2 * width <= blocks {
            let prev = sparse.last().unwrap();
            let next: Vec<u32> = (0..=blocks - 2 * width)
                .map(|b| prev[b].min(prev[b + width]))
                .collect();
            sparse.push(next);
            width *= 2;
        }

        Self {
            values,
            masks,
            sparse,
        }
    }

    pub(crate) fn values(&self) -> &[u32] {
        &self.values
    }

    #[cfg(test)]
    pub(crate) fn len(&self) -> usize {
        self.values.len()
    }

    #[inline]
    fn in_block(&self, lo: usize, hi: usize) -> u32 {
        let start = lo - lo % BLOCK;
        let mask = self.masks[hi] & (!0u64 << (lo - start));
        self.values[start + mask.trailing_zeros() as usize]
    }

    /// Minimum of `values[lo..=hi]`.
    #[inline]
    pub(crate) fn min(&self, lo: usize, hi: usize) -> u32 {
        debug_assert!(lo <= hi && hi < self.values.len());
        let (bl, bh) = (lo / BLOCK, hi / BLOCK);
        if bl == bh {
            return self.in_block(lo, hi);
        }
        let mut best = self
            .in_block(lo, bl * BLOCK + BLOCK - 1)
            .min(self.in_block(bh * BLOCK, hi));
        if bl + 1 < bh {
            let (a, b) = (bl + 1, bh - 1);
            let level = usize::BITS as usize - 1 - (b - a + 1).leading_zeros() as usize;
            let row = &self.sparse[level];
            best = best.min(row[a]).min(row[b + 1 - (1 << level)]);
        }
        best
    }
}
