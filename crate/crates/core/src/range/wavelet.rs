// SPDX-License-Identifier: Apache-2.0

//! Range queries over the points `(k, perm[k])` of a permutation, answered
//! with a pair of wavelet matrices (one per axis).

#[derive(Debug, Clone)]
struct RankBits {
    words: Vec<u64>,
    // Ones before each word.
    before: Vec<u32>,
}

impl RankBits {
    fn new(bits: impl ExactSizeIterator<Item = bool>) -> Self {
        let n = bits.len();
        let mut words = vec![0u64; n / 64 + 1];
        for (i, b) in bits.enumerate() {
            if b {
                words[i / 64] |= 1 << (i % 64);
            }
        }
        let mut before = Vec::with_capacity(words.len());
        let mut acc = 0u32;
        for w in &words {
            before.push(acc);
            acc += w.count_ones();
        }
        Self { words, before }
    }

    /// Ones in positions `0..i`.
    #[inline]
    fn rank1(&self, i: usize) -> usize {
        let w = i / 64;
        let partial = self.words[w] & ((1u64 << (i % 64)) - 1);
        self.before[w] as usize + partial.count_ones() as usize
    }
}

/// Wavelet matrix over a sequence of values in `0..2^depth`.
#[derive(Debug, Clone)]
struct WaveletMatrix {
    len: usize,
    levels: Vec<(RankBits, usize)>,
}

impl WaveletMatrix {
    fn new(values: &[u32], depth: u32) -> Self {
        let mut current = values.to_vec();
        let mut levels = Vec::with_capacity(depth as usize);
        for level in (0..depth).rev() {
            let bits = RankBits::new(current.iter().map(|&v| (v >> level) & 1 == 1));
            let (zeros, ones): (Vec<u32>, Vec<u32>) =
                current.iter().partition(|&&v| (v >> level) & 1 == 0);
            let zero_count = zeros.len();
            current = zeros;
            current.extend(ones);
            levels.push((bits, zero_count));
        }
        Self {
            len: values.len(),
            levels,
        }
    }

    fn depth(&self) -> u32 {
        self.levels.len() as u32
    }

    /// Count of values `< x` in positions `l..r`.
    fn count_less(&self, mut l: usize, mut r: usize, x: u64) -> usize {
        if x >= 1u64 << self.depth() {
            return r - l;
        }
        let mut count = 0;
        for (k, (bits, zeros)) in self.levels.iter().enumerate() {
            let bit = (x >> (self.depth() - 1 - k as u32)) & 1;
            let (ol, or) = (bits.rank1(l), bits.rank1(r));
            if bit == 1 {
                count += (r - l) - (or - ol);
                l = zeros + ol;
                r = zeros + or;
            } else {
                l -= ol;
                r -= or;
            }
        }
        count
    }

    /// The `k`-th smallest (0-based) value in positions `l..r`.
    fn kth_smallest(&self, mut l: usize, mut r: usize, mut k: usize) -> u32 {
        let mut value = 0u32;
        for (bits, zeros) in &self.levels {
            let (ol, or) = (bits.rank1(l), bits.rank1(r));
            let zero_here = (r - l) - (or - ol);
            value <<= 1;
            if k < zero_here {
                l -= ol;
                r -= or;
            } else {
                k -= zero_here;
                value |= 1;
                l = zeros + ol;
                r = zeros + or;
            }
        }
        value
    }

    /// Smallest value in `lo..=hi` at positions `l..=r`.
    fn min_in(&self, l: usize, r: usize, lo: u32, hi: u32) -> Option<u32> {
        if l > r || r >= self.len || lo > hi {
            return None;
        }
        let below = self.count_less(l, r + 1, lo as u64);
        if below == r + 1 - l {
            return None;
        }
        let v = self.kth_smallest(l, r + 1, below);
        (v <= hi).then_some(v)
    }

    /// Largest value in `lo..=hi` at positions `l..=r`.
    fn max_in(&self, l: usize, r: usize, lo: u32, hi: u32) -> Option<u32> {
        if l > r || r >= self.len || lo > hi {
            return None;
        }
        let upto = self.count_less(l, r + 1, hi as u64 + 1);
        if upto == 0 {
            return None;
        }
        let v = self.kth_smallest(l, r + 1, upto - 1);
        (v >= lo).then_some(v)
    }
}

/// The point set `{(k, perm[k])}` for a permutation `perm` of `0..n`.
/// All coordinates are 0-based and bounds are inclusive.
#[derive(Debug, Clone)]
pub struct PermutationIndex {
    by_first: WaveletMatrix,
    by_second: WaveletMatrix,
    perm: Vec<u32>,
    inverse: Vec<u32>,
}

impl PermutationIndex {
    /// # Panics
    /// If `perm` is not a permutation of `0..perm.len()`.
    pub fn new(perm: Vec<u32>) -> Self {
        let n = perm.len();
        let mut inverse = vec![u32::MAX; n];
        for (k, &v) in perm.iter().enumerate() {
            assert!(
                (v as usize) < n && inverse[v as usize] == u32::MAX,
                "not a permutation"
            );
            inverse[v as usize] = k as u32;
        }
        Self::from_parts(perm, inverse)
    }

    pub(crate) fn from_parts(perm: Vec<u32>, inverse: Vec<u32>) -> Self {
        let depth = (usize::BITS - perm.len().max(2).saturating_sub(1).leading_zeros()).max(1);
        Self {
            by_first: WaveletMatrix::new(&perm, depth),
            by_second: WaveletMatrix::new(&inverse, depth),
            perm,
            inverse,
        }
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    /// Point in the box with the smallest second coordinate.
    pub fn min_second(
        &self,
        first: (usize, usize),
        second: (usize, usize),
    ) -> Option<(usize, usize)> {
        let v = self
            .by_first
            .min_in(first.0, first.1, clamp(second.0), clamp(second.1))? as usize;
        Some((self.inverse[v] as usize, v))
    }

    /// Point in the box with the largest second coordinate.
    pub fn max_second(
        &self,
        first: (usize, usize),
        second: (usize, usize),
    ) -> Option<(usize, usize)> {
        let v = self
            .by_first
            .max_in(first.0, first.1, clamp(second.0), clamp(second.1))? as usize;
        Some((self.inverse[v] as usize, v))
    }

    /// Point in the box with the smallest first coordinate.
    pub fn min_first(
        &self,
        first: (usize, usize),
        second: (usize, usize),
    ) -> Option<(usize, usize)> {
        let k = self
            .by_second
            .min_in(second.0, second.1, clamp(first.0), clamp(first.1))? as usize;
        Some((k, self.perm[k] as usize))
    }

    /// Point in the box with the largest first coordinate.
    pub fn max_first(
        &self,
        first: (usize, usize),
        second: (usize, usize),
    ) -> Option<(usize, usize)> {
        let k = self
            .by_second
            .max_in(second.0, second.1, clamp(first.0), clamp(first.1))? as usize;
        Some((k, self.perm[k] as usize))
    }
}

#[inline]
fn clamp(v: usize) -> u32 {
    v.min(u32::MAX as usize) as u32
}
