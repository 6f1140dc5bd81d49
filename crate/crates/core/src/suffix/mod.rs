// SPDX-License-Identifier: Apache-2.0

//! Suffix arrays, constant-time longest-common-prefix queries, lex-sorted
//! arrays over tuples of strings, and fingerprints (lex ranges of strings that
//! share a prefix).

mod lex;
mod rmq;
mod sais;

pub use lex::{Fingerprint, LexSortedArray, TupleIndex};
pub(crate) use rmq::RangeMin;

use crate::error::{Error, Result};

/// Maps arbitrary ordered symbols onto `0..=upper`, preserving order.
pub(crate) fn compress<T: Ord + Copy>(text: &[T]) -> (Vec<u32>, usize) {
    let mut alphabet: Vec<T> = text.to_vec();
    alphabet.sort_unstable();
    alphabet.dedup();
    let ranks = text
        .iter()
        .map(|c| alphabet.binary_search(c).expect("present") as u32)
        .collect();
    (ranks, alphabet.len().saturating_sub(1))
}

#[derive(Debug, Clone)]
pub struct SuffixArray {
    sa: Vec<u32>,
}

impl SuffixArray {
    pub fn build<T: Ord + Copy>(text: &[T]) -> Result<Self> {
        if text.is_empty() {
            return Err(Error::invalid(
                "cannot build a suffix array of an empty text",
            ));
        }
        if text.len() >= u32::MAX as usize {
            return Err(Error::invalid("text too long"));
        }
        let (ranks, upper) = compress(text);
        Ok(Self::from_ranks(&ranks, upper))
    }

    pub(crate) fn from_ranks(ranks: &[u32], upper: usize) -> Self {
        Self {
            sa: sais::sa_is(ranks, upper),
        }
    }

    pub fn text_length(&self) -> usize {
        self.sa.len()
    }

    /// Suffix start positions in lex order, 1-based.
    pub fn order(&self) -> Vec<usize> {
        self.sa.iter().map(|&p| p as usize + 1).collect()
    }

    pub(crate) fn raw(&self) -> &[u32] {
        &self.sa
    }
}

/// Pairwise LCP of suffixes: Kasai's LCP array plus a range-minimum table.
#[derive(Debug, Clone)]
pub struct LcpIndex {
    rank: Vec<u32>,
    lcp: RangeMin,
}

impl LcpIndex {
    pub fn new<T: Eq>(text: &[T], sa: &SuffixArray) -> Self {
        let n = text.len();
        let sa = sa.raw();
        assert_eq!(sa.len(), n, "suffix array belongs to a different text");
        let mut rank = vec![0u32; n];
        for (r, &p) in sa.iter().enumerate() {
            rank[p as usize] = r as u32;
        }
        // lcp[r] = LCP(suffix sa[r], suffix sa[r + 1])
        let mut lcp = vec![0u32; n.saturating_sub(1)];
        let mut h = 0usize;
        for i in 0..n {
            let r = rank[i] as usize;
            if r + 1 == n {
                h = 0;
                continue;
            }
            let j = sa[r + 1] as usize;
            while i + h < n && j + h < n && text[i + h] == text[j + h] {
                h += 1;
            }
            lcp[r] = h as u32;
            h = h.saturating_sub(1);
        }
        Self {
            rank,
            lcp: RangeMin::new(lcp),
        }
    }

    pub fn text_length(&self) -> usize {
        self.rank.len()
    }

    /// LCP of the suffixes starting at 1-based positions `i` and `j`.
    pub fn query(&self, i: usize, j: usize) -> Result<usize> {
        let n = self.text_length();
        if !(1..=n).contains(&i) || !(1..=n).contains(&j) {
            return Err(Error::bounds(format!(
                "suffix ({i}, {j}) outside text of length {n}"
            )));
        }
        Ok(self.lcp0(i - 1, j - 1))
    }

    /// `LCP(sa[r], sa[r + 1])` for every rank `r`.
    pub(crate) fn adjacent(&self) -> &[u32] {
        self.lcp.values()
    }

    /// Same as [`LcpIndex::query`] on 0-based positions, unchecked.
    #[inline]
    pub(crate) fn lcp0(&self, i: usize, j: usize) -> usize {
        if i == j {
            return self.rank.len() - i;
        }
        let (a, b) = (self.rank[i] as usize, self.rank[j] as usize);
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        self.lcp.min(lo, hi - 1) as usize
    }
}
