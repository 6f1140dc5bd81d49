// SPDX-License-Identifier: Apache-2.0

use serde::Serialize;

use super::{LcpIndex, SuffixArray};
use crate::error::{Error, Result};

/// A lex range `[i..j]` (1-based, inclusive) of the strings in a tuple that
/// share a prefix of length `m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Fingerprint {
    pub i: usize,
    pub j: usize,
    pub m: usize,
}

/// Ids of a tuple of strings (0-based internally) in lex order, with ties
/// broken by id.
#[derive(Debug, Clone)]
pub struct LexSortedArray {
    entries: Vec<u32>,
    inverse: Vec<u32>,
}

impl LexSortedArray {
    pub(crate) fn from_entries(entries: Vec<u32>) -> Self {
        let mut inverse = vec![0u32; entries.len()];
        for (pos, &id) in entries.iter().enumerate() {
            inverse[id as usize] = pos as u32;
        }
        Self { entries, inverse }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// String ids in lex order, 1-based.
    pub fn entries(&self) -> Vec<usize> {
        self.entries.iter().map(|&id| id as usize + 1).collect()
    }

    /// Lex position (1-based) of the 1-based string id.
    pub fn position(&self, id: usize) -> usize {
        self.inverse[id - 1] as usize + 1
    }

    #[inline]
    pub(crate) fn id_at(&self, pos: usize) -> usize {
        self.entries[pos] as usize
    }

    #[inline]
    pub(crate) fn pos_of(&self, id: usize) -> usize {
        self.inverse[id] as usize
    }

    /// 0-based lex range of the strings whose LCP with string `id` is at
    /// least `m`. `lcp` takes 0-based ids.
    #[inline]
    pub(crate) fn range_of(
        &self,
        id: usize,
        m: usize,
        lcp: impl Fn(usize, usize) -> usize,
    ) -> (usize, usize) {
        let pos = self.pos_of(id);
        if m == 0 {
            return (0, self.len() - 1);
        }
        let ok = |p: usize| lcp(id, self.id_at(p)) >= m;
        let below = gallop(pos, |step| ok(pos - step));
        let above = gallop(self.len() - 1 - pos, |step| ok(pos + step));
        (pos - below, pos + above)
    }
}

/// Largest `s <= limit` with `ok(s)`, given `ok` is monotone (true then false)
/// and `ok(0)` holds. Exponential search followed by bisection.
#[inline]
fn gallop(limit: usize, ok: impl Fn(usize) -> bool) -> usize {
    let mut good = 0usize;
    let mut step = 1usize;
    let bad = loop {
        if step > limit {
            if limit == good || ok(limit) {
                return limit;
            }
            break limit;
        }
        if !ok(step) {
            break step;
        }
        good = step;
        step *= 2;
    };
    let (mut lo, mut hi) = (good, bad);
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if ok(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// Lex-sorted array, LCP access and fingerprints over an arbitrary tuple of
/// strings. A shorter string sorts before its extensions.
#[derive(Debug, Clone)]
pub struct TupleIndex {
    starts: Vec<usize>,
    lengths: Vec<usize>,
    lsa: LexSortedArray,
    lcp: LcpIndex,
}

impl TupleIndex {
    pub fn new<T: Ord + Copy, S: AsRef<[T]>>(strings: &[S]) -> Result<Self> {
        if strings.is_empty() {
            return Err(Error::invalid("empty tuple"));
        }
        let k = strings.len();
        let mut symbols: Vec<T> = strings
            .iter()
            .flat_map(|s| s.as_ref().iter().copied())
            .collect();
        symbols.sort_unstable();
        symbols.dedup();

        // Terminator of string t is code t, below every symbol.
        let mut text = Vec::new();
        let mut starts = Vec::with_capacity(k);
        let mut lengths = Vec::with_capacity(k);
        for (t, s) in strings.iter().enumerate() {
            let s = s.as_ref();
            starts.push(text.len());
            lengths.push(s.len());
            text.extend(
                s.iter()
                    .map(|c| (k + symbols.binary_search(c).expect("present")) as u32),
            );
            text.push(t as u32);
        }
        let upper = k + symbols.len().saturating_sub(1);
        let sa = SuffixArray::from_ranks(&text, upper);

        let mut owner = vec![u32::MAX; text.len()];
        for t in 0..k {
            owner[starts[t]] = t as u32;
        }
        let entries = sa
            .raw()
            .iter()
            .map(|&p| owner[p as usize])
            .filter(|&t| t != u32::MAX)
            .collect();
        let lcp = LcpIndex::new(&text, &sa);
        Ok(Self {
            starts,
            lengths,
            lsa: LexSortedArray::from_entries(entries),
            lcp,
        })
    }

    pub fn len(&self) -> usize {
        self.starts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.starts.is_empty()
    }

    pub fn lsa(&self) -> &LexSortedArray {
        &self.lsa
    }

    pub fn string_length(&self, id: usize) -> usize {
        self.lengths[id - 1]
    }

    fn check(&self, id: usize) -> Result<()> {
        if (1..=self.len()).contains(&id) {
            Ok(())
        } else {
            Err(Error::bounds(format!(
                "string id {id} outside 1..={}",
                self.len()
            )))
        }
    }

    #[inline]
    pub(crate) fn lcp0(&self, a: usize, b: usize) -> usize {
        if a == b {
            return self.lengths[a];
        }
        self.lcp.lcp0(self.starts[a], self.starts[b])
    }

    /// LCP of strings `a` and `b` (1-based ids).
    pub fn lcp(&self, a: usize, b: usize) -> Result<usize> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.lcp0(a - 1, b - 1))
    }

    /// Lex range of the strings sharing the length-`m` prefix of string `id`.
    pub fn fingerprint(&self, id: usize, m: usize) -> Result<Fingerprint> {
        self.check(id)?;
        let len = self.lengths[id - 1];
        if m > len {
            return Err(Error::invalid(format!(
                "prefix length {m} exceeds string length {len}"
            )));
        }
        let (lo, hi) = self.lsa.range_of(id - 1, m, |a, b| self.lcp0(a, b));
        Ok(Fingerprint {
            i: lo + 1,
            j: hi + 1,
            m,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn gallop_finds_boundary() {
        for limit in 0..40usize {
            for edge in 0..=limit {
                assert_eq!(gallop(limit, |s| s <= edge), edge);
            }
        }
    }

    #[test]
    fn tuple_examples() {
        let tuple = TupleIndex::new(&["aba", "ab", "abc", "b"].map(str::as_bytes)).unwrap();
        assert_eq!(tuple.lsa().entries(), vec![2, 1, 3, 4]);
        assert_eq!(
            tuple.fingerprint(1, 2).unwrap(),
            Fingerprint { i: 1, j: 3, m: 2 }
        );
        assert_eq!(
            tuple.fingerprint(4, 1).unwrap(),
            Fingerprint { i: 4, j: 4, m: 1 }
        );
        assert_eq!(
            tuple.fingerprint(3, 0).unwrap(),
            Fingerprint { i: 1, j: 4, m: 0 }
        );
        assert!(tuple.fingerprint(4, 2).is_err());
        assert!(tuple.fingerprint(5, 0).is_err());
        assert_eq!(tuple.lcp(1, 3).unwrap(), 2);
        assert_eq!(tuple.lcp(2, 2).unwrap(), 2);
    }

    #[test]
    fn equal_strings_tie_by_id() {
        let tuple = TupleIndex::new(&["b", "a", "b", "a"].map(str::as_bytes)).unwrap();
        assert_eq!(tuple.lsa().entries(), vec![2, 4, 1, 3]);
        assert_eq!(tuple.lsa().position(3), 4);
    }

    fn tuples() -> impl Strategy<Value = Vec<Vec<u8>>> {
        prop::collection::vec(prop::collection::vec(0u8..3, 0..6), 1..12)
    }

    proptest! {
        #[test]
        fn lsa_is_sorted_and_fingerprints_are_exact(strings in tuples()) {
            let tuple = TupleIndex::new(&strings).unwrap();
            let order = tuple.lsa().entries();
            for w in order.windows(2) {
                let (a, b) = (&strings[w[0] - 1], &strings[w[1] - 1]);
                prop_assert!(a < b || (a == b && w[0] < w[1]));
            }
            for id in 1..=strings.len() {
                prop_assert_eq!(order[tuple.lsa().position(id) - 1], id);
                for m in 0..=strings[id - 1].len() {
                    let fp = tuple.fingerprint(id, m).unwrap();
                    let prefix = &strings[id - 1][..m];
                    let members: Vec<usize> = order.iter().copied()
                        .filter(|&o| strings[o - 1].starts_with(prefix)).collect();
                    prop_assert_eq!(&order[fp.i - 1..fp.j], &members[..]);
                    for other in 1..=strings.len() {
                        let same = strings[other - 1].len() >= m && strings[other - 1][..m] == *prefix;
                        let fp_other = tuple.fingerprint(other, m.min(strings[other - 1].len()));
                        if strings[other - 1].len() >= m {
                            prop_assert_eq!(same, fp_other.unwrap() == fp);
                        }
                    }
                }
            }
        }
    }
}
