// SPDX-License-Identifier: Apache-2.0

//! Segment compatibility: stores aligned vertical segment pairs and returns,
//! for an aligned horizontal pair, the widest stored pair compatible with it.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::range::{Backend, Objective, RangeIndex, NEG_INF, POS_INF};

/// Columns `b1 < b2` agreeing on rows `a1..=a2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct VerticalAlignedPair {
    pub a1: usize,
    pub a2: usize,
    pub b1: usize,
    pub b2: usize,
}

impl VerticalAlignedPair {
    pub fn new(a1: usize, a2: usize, b1: usize, b2: usize) -> Result<Self> {
        if a1 >= a2 || b1 >= b2 {
            return Err(Error::invalid(format!(
                "vertical pair ({a1}, {a2}, {b1}, {b2}) is not proper"
            )));
        }
        Ok(Self { a1, a2, b1, b2 })
    }

    pub fn distance(&self) -> usize {
        self.b2 - self.b1
    }

    /// Rows cover `h`'s rows and columns lie within `h`'s span.
    pub fn compatible_with(&self, h: &HorizontalAlignedPair) -> bool {
        self.a1 <= h.i1 && h.i2 <= self.a2 && h.j1 <= self.b1 && self.b2 <= h.j2
    }
}

/// Rows `i1 < i2` agreeing on columns `j1..=j2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HorizontalAlignedPair {
    pub i1: usize,
    pub i2: usize,
    pub j1: usize,
    pub j2: usize,
}

impl HorizontalAlignedPair {
    pub fn new(i1: usize, i2: usize, j1: usize, j2: usize) -> Result<Self> {
        if i1 >= i2 || j1 >= j2 {
            return Err(Error::invalid(format!(
                "horizontal pair ({i1}, {i2}, {j1}, {j2}) is not proper"
            )));
        }
        Ok(Self { i1, i2, j1, j2 })
    }

    pub fn distance(&self) -> usize {
        self.i2 - self.i1
    }
}

/// Ties between equally wide pairs go to the smallest `(a1, a2, b1, b2)`.
#[derive(Debug, Clone)]
pub struct Scds {
    index: RangeIndex,
}

impl Scds {
    pub fn build(pairs: &[VerticalAlignedPair]) -> Result<Self> {
        let mut coords = Vec::with_capacity(pairs.len() * 4);
        for p in pairs {
            VerticalAlignedPair::new(p.a1, p.a2, p.b1, p.b2)?;
            coords.extend([p.a1, p.a2, p.b1, p.b2].map(|c| c as i64));
        }
        Ok(Self::from_coords(coords))
    }

    /// Flat `(a1, a2, b1, b2)` quadruples, already validated.
    pub(crate) fn from_coords(coords: Vec<i64>) -> Self {
        let values = coords.chunks_exact(4).map(|c| c[3] - c[2]).collect();
        let index =
            RangeIndex::from_flat(4, coords, values, Backend::KdTree).expect("valid dimension");
        Self { index }
    }

    pub fn len(&self) -> usize {
        self.index.len()
    }

    pub fn is_empty(&self) -> bool {
        self.index.is_empty()
    }

    pub fn max_compatible(&self, h: &HorizontalAlignedPair) -> Option<VerticalAlignedPair> {
        self.max_compatible_raw(h.i1 as i64, h.i2 as i64, h.j1 as i64, h.j2 as i64)
            .map(|c| VerticalAlignedPair {
                a1: c[0] as usize,
                a2: c[1] as usize,
                b1: c[2] as usize,
                b2: c[3] as usize,
            })
    }

    #[inline]
    pub(crate) fn max_compatible_raw(&self, i1: i64, i2: i64, j1: i64, j2: i64) -> Option<&[i64]> {
        let lo = [NEG_INF, i2, j1, j1];
        let hi = [i1, POS_INF, j2, j2];
        self.index
            .best_id(Objective::Max, &lo, &hi)
            .map(|id| self.index.coords_of(id))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pair(a1: usize, a2: usize, b1: usize, b2: usize) -> VerticalAlignedPair {
        VerticalAlignedPair::new(a1, a2, b1, b2).unwrap()
    }

    #[test]
    fn examples() {
        let s = Scds::build(&[pair(1, 5, 2, 6), pair(2, 4, 3, 5)]).unwrap();
        let hit = s
            .max_compatible(&HorizontalAlignedPair::new(2, 4, 1, 7).unwrap())
            .unwrap();
        assert_eq!((hit, hit.distance()), (pair(1, 5, 2, 6), 4));
        assert!(s
            .max_compatible(&HorizontalAlignedPair::new(1, 5, 3, 4).unwrap())
            .is_none());
        let all = HorizontalAlignedPair::new(3, 4, 1, 100).unwrap();
        assert_eq!(s.max_compatible(&all), Some(pair(1, 5, 2, 6)));
    }

    #[test]
    fn empty_and_singleton() {
        let empty = Scds::build(&[]).unwrap();
        assert!(empty
            .max_compatible(&HorizontalAlignedPair::new(1, 2, 1, 2).unwrap())
            .is_none());
        let one = Scds::build(&[pair(1, 9, 3, 4)]).unwrap();
        assert_eq!(
            one.max_compatible(&HorizontalAlignedPair::new(2, 3, 1, 5).unwrap()),
            Some(pair(1, 9, 3, 4))
        );
    }

    #[test]
    fn rejects_improper_pairs() {
        let bad = VerticalAlignedPair {
            a1: 3,
            a2: 3,
            b1: 1,
            b2: 2,
        };
        assert!(Scds::build(&[bad]).is_err());
        assert!(HorizontalAlignedPair::new(1, 2, 4, 4).is_err());
    }

    #[test]
    fn duplicates_are_kept() {
        let s = Scds::build(&[pair(1, 3, 1, 2), pair(1, 3, 1, 2)]).unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(
            s.max_compatible(&HorizontalAlignedPair::new(1, 3, 1, 2).unwrap()),
            Some(pair(1, 3, 1, 2))
        );
    }
}
