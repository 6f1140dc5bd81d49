// SPDX-License-Identifier: Apache-2.0
#![allow(dead_code)]

use matching_frames::grid::{Matrix, SymbolCode};
use rand::Rng;

pub fn random_matrix(rng: &mut impl Rng, rows: usize, cols: usize, alphabet: SymbolCode) -> Matrix {
    let cells = (0..rows * cols)
        .map(|_| rng.gen_range(0..alphabet))
        .collect();
    Matrix::new(rows, cols, cells).unwrap()
}

/// The 1-based strings `i` of length `bits`, holding `i - 1` little-endian.
pub fn little_endian(n: usize) -> Vec<Vec<u8>> {
    let bits = usize::BITS - (n - 1).leading_zeros();
    (0..n)
        .map(|v| (0..bits.max(1)).map(|b| ((v >> b) & 1) as u8).collect())
        .collect()
}

pub fn power_of_two_gaps(n: usize) -> std::collections::BTreeSet<(usize, usize)> {
    (1..=n)
        .flat_map(|i| {
            (0..usize::BITS)
                .map(move |k| (i, i + (1usize << k)))
                .take_while(move |&(_, j)| j <= n)
        })
        .collect()
}

pub fn naive_suffix_order<T: Ord>(text: &[T]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..text.len()).collect();
    order.sort_by(|&a, &b| text[a..].cmp(&text[b..]));
    order.into_iter().map(|p| p + 1).collect()
}

pub fn naive_lcp<T: Eq>(a: &[T], b: &[T]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}
