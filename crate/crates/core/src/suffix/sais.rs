// SPDX-License-Identifier: Apache-2.0

//! Suffix sorting by induced sorting (SA-IS) over a dense integer alphabet.

const NAIVE_THRESHOLD: usize = 10;
const NONE: u32 = u32::MAX;

/// Suffix array of `s`, whose symbols must lie in `0..=upper`. Positions are
/// 0-based. `s` must be shorter than `u32::MAX`.
pub(crate) fn sa_is(s: &[u32], upper: usize) -> Vec<u32> {
    let n = s.len();
    debug_assert!(n < NONE as usize);
    match n {
        0 => return vec![],
        1 => return vec![0],
        2 => return if s[0] < s[1] { vec![0, 1] } else { vec![1, 0] },
        _ if n < NAIVE_THRESHOLD => return sa_naive(s),
        _ => {}
    }
    let sym = |i: usize| s[i] as usize;

    // ls[i]: suffix i is S-type (smaller than suffix i + 1).
    let mut ls = vec![false; n];
    for i in (0..n - 1).rev() {
        ls[i] = if s[i] == s[i + 1] {
            ls[i + 1]
        } else {
            s[i] < s[i + 1]
        };
    }

    let mut sum_l = vec![0u32; upper + 1];
    let mut sum_s = vec![0u32; upper + 1];
    for i in 0..n {
        if !ls[i] {
            sum_s[sym(i)] += 1;
        } else {
            // S-type symbols are never the largest one.
            sum_l[sym(i) + 1] += 1;
        }
    }
    for c in 0..=upper {
        sum_s[c] += sum_l[c];
        if c < upper {
            sum_l[c + 1] += sum_s[c];
        }
    }

    let mut sa = vec![NONE; n];
    let mut buf = vec![0u32; upper + 1];
    let induce = |lms: &[u32], sa: &mut Vec<u32>, buf: &mut Vec<u32>| {
        sa.iter_mut().for_each(|x| *x = NONE);
        buf.copy_from_slice(&sum_s);
        for &d in lms {
            let d = d as usize;
            if d == n {
                continue;
            }
            sa[buf[sym(d)] as usize] = d as u32;
            buf[sym(d)] += 1;
        }
        buf.copy_from_slice(&sum_l);
        sa[buf[sym(n - 1)] as usize] = (n - 1) as u32;
        buf[sym(n - 1)] += 1;
        for i in 0..n {
            let v = sa[i];
            if v != NONE && v >= 1 && !ls[v as usize - 1] {
                let c = sym(v as usize - 1);
                sa[buf[c] as usize] = v - 1;
                buf[c] += 1;
            }
        }
        buf.copy_from_slice(&sum_l);
        for i in (0..n).rev() {
            let v = sa[i];
            if v != NONE && v >= 1 && ls[v as usize - 1] {
                let c = sym(v as usize - 1) + 1;
                buf[c] -= 1;
                sa[buf[c] as usize] = v - 1;
            }
        }
    };

    let mut lms_map = vec![NONE; n + 1];
    let mut lms: Vec<u32> = Vec::new();
    for i in 1..n {
        if !ls[i - 1] && ls[i] {
            lms_map[i] = lms.len() as u32;
            lms.push(i as u32);
        }
    }
    let m = lms.len();

    induce(&lms, &mut sa, &mut buf);

    if m > 0 {
        let sorted_lms: Vec<u32> = sa
            .iter()
            .copied()
            .filter(|&v| v != NONE && lms_map[v as usize] != NONE)
            .collect();
        let end_of = |p: usize| {
            let k = lms_map[p] as usize + 1;
            if k < m {
                lms[k] as usize
            } else {
                n
            }
        };
        let mut rec_s = vec![0u32; m];
        let mut rec_upper = 0u32;
        rec_s[lms_map[sorted_lms[0] as usize] as usize] = 0;
        for w in 1..m {
            let (mut l, mut r) = (sorted_lms[w - 1] as usize, sorted_lms[w] as usize);
            let (end_l, end_r) = (end_of(l), end_of(r));
            let mut same = true;
            if end_l - l != end_r - r {
                same = false;
            } else {
                while l < end_l {
                    if s[l] != s[r] {
                        break;
                    }
                    l += 1;
                    r += 1;
                }
                if l == n || s[l] != s[r] {
                    same = false;
                }
            }
            if !same {
                rec_upper += 1;
            }
            rec_s[lms_map[sorted_lms[w] as usize] as usize] = rec_upper;
        }

        let rec_sa = sa_is(&rec_s, rec_upper as usize);
        let sorted: Vec<u32> = rec_sa.iter().map(|&i| lms[i as usize]).collect();
        induce(&sorted, &mut sa, &mut buf);
    }
    sa
}

fn sa_naive(s: &[u32]) -> Vec<u32> {
    let mut sa: Vec<u32> = (0..s.len() as u32).collect();
    sa.sort_by(|&a, &b| s[a as usize..].cmp(&s[b as usize..]));
    sa
}
