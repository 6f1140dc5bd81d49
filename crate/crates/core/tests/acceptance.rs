// SPDX-License-Identifier: Apache-2.0

//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::{little_endian, naive_lcp, naive_suffix_order, power_of_two_gaps, random_matrix};
use matching_frames::approx::{
    approx_max_frame, decide_surrounding, interesting_triplets, InnerRectangle,
};
use matching_frames::cli::{cmd_decide, cmd_exact, median_ms};
use matching_frames::exact::max_matching_frame;
use matching_frames::grid::{is_matching, Frame, Matrix};
use matching_frames::index::MatrixIndex;
use matching_frames::io::{generate, parse, Format, Instance};
use matching_frames::oracle::{
    brute_interesting_pairs, brute_max_compatible, brute_max_frame, brute_surrounding,
};
use matching_frames::range::{scan_best, Backend, Objective, RangeBox, RangeIndex, ValuedPoint};
use matching_frames::scds::{HorizontalAlignedPair, Scds, VerticalAlignedPair};
use matching_frames::suffix::{LcpIndex, SuffixArray};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const FIGURE_ONE: &[u8] = include_bytes!("fixtures/figure1.txt");

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Self {
            pass,
            detail: detail.into(),
        }
    }
}

fn optimum(m: &Matrix) -> usize {
    brute_max_frame(m).unwrap().map_or(0, |f| f.perimeter())
}

fn exact_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let start = Instant::now();
    let (mut runs, mut mismatches) = (0, Vec::new());
    for alphabet in [2, 3] {
        for _ in 0..600 {
            let (n, m) = (rng.gen_range(2..=12), rng.gen_range(2..=12));
            let matrix = random_matrix(&mut rng, n, m, alphabet);
            let got = max_matching_frame(&matrix).perimeter().unwrap_or(0);
            let want = optimum(&matrix);
            if got != want {
                mismatches.push(format!("{n}x{m}: {got} vs {want}"));
            }
            runs += 1;
        }
    }
    let elapsed = start.elapsed();
    Outcome::new(
        mismatches.is_empty() && elapsed < Duration::from_secs(120),
        format!(
            "{runs} matrices, {} mismatches {:?}, {:.1?}",
            mismatches.len(),
            mismatches.first(),
            elapsed
        ),
    )
}

/// Matrices up to 14x14 over two symbols, with their optima.
fn approx_suite() -> Vec<(Matrix, usize)> {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    (0..1200)
        .map(|_| {
            let (n, m) = (rng.gen_range(1..=14), rng.gen_range(1..=14));
            let matrix = random_matrix(&mut rng, n, m, 2);
            let best = optimum(&matrix);
            (matrix, best)
        })
        .collect()
}

fn approximation_guarantee(suite: &[(Matrix, usize)]) -> Outcome {
    let mut failures = Vec::new();
    let mut with_frame = 0;
    for (matrix, best) in suite {
        with_frame += usize::from(*best > 0);
        for eps in [0.1, 0.3, 0.5] {
            let got = approx_max_frame(matrix, eps).unwrap();
            let ok = match got {
                None => *best == 0,
                Some(f) => {
                    *best > 0
                        && is_matching(matrix, &f).unwrap()
                        && f.perimeter() as f64 >= (1.0 - eps) * *best as f64
                }
            };
            if !ok {
                failures.push(format!(
                    "{}x{} eps {eps}: {got:?} vs optimum {best}",
                    matrix.rows(),
                    matrix.cols()
                ));
            }
        }
    }
    Outcome::new(
        failures.is_empty(),
        format!(
            "{} matrices ({with_frame} with a frame) x 3 epsilons, {} failures {:?}",
            suite.len(),
            failures.len(),
            failures.first()
        ),
    )
}

fn decision_corollary(suite: &[(Matrix, usize)]) -> Outcome {
    let disagreements = suite
        .iter()
        .filter(|(matrix, best)| cmd_decide(matrix).unwrap().frame.is_some() != (*best > 0))
        .count();
    Outcome::new(
        disagreements == 0,
        format!("{} matrices, {disagreements} disagreements", suite.len()),
    )
}

fn interesting_pairs_at(rows: &[Vec<u8>], l: usize) -> BTreeSet<(usize, usize)> {
    let codes: Vec<Vec<u32>> = rows
        .iter()
        .map(|r| r.iter().map(|&b| u32::from(b)).collect())
        .collect();
    let index = MatrixIndex::build(&Matrix::from_rows(&codes).unwrap());
    interesting_triplets(&index)
        .into_iter()
        .filter(|t| t.l == l)
        .map(|t| (t.u, t.d))
        .collect()
}

fn interesting_pair_bound() -> Outcome {
    let mut problems = Vec::new();
    for n in [8, 16, 32, 64] {
        let rows = little_endian(n);
        let pairs = interesting_pairs_at(&rows, 1);
        if pairs != power_of_two_gaps(n) || brute_interesting_pairs(&rows).unwrap() != pairs {
            problems.push(format!("little-endian n={n}: {} pairs", pairs.len()));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut worst = 0.0f64;
    let mut tuples = 0;
    for n in [16usize, 64, 256, 1024] {
        for _ in 0..4 {
            let width = rng.gen_range(4..=24);
            let rows: Vec<Vec<u8>> = (0..n)
                .map(|_| (0..width).map(|_| rng.gen_range(0..2)).collect())
                .collect();
            let codes: Vec<Vec<u32>> = rows
                .iter()
                .map(|r| r.iter().map(|&b| u32::from(b)).collect())
                .collect();
            let index = MatrixIndex::build(&Matrix::from_rows(&codes).unwrap());
            let mut counts = vec![0usize; width];
            for t in interesting_triplets(&index) {
                counts[t.l - 1] += 1;
            }
            let bound = 2 * n * (n.next_power_of_two().trailing_zeros() as usize + 1);
            for (l, &count) in counts.iter().enumerate() {
                tuples += 1;
                worst = worst.max(count as f64 / bound as f64);
                if count > bound {
                    problems.push(format!("random n={n} column {}: {count} > {bound}", l + 1));
                }
            }
            if n <= 64 && interesting_pairs_at(&rows, 1) != brute_interesting_pairs(&rows).unwrap()
            {
                problems.push(format!("random n={n}: differs from oracle"));
            }
        }
    }
    Outcome::new(
        problems.is_empty(),
        format!("little-endian n in 8..64 exact; {tuples} random tuples, max count/bound {worst:.3}; {problems:?}"),
    )
}

fn suffix_checks(rng: &mut ChaCha8Rng) -> (usize, usize) {
    let mut texts: Vec<Vec<u8>> = Vec::new();
    for len in 1..=12 {
        for bits in 0..1u32 << len {
            texts.push((0..len).map(|k| ((bits >> k) & 1) as u8).collect());
        }
    }
    for len in 1..=200 {
        texts.push(vec![7; len]);
        texts.push((0..len).map(|k| (k % 3) as u8).collect());
        texts.push((0..len).map(|_| rng.gen_range(0..4)).collect());
    }
    for _ in 0..100 {
        let len = rng.gen_range(201..=2000);
        let sigma = rng.gen_range(1..=6);
        texts.push((0..len).map(|_| rng.gen_range(0..sigma)).collect());
    }
    let mut failures = 0;
    for text in &texts {
        let sa = SuffixArray::build(text).unwrap();
        if sa.order() != naive_suffix_order(text) {
            failures += 1;
            continue;
        }
        let lcp = LcpIndex::new(text, &sa);
        let n = text.len();
        for _ in 0..20.min(n * n) {
            let (i, j) = (rng.gen_range(1..=n), rng.gen_range(1..=n));
            if lcp.query(i, j).unwrap() != naive_lcp(&text[i - 1..], &text[j - 1..]) {
                failures += 1;
                break;
            }
        }
    }
    (texts.len(), failures)
}

fn range_checks(rng: &mut ChaCha8Rng) -> (usize, usize) {
    let (mut queries, mut failures) = (0, 0);
    for (dim, backend) in [
        (2, Backend::Layered),
        (2, Backend::KdTree),
        (4, Backend::KdTree),
    ] {
        let points: Vec<ValuedPoint> = (0..600)
            .map(|_| {
                ValuedPoint::new(
                    (0..dim).map(|_| rng.gen_range(-100..100)).collect(),
                    rng.gen_range(-1000..1000),
                )
            })
            .collect();
        let index = RangeIndex::build_with(&points, dim, backend).unwrap();
        for _ in 0..250 {
            let lo: Vec<i64> = (0..dim).map(|_| rng.gen_range(-110..100)).collect();
            let hi: Vec<i64> = lo.iter().map(|&a| a + rng.gen_range(0..120)).collect();
            let bounds = RangeBox::new(lo, hi);
            for obj in [Objective::Max, Objective::Min] {
                queries += 1;
                failures +=
                    usize::from(index.query(obj, &bounds) != scan_best(&points, obj, &bounds));
            }
        }
    }
    (queries, failures)
}

fn scds_checks(rng: &mut ChaCha8Rng) -> (usize, usize) {
    let pair = |rng: &mut ChaCha8Rng| {
        let (a, b) = (rng.gen_range(1..40), rng.gen_range(1..40));
        let (c, d) = (rng.gen_range(1..40), rng.gen_range(1..40));
        (a.min(b), a.max(b) + 1, c.min(d), c.max(d) + 1)
    };
    let pairs: Vec<VerticalAlignedPair> = (0..600)
        .map(|_| {
            let (a1, a2, b1, b2) = pair(rng);
            VerticalAlignedPair::new(a1, a2, b1, b2).unwrap()
        })
        .collect();
    let store = Scds::build(&pairs).unwrap();
    let mut failures = 0;
    for _ in 0..300 {
        let (i1, i2, j1, j2) = pair(rng);
        let h = HorizontalAlignedPair::new(i1, i2, j1, j2).unwrap();
        failures += usize::from(store.max_compatible(&h) != brute_max_compatible(&pairs, &h));
    }
    (300, failures)
}

fn component_oracles() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (texts, sa_fail) = suffix_checks(&mut rng);
    let (queries, range_fail) = range_checks(&mut rng);
    let (scds_queries, scds_fail) = scds_checks(&mut rng);
    Outcome::new(
        sa_fail + range_fail + scds_fail == 0,
        format!(
            "suffix/LCP {texts} texts ({sa_fail} failed), range {queries} queries ({range_fail} failed), \
             SCDS {scds_queries} queries ({scds_fail} failed)"
        ),
    )
}

fn surrounding_decision() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let (mut disagreements, mut positives) = (0, 0);
    let windows = 600;
    for _ in 0..windows {
        let matrix = random_matrix(&mut rng, 10, 10, 2);
        let (u, l) = (rng.gen_range(2..=9), rng.gen_range(2..=9));
        let inner = InnerRectangle::new(u, rng.gen_range(u..=9), l, rng.gen_range(l..=9));
        let got = decide_surrounding(&matrix, &inner).unwrap();
        let want = brute_surrounding(&matrix, &inner).unwrap();
        positives += usize::from(want.is_some());
        let valid = got.map_or(true, |f| {
            is_matching(&matrix, &f).unwrap() && inner.surrounded_by(&f)
        });
        disagreements += usize::from(got.is_some() != want.is_some() || !valid);
    }
    Outcome::new(
        disagreements == 0,
        format!("{windows} windows ({positives} with a surrounding frame), {disagreements} disagreements"),
    )
}

fn timings(sizes: &[usize], solve: impl Fn(&Matrix)) -> Vec<f64> {
    let inputs: Vec<Matrix> = sizes
        .iter()
        .map(|&n| generate(Instance::Random, n, n, 2, n as u64).unwrap())
        .collect();
    solve(&inputs[0]);
    inputs.iter().map(|m| median_ms(3, || solve(m))).collect()
}

fn scaling_sanity() -> Outcome {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap();
    pool.install(|| {
        let approx_sizes = [128, 256, 512, 1024];
        let approx = timings(&approx_sizes, |m| {
            approx_max_frame(m, 0.5).unwrap();
        });
        let approx_ratios: Vec<f64> = approx.windows(2).map(|w| w[1] / w[0]).collect();
        let approx_ok = approx_ratios.iter().all(|&r| r <= 5.0);

        let exact_sizes = [64usize, 128, 256];
        let exact = timings(&exact_sizes, |m| {
            max_matching_frame(m);
        });
        let model = |n: usize| (n as f64).powf(2.5) * (n as f64).log2().powi(2);
        let mut exact_ok = true;
        let mut exact_report = Vec::new();
        for k in 1..exact_sizes.len() {
            let measured = exact[k] / exact[k - 1];
            let expected = model(exact_sizes[k]) / model(exact_sizes[k - 1]);
            exact_ok &= measured >= expected / 3.0 && measured <= expected * 3.0;
            exact_report.push(format!("{measured:.2} (model {expected:.2})"));
        }
        Outcome::new(
            approx_ok && exact_ok,
            format!(
                "approx ms {approx:.1?} ratios {approx_ratios:.2?} (<= 5); exact ms {exact:.1?} ratios {exact_report:?} \
                 (within 3x of n^2.5 log^2 n)"
            ),
        )
    })
}

fn figure_one_regression() -> Outcome {
    let matrix = parse(FIGURE_ONE, Format::Raw).unwrap();
    let target = Frame::new(2, 6, 3, 9).unwrap();
    let brute = brute_max_frame(&matrix).unwrap();
    let exact = cmd_exact(&matrix, false).unwrap();
    let oracle = cmd_exact(&matrix, true).unwrap();
    let pass = is_matching(&matrix, &target).unwrap()
        && brute == Some(target)
        && target.perimeter() == 20
        && exact.perimeter == Some(20)
        && oracle.perimeter == Some(20)
        && exact.frame == Some(target);
    Outcome::new(
        pass,
        format!(
            "oracle {:?}, exact {:?} perimeter {:?}",
            oracle.frame, exact.frame, exact.perimeter
        ),
    )
}

type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn main() -> ExitCode {
    let suite = approx_suite();
    let criteria: [Criterion; 8] = [
        ("exact-oracle equivalence", Box::new(exact_equivalence)),
        (
            "approximation guarantee",
            Box::new(|| approximation_guarantee(&suite)),
        ),
        (
            "decision corollary",
            Box::new(|| decision_corollary(&suite)),
        ),
        ("interesting-pair bound", Box::new(interesting_pair_bound)),
        ("component oracles", Box::new(component_oracles)),
        ("surrounding-frame decision", Box::new(surrounding_decision)),
        ("scaling sanity", Box::new(scaling_sanity)),
        ("figure-1 regression", Box::new(figure_one_regression)),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        failed += usize::from(!outcome.pass);
        println!(
            "criterion {} {name}: {} ({}; {:.1?})",
            k + 1,
            if outcome.pass { "PASS" } else { "FAIL" },
            outcome.detail,
            start.elapsed()
        );
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
