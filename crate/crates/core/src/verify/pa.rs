use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::CheckResult;
use crate::entstat::classical::{guess_prob_table, non_uniformity_table};
use crate::entstat::pa_bound;
use crate::protocol::{BitString, ToeplitzHash};
use crate::qmath::random::random_distribution;

const DISTRIBUTIONS_PER_SIZE: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PaSummary {
    pub cases: usize,
    pub violations: usize,
    /// Smallest `bound − measured` over all cases.
    pub min_slack: f64,
}

/// `d(F(X)|F,E)` averaged over every Toeplitz seed, for `table[e][x]`.
fn hashed_distance(table: &[Vec<f64>], n: usize, ell: usize) -> f64 {
    let inputs: Vec<BitString> = (0..1usize << n)
        .map(|v| BitString::from_bits((0..n).map(|i| (v >> i) as u8)))
        .collect();
    let seeds = 1usize << (n + ell - 1);
    let mut total = 0.0;
    for s in 0..seeds {
        let seed = BitString::from_bits((0..n + ell - 1).map(|i| (s >> i) as u8));
        let h = ToeplitzHash::new(n, ell, seed).expect("consistent lengths");
        let images: Vec<usize> = inputs
            .iter()
            .map(|x| {
                h.apply(x)
                    .expect("n bits")
                    .bits()
                    .iter()
                    .enumerate()
                    .fold(0, |a, (i, &b)| a | (b as usize) << i)
            })
            .collect();
        let hashed: Vec<Vec<f64>> = table
            .iter()
            .map(|row| {
                let mut out = vec![0.0; 1 << ell];
                for (x, &p) in row.iter().enumerate() {
                    out[images[x]] += p;
                }
                out
            })
            .collect();
        total += non_uniformity_table(&hashed);
    }
    total / seeds as f64
}

fn distributions(n: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<Vec<f64>>> {
    let nx = 1usize << n;
    let mut out = Vec::new();
    // X uniform and independent of a one-symbol E
    out.push(vec![vec![1.0 / nx as f64; nx]]);
    // X known to E
    out.push(
        (0..nx)
            .map(|e| {
                (0..nx)
                    .map(|x| if x == e { 1.0 / nx as f64 } else { 0.0 })
                    .collect()
            })
            .collect(),
    );
    for _ in 0..DISTRIBUTIONS_PER_SIZE {
        let ne = rng.random_range(1..=3);
        // uniform over a random support, so min-entropy takes varied values
        let support = rng.random_range(1..=nx);
        let mut joint = vec![vec![0.0; nx]; ne];
        let weights = random_distribution(ne * support, rng);
        let mut xs: Vec<usize> = (0..nx).collect();
        for i in (1..nx).rev() {
            xs.swap(i, rng.random_range(0..=i));
        }
        for e in 0..ne {
            for (k, &x) in xs[..support].iter().enumerate() {
                joint[e][x] = weights[e * support + k];
            }
        }
        out.push(joint);
    }
    out
}

/// Exhaustive privacy-amplification check for `n ≤ max_n`, `ℓ ∈ {1, 2}`.
pub fn pa_exhaustive(seed: u64, max_n: usize) -> (PaSummary, Option<String>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut summary = PaSummary {
        cases: 0,
        violations: 0,
        min_slack: f64::INFINITY,
    };
    let mut first = None;
    for n in 1..=max_n {
        for joint in distributions(n, &mut rng) {
            let hmin = -guess_prob_table(&joint).log2();
            for ell in [1usize, 2].into_iter().filter(|&l| l <= n) {
                let d = hashed_distance(&joint, n, ell);
                let bound = pa_bound(hmin, ell, 0.0).expect("eps = 0");
                summary.cases += 1;
                summary.min_slack = summary.min_slack.min(bound - d);
                if d > bound + 1e-12 {
                    summary.violations += 1;
                    first.get_or_insert_with(|| {
                        format!("n={n} ell={ell} hmin={hmin} d={d} bound={bound}")
                    });
                }
            }
        }
    }
    (summary, first)
}

pub fn pa_suite(seed: u64) -> Vec<CheckResult> {
    let (summary, first) = pa_exhaustive(seed, 6);
    let mut check = CheckResult::new("privacy amplification: exhaustive Toeplitz, n <= 6");
    check.cases = summary.cases;
    check.worst = -summary.min_slack;
    check.passed = summary.violations == 0;
    check.counterexample = first;
    vec![check]
}
