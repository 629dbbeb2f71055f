use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::CheckResult;
use crate::entstat::classical::{guess_prob_exhaustive, non_uniformity_table};
use crate::entstat::{
    guess_prob_cq, helstrom_guess_prob, min_entropy_dual, non_uniformity, CqState,
};
use crate::qmath::random::{random_distribution, random_mixed, random_pure};
use crate::qmath::DensityMatrix;

const DUALITY_CASES: usize = 200;
const CLASSICAL_CASES: usize = 1000;
const QUANTUM_PRODUCT_CASES: usize = 200;
const EXACT_TOL: f64 = 1e-9;

fn random_qubit(rng: &mut ChaCha8Rng) -> DensityMatrix {
    if rng.random_bool(0.5) {
        random_pure(2, rng)
    } else {
        random_mixed(2, 2, rng)
    }
}

fn random_binary_cq(rng: &mut ChaCha8Rng) -> CqState {
    let p = rng.random::<f64>();
    CqState::new(vec![p, 1.0 - p], vec![random_qubit(rng), random_qubit(rng)]).expect("valid")
}

/// Joint distribution `p[x][y][e]` with some exact zeros.
fn random_ccq(rng: &mut ChaCha8Rng) -> (usize, usize, usize, Vec<f64>) {
    let (nx, ny, ne) = (
        rng.random_range(2..=3),
        rng.random_range(2..=3),
        rng.random_range(1..=3),
    );
    let mut p = random_distribution(nx * ny * ne, rng);
    if rng.random_bool(0.3) {
        let k = rng.random_range(0..p.len());
        p[k] = 0.0;
        let s: f64 = p.iter().sum();
        p.iter_mut().for_each(|v| *v /= s);
    }
    (nx, ny, ne, p)
}

/// Table `t[observation][value]` from a selector over `(x, y, e)`.
fn table(
    dims: (usize, usize, usize),
    p: &[f64],
    obs: impl Fn(usize, usize, usize) -> usize,
    val: impl Fn(usize, usize, usize) -> usize,
    n_obs: usize,
    n_val: usize,
) -> Vec<Vec<f64>> {
    let (nx, ny, ne) = dims;
    let mut t = vec![vec![0.0; n_val]; n_obs];
    for x in 0..nx {
        for y in 0..ny {
            for e in 0..ne {
                t[obs(x, y, e)][val(x, y, e)] += p[(x * ny + y) * ne + e];
            }
        }
    }
    t
}

fn classical_cq(joint: &[Vec<f64>]) -> CqState {
    CqState::classical(joint).expect("valid table")
}

pub fn entropy_suite(seed: u64) -> Vec<CheckResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();

    let mut duality = CheckResult::new("duality: barrier dual vs Helstrom");
    for _ in 0..DUALITY_CASES {
        let st = random_binary_cq(&mut rng);
        let (p, c) = (st.probs(), st.conditionals());
        let helstrom = -helstrom_guess_prob(p[0], &c[0], p[1], &c[1])
            .expect("valid")
            .log2();
        match min_entropy_dual(&st) {
            Ok(dual) => duality.record((dual - helstrom).abs(), 1e-6, || format!("{st:?}")),
            Err(e) => duality.record(f64::INFINITY, 1e-6, || e.to_string()),
        }
    }
    out.push(duality);

    let mut chain = CheckResult::new("chain rule: P(XY|E) >= P(X|YE)/|Y|");
    let mut mono = CheckResult::new("monotonicity: P(XY|E) <= P(Y|E)");
    let mut mult = CheckResult::new("multiplicativity: classical E");
    let mut nonuni = CheckResult::new("non-uniformity bounds");
    for _ in 0..CLASSICAL_CASES {
        let (nx, ny, ne, p) = random_ccq(&mut rng);
        let dims = (nx, ny, ne);
        let xy_e = table(dims, &p, |_, _, e| e, |x, y, _| x * ny + y, ne, nx * ny);
        let x_ye = table(dims, &p, |_, y, e| y * ne + e, |x, _, _| x, ny * ne, nx);
        let y_e = table(dims, &p, |_, _, e| e, |_, y, _| y, ne, ny);
        let g_xy = guess_prob_exhaustive(&xy_e);
        let g_x_ye = guess_prob_exhaustive(&x_ye);
        let g_y = guess_prob_exhaustive(&y_e);
        let describe = || format!("p={p:?} dims={dims:?}");
        chain.record(g_x_ye / ny as f64 - g_xy, EXACT_TOL, describe);
        mono.record(g_xy - g_y, EXACT_TOL, describe);

        // E-major tables become cq-states with diagonal conditionals
        let transpose = |t: &[Vec<f64>]| -> Vec<Vec<f64>> {
            (0..t[0].len())
                .map(|v| t.iter().map(|row| row[v]).collect())
                .collect()
        };
        let a = classical_cq(&transpose(&y_e));
        let (_, ny2, ne2, p2) = random_ccq(&mut rng);
        let other = table(
            (1, ny2, ne2),
            &p2[..ny2 * ne2],
            |_, _, e| e,
            |_, y, _| y,
            ne2,
            ny2,
        );
        let renorm: f64 = other.iter().flatten().sum();
        let other: Vec<Vec<f64>> = other
            .iter()
            .map(|r| r.iter().map(|v| v / renorm).collect())
            .collect();
        let b = classical_cq(&transpose(&other));
        let prod = a.tensor(&b).expect("small");
        let lhs = guess_prob_cq(&prod).expect("classical");
        let rhs = guess_prob_cq(&a).expect("classical") * guess_prob_cq(&b).expect("classical");
        mult.record((lhs - rhs).abs(), EXACT_TOL, describe);

        let d = non_uniformity(&a);
        let upper = 1.0 - 1.0 / a.len() as f64;
        nonuni.record(d - upper, EXACT_TOL, describe);
        let marginal: Vec<f64> = (0..ny)
            .map(|y| y_e.iter().map(|row| row[y]).sum())
            .collect();
        let trivial = CqState::new(
            marginal.clone(),
            vec![DensityMatrix::maximally_mixed(2).expect("2"); ny],
        )
        .expect("valid");
        let classical_distance = non_uniformity_table(&[marginal]);
        nonuni.record(
            (non_uniformity(&trivial) - classical_distance).abs(),
            EXACT_TOL,
            describe,
        );
    }
    out.push(chain);
    out.push(mono);
    out.push(mult);

    let mut qmult = CheckResult::new("multiplicativity: qubit E");
    for _ in 0..QUANTUM_PRODUCT_CASES {
        let a = random_binary_cq(&mut rng);
        let b = random_binary_cq(&mut rng);
        let prod = a.tensor(&b).expect("dim 4");
        let rhs = guess_prob_cq(&a).expect("binary") * guess_prob_cq(&b).expect("binary");
        match guess_prob_cq(&prod) {
            Ok(lhs) => qmult.record((lhs - rhs).abs(), EXACT_TOL, || format!("{a:?} x {b:?}")),
            Err(e) => qmult.record(f64::INFINITY, EXACT_TOL, || e.to_string()),
        }
    }
    out.push(qmult);
    out.push(nonuni);
    out
}
