use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::CheckResult;
use crate::qmath::CMatrix;
use crate::uncertainty::{
    cost_b, cost_c, orbit_group, r_hat, t_closed_form, t_numeric, GridSpec, MeasurementOperator,
};

const RANDOM_CASES: usize = 100;
const TOL: f64 = 1e-10;

fn random_operator(rng: &mut ChaCha8Rng) -> MeasurementOperator {
    let alpha = rng.random::<f64>() * FRAC_1_SQRT_2;
    // uniform point of the unit disc for (x̂, ẑ)
    let rad = rng.random::<f64>().sqrt();
    let ang = rng.random::<f64>() * std::f64::consts::TAU;
    MeasurementOperator::new(alpha, rad * ang.cos(), rad * ang.sin()).expect("inside disc")
}

fn orbit_ops(f: &MeasurementOperator) -> Vec<CMatrix> {
    f.orbit().into_operators()
}

/// Smallest `r` (to within `tol`) at which the numeric argmin α is nearer ½ than 0.
pub fn argmin_transition(lo: f64, hi: f64, tol: f64) -> f64 {
    let grid = GridSpec::default();
    let store_side = |r: f64| {
        let m = t_numeric(r, &grid).expect("r in range");
        (m.argmin_alpha - 0.5).abs() < m.argmin_alpha.min((m.argmin_alpha - FRAC_1_SQRT_2).abs())
    };
    let (mut a, mut b) = (lo, hi);
    while b - a > tol {
        let mid = 0.5 * (a + b);
        if store_side(mid) {
            b = mid;
        } else {
            a = mid;
        }
    }
    0.5 * (a + b)
}

pub fn measurement_suite(seed: u64) -> Vec<CheckResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();

    let mut orbit = CheckResult::new("orbit equivalence: B(orbit F) = C(F)");
    for _ in 0..RANDOM_CASES {
        let f = random_operator(&mut rng);
        let r = rng.random::<f64>();
        let b = cost_b(&orbit_ops(&f), r).expect("complete");
        let c = cost_c(&f, r).expect("valid");
        orbit.record((b - c).abs(), TOL, || format!("{f:?} r={r}"));
    }
    out.push(orbit);

    let mut convex = CheckResult::new("convexity: B(wF + (1-w)G) = wB(F) + (1-w)B(G)");
    for _ in 0..RANDOM_CASES {
        let (f, g) = (random_operator(&mut rng), random_operator(&mut rng));
        let (w, r) = (rng.random::<f64>(), rng.random::<f64>());
        let mut ops: Vec<CMatrix> = orbit_ops(&f).iter().map(|m| m.scale(w.sqrt())).collect();
        ops.extend(orbit_ops(&g).iter().map(|m| m.scale((1.0 - w).sqrt())));
        let mixed = cost_b(&ops, r).expect("complete");
        let split = w * cost_b(&orbit_ops(&f), r).expect("complete")
            + (1.0 - w) * cost_b(&orbit_ops(&g), r).expect("complete");
        convex.record((mixed - split).abs(), TOL, || {
            format!("{f:?} {g:?} w={w} r={r}")
        });
    }
    out.push(convex);

    let mut pauli = CheckResult::new("Pauli invariance: B(gMg†) = B(M)");
    for _ in 0..RANDOM_CASES {
        let f = random_operator(&mut rng);
        let r = rng.random::<f64>();
        let ops = orbit_ops(&f);
        let base = cost_b(&ops, r).expect("complete");
        for g in orbit_group() {
            let conj: Vec<CMatrix> = ops.iter().map(|m| m.conjugate_by(&g)).collect();
            let v = cost_b(&conj, r).expect("complete");
            pauli.record((v - base).abs(), TOL, || format!("{f:?} r={r}"));
        }
    }
    out.push(pauli);

    // 20 α values × 20 polar angles off the y axis × 10 azimuths in the XZ quarter plane
    let mut plane = CheckResult::new("XZ-plane dominance");
    for i in 0..20 {
        let alpha = FRAC_1_SQRT_2 * i as f64 / 19.0;
        for j in 0..20 {
            let polar = FRAC_PI_2 * j as f64 / 20.0; // angle from ŷ; j = 0 is the pure y axis
            for k in 0..10 {
                let az = FRAC_PI_2 * k as f64 / 9.0;
                let (x, z) = (polar.sin() * az.sin(), polar.sin() * az.cos());
                let r = 0.1 * (k as f64);
                let off = MeasurementOperator::new(alpha, x, z).expect("valid");
                let on = MeasurementOperator::new(alpha, az.sin(), az.cos()).expect("valid");
                let gap = cost_c(&on, r).expect("valid") - cost_c(&off, r).expect("valid");
                plane.record(gap, 1e-12, || format!("alpha={alpha} x={x} z={z} r={r}"));
            }
        }
    }
    out.push(plane);

    let mut global = CheckResult::new("global agreement: |t_numeric - t_closed| <= 1e-4");
    let grid = GridSpec::default();
    for step in 0..=20 {
        let r = step as f64 * 0.05;
        let num = t_numeric(r, &grid).expect("r in range");
        let closed = t_closed_form(r).expect("r in range");
        global.record((num.min_bits - closed).abs(), 1e-4, || {
            format!("r={r}: {num:?} vs {closed}")
        });
    }
    out.push(global);

    let mut transition = CheckResult::new("argmin transition at r_hat");
    let rh = r_hat();
    let at = argmin_transition(rh - 0.05, rh + 0.05, 1e-5);
    transition.record((at - rh).abs(), 0.002, || {
        format!("transition at {at}, r_hat {rh}")
    });
    out.push(transition);
    out
}
