//! Acceptance criteria 1-10. Runs without the libtest harness so every
//! criterion prints exactly one PASS/FAIL line; exits non-zero on any FAIL.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::Instant;

use nsot_core::bounds::{ell_ideal, ell_robust};
use nsot_core::protocol::{
    adversary_finish, apply_attack, exact_advantage_small_n, rng, run_honest_trial, AttackKind,
    AttackStrategy, ChannelParams, ProtocolParams, ScoredRound,
};
use nsot_core::qmath::{binary_entropy, binary_entropy_inv, Branch, QubitBasis};
use nsot_core::uncertainty::{r_hat, t_closed_form, t_numeric, GridSpec};
use nsot_core::verify::{
    argmin_transition, entropy_suite, measurement_suite, pa_exhaustive, CheckResult,
};
use rand::Rng;

/// Fixed before any run; not tuned.
const SEED: u64 = 2024;

/// Frozen output of `oracles/calculators.py` (mpmath, 40 digits).
const ORACLE_ELL_IDEAL: i64 = 112205;
const ORACLE_ELL_ROBUST: i64 = 8560;
const ORACLE_H_INV_HALF: f64 = 0.11002786443835955;
const ORACLE_R_HAT: f64 = 0.7799442711232809;

type Verdict = Result<String, String>;

fn check(ok: bool, detail: String) -> Verdict {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn c1_r_hat() -> Verdict {
    let r = r_hat();
    check(
        (r - 0.77994).abs() <= 5e-4
            && (r - 0.7798).abs() <= 5e-4
            && (r - ORACLE_R_HAT).abs() < 1e-12,
        format!("r_hat = {r:.10} (target ~0.7798, oracle {ORACLE_R_HAT})"),
    )
}

fn c2_qber() -> Verdict {
    let p = binary_entropy_inv(0.5, Branch::Lower).map_err(|e| e.to_string())?;
    check(
        (p - 0.11003).abs() <= 5e-4 && (p - ORACLE_H_INV_HALF).abs() < 1e-12,
        format!("h^-1(1/2) = {p:.10} (target ~0.11)"),
    )
}

fn c3_uncertainty() -> Verdict {
    let start = Instant::now();
    let grid = GridSpec::default();
    let mut worst: f64 = 0.0;
    for i in 0..=20 {
        let r = i as f64 * 0.05;
        let num = t_numeric(r, &grid).map_err(|e| e.to_string())?;
        let closed = t_closed_form(r).map_err(|e| e.to_string())?;
        worst = worst.max((num.min_bits - closed).abs());
    }
    let below = t_numeric(0.7, &grid)
        .map_err(|e| e.to_string())?
        .argmin_alpha;
    let above = t_numeric(0.85, &grid)
        .map_err(|e| e.to_string())?
        .argmin_alpha;
    let transition = argmin_transition(0.7, 0.85, 1e-5);
    let secs = start.elapsed().as_secs_f64();
    check(
        worst <= 1e-4
            && below.abs() < 1e-3
            && (above - 0.5).abs() < 1e-3
            && (transition - r_hat()).abs() <= 2e-3
            && secs <= 60.0,
        format!(
            "max |t_num - t_closed| = {worst:.2e}; argmin alpha {below:.4} -> {above:.4} at r = {transition:.5}; {secs:.1}s"
        ),
    )
}

fn summarize(results: &[CheckResult]) -> Verdict {
    let detail = results
        .iter()
        .map(|c| format!("{} [{} cases, worst {:.1e}]", c.name, c.cases, c.worst))
        .collect::<Vec<_>>()
        .join("; ");
    match results.iter().find(|c| !c.passed) {
        None => Ok(detail),
        Some(c) => Err(format!(
            "{}: {}",
            c.name,
            c.counterexample.clone().unwrap_or_default()
        )),
    }
}

fn c4_claims() -> Verdict {
    let mut results = measurement_suite(SEED);
    // criterion 3 covers the optimisation checks
    results.retain(|c| !c.name.starts_with("global") && !c.name.starts_with("argmin"));
    if results.len() != 4 {
        return Err(format!("expected 4 claim checks, found {}", results.len()));
    }
    summarize(&results)
}

fn c5_entropy() -> Verdict {
    let results = entropy_suite(SEED);
    let exact_ok = results
        .iter()
        .filter(|c| !c.name.starts_with("duality"))
        .all(|c| c.worst <= 1e-9);
    let duality_ok = results
        .iter()
        .filter(|c| c.name.starts_with("duality"))
        .all(|c| c.cases >= 200 && c.worst <= 1e-6);
    let v = summarize(&results)?;
    check(exact_ok && duality_ok, v)
}

fn c6_privacy_amplification() -> Verdict {
    let (summary, counterexample) = pa_exhaustive(SEED, 6);
    check(
        summary.violations == 0,
        format!(
            "{} cases, {} violations, min slack {:.3e}{}",
            summary.cases,
            summary.violations,
            summary.min_slack,
            counterexample.map(|c| format!("; {c}")).unwrap_or_default()
        ),
    )
}

/// Direct evaluation of both length formulas, independent of `bounds`.
fn verbatim_lengths() -> (i64, i64) {
    let log2 = f64::log2;
    let h = |p: f64| -p * log2(p) - (1.0 - p) * log2(1.0 - p);
    let (n, eps): (f64, f64) = (1e6, 1e-3);
    let d1 = 8.0 * (log2(2.0 / eps.powi(4)) / n).sqrt();
    let ideal = (0.25 * (0.5 - d1) * n + 0.5 - log2(1.0 / eps)).floor() as i64;
    let (t, pe, pr) = (h(0.95), 0.02, 0.5);
    let d3 = 8.0 * (log2(2.0 / eps.powi(4)) / ((1.0 - pr - eps) * n)).sqrt();
    let robust = ((t - d3 - h(pe)) * (1.0 - pr) * n / 4.0 - eps * n / 2.0 + 0.5 - log2(1.0 / eps))
        .floor() as i64;
    (ideal, robust)
}

fn c7_calculators() -> Verdict {
    let ideal = ell_ideal(1_000_000, 1e-3, 0.5).map_err(|e| e.to_string())?;
    let t = binary_entropy(0.95).map_err(|e| e.to_string())?;
    let robust = ell_robust(1_000_000, 1e-3, t, 0.02, 0.5).map_err(|e| e.to_string())?;
    let (v_ideal, v_robust) = verbatim_lengths();
    check(
        ideal.ell_max == ORACLE_ELL_IDEAL
            && v_ideal == ORACLE_ELL_IDEAL
            && robust.ell_max == ORACLE_ELL_ROBUST
            && v_robust == ORACLE_ELL_ROBUST,
        format!(
            "ideal {} (oracle {ORACLE_ELL_IDEAL}, verbatim {v_ideal}); robust {} (oracle {ORACLE_ELL_ROBUST}, verbatim {v_robust})",
            ideal.ell_max, robust.ell_max
        ),
    )
}

fn honest_rates(params: &ProtocolParams, trials: u64) -> Result<(f64, f64), String> {
    let (mut agreed, mut completed, mut aborted) = (0usize, 0usize, 0usize);
    for trial in 0..trials {
        let choice = QubitBasis::from_index(trial as usize % 2);
        match run_honest_trial(params, choice, trial)
            .map_err(|e| e.to_string())?
            .agree
        {
            None => aborted += 1,
            Some(a) => {
                completed += 1;
                agreed += a as usize;
            }
        }
    }
    let agreement = if completed == 0 {
        0.0
    } else {
        agreed as f64 / completed as f64
    };
    Ok((agreement, aborted as f64 / trials as f64))
}

fn c8_correctness() -> Verdict {
    let noisy = ProtocolParams::new(
        1024,
        8,
        0.1,
        ChannelParams::new(0.05, 0.3).map_err(|e| e.to_string())?,
        0.5,
        SEED,
    )
    .map_err(|e| e.to_string())?;
    let (agree, abort) = honest_rates(&noisy, 200)?;
    let clean = ProtocolParams::new(1024, 8, 0.1, ChannelParams::NOISELESS, 0.5, SEED)
        .map_err(|e| e.to_string())?;
    let (clean_agree, clean_abort) = honest_rates(&clean, 1000)?;
    check(
        agree >= 0.99 && abort <= 0.01 && clean_agree == 1.0 && clean_abort == 0.0,
        format!(
            "noisy: agreement {agree:.3}, abort {abort:.3} over 200; noiseless: agreement {clean_agree:.3} over 1000"
        ),
    )
}

fn c9_adversary() -> Verdict {
    let rounds_n = 10_000;
    let cases = [
        ("store r=0.7", AttackKind::StoreAsIs, 0.7, 0.85),
        ("computational", AttackKind::MeasureComputational, 0.7, 0.75),
        (
            "breidbart",
            AttackKind::MeasureBreidbart,
            0.7,
            (PI / 8.0).cos().powi(2),
        ),
    ];
    let mut details = Vec::new();
    let mut ok = true;
    for (i, (label, kind, r, expected)) in cases.into_iter().enumerate() {
        let strategy = AttackStrategy::new(kind, r).map_err(|e| e.to_string())?;
        let analytic = strategy.analytic_guess_prob();
        let mut g = rng::stream(SEED, i as u64, rng::Role::Adversary);
        let mut rounds = Vec::with_capacity(rounds_n);
        for _ in 0..rounds_n {
            let x = g.random::<bool>() as u8;
            let theta = QubitBasis::from_index(g.random::<bool>() as usize);
            let round = apply_attack(&strategy, x, theta, &mut g).map_err(|e| e.to_string())?;
            rounds.push(ScoredRound { round, x, theta });
        }
        let reveal: Vec<QubitBasis> = rounds.iter().map(|r| r.theta).collect();
        let stats =
            adversary_finish(&strategy, &rounds, &reveal, &mut g).map_err(|e| e.to_string())?;
        let sigma = (expected * (1.0 - expected) / rounds_n as f64).sqrt();
        let z = (stats.empirical - expected) / sigma;
        ok &= (analytic - expected).abs() <= 1e-12 && z.abs() <= 3.0;
        details.push(format!(
            "{label}: analytic {analytic:.6}, MC {:.4} (z={z:+.2})",
            stats.empirical
        ));
    }
    check(ok, details.join("; "))
}

fn c10_exact() -> Verdict {
    let samples = 40;
    let mut ds = Vec::new();
    for r in [1.0, 0.8, 0.5, 0.2, 0.0] {
        let params = ProtocolParams::new(8, 1, 0.1, ChannelParams::NOISELESS, r, SEED)
            .map_err(|e| e.to_string())?;
        let strategy = AttackStrategy::new(AttackKind::StoreAsIs, r).map_err(|e| e.to_string())?;
        let est =
            exact_advantage_small_n(&params, &strategy, samples).map_err(|e| e.to_string())?;
        ds.push((r, est));
    }
    let top = &ds[0].1;
    let per_sample_ok = (top.mean - 0.5).abs() <= 1e-9 && top.ci95 <= 1e-9;
    let monotone = ds.windows(2).all(|w| w[1].1.mean <= w[0].1.mean + 1e-12);
    check(
        per_sample_ok && monotone,
        ds.iter()
            .map(|(r, e)| format!("d(r={r}) = {:.6}", e.mean))
            .collect::<Vec<_>>()
            .join(", "),
    )
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Verdict); 10] = [
        ("threshold r_hat", c1_r_hat),
        ("QBER threshold", c2_qber),
        ("uncertainty optimisation", c3_uncertainty),
        ("claim suite", c4_claims),
        ("entropy lemmas", c5_entropy),
        ("privacy amplification", c6_privacy_amplification),
        ("security calculators", c7_calculators),
        ("protocol correctness", c8_correctness),
        ("adversary guess rates", c9_adversary),
        ("exact small-n security", c10_exact),
    ];
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let verdict = run();
        let secs = start.elapsed().as_secs_f64();
        let (tag, detail) = match verdict {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failures += 1;
                ("FAIL", d)
            }
        };
        println!("criterion {:>2} {tag} {name} ({secs:.1}s): {detail}", i + 1);
    }
    println!(
        "acceptance: {} passed, {failures} failed",
        criteria.len() - failures
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
