use std::fmt::Write as _;

use nsot_core::bounds::{ell_ideal, OtParams};
use nsot_core::protocol::{
    run_honest, simulate as run_simulation, AttackKind, AttackStrategy, ChannelParams,
    ProtocolParams, SimOptions, EXACT_MAX_ELL, EXACT_MAX_N,
};
use nsot_core::qmath::QubitBasis;
use nsot_core::uncertainty::{r_hat, t_closed_form, t_numeric, GridSpec};
use nsot_core::verify::{run_suite, Suite};
use serde_json::json;

use crate::output::{emit, fmt_num, json_text};
use crate::{
    BoundsArgs, Failure, Format, Global, Mode, SimulateArgs, StrategyName, UncertaintyArgs,
    VerifyArgs,
};

type Outcome = Result<(), Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

/// Grid `r_min, r_min + step, …` up to `r_max` (inclusive within 1e-9).
fn r_grid(a: &UncertaintyArgs) -> Result<Vec<f64>, Failure> {
    if !(a.step > 0.0) {
        return Err(usage(format!("--step must be positive, got {}", a.step)));
    }
    if !(0.0 <= a.r_min && a.r_min <= a.r_max && a.r_max <= 1.0) {
        return Err(usage(format!(
            "need 0 <= r-min <= r-max <= 1, got [{}, {}]",
            a.r_min, a.r_max
        )));
    }
    let count = ((a.r_max - a.r_min) / a.step + 1e-9).floor() as usize + 1;
    Ok((0..count)
        .map(|i| (a.r_min + i as f64 * a.step).min(1.0))
        .collect())
}

pub fn uncertainty(a: &UncertaintyArgs, g: &Global) -> Outcome {
    let rs = r_grid(a)?;
    let grid = GridSpec::default();
    let row = |r: f64| -> Result<(f64, f64, f64, f64), Failure> {
        let m = t_numeric(r, &grid)?;
        Ok((r, t_closed_form(r)?, m.min_bits, m.argmin_alpha))
    };
    let rows = rs.into_iter().map(row).collect::<Result<Vec<_>, _>>()?;
    let threshold = row(r_hat())?;
    let text = match g.format.unwrap_or(Format::Csv) {
        Format::Csv => {
            let mut s = String::from("r,t_closed,t_numeric,argmin_alpha\n");
            for (r, tc, tn, al) in &rows {
                let _ = writeln!(
                    s,
                    "{},{},{},{}",
                    fmt_num(*r),
                    fmt_num(*tc),
                    fmt_num(*tn),
                    fmt_num(*al)
                );
            }
            let (r, tc, tn, al) = threshold;
            let _ = writeln!(
                s,
                "# r_hat={} t_closed={} t_numeric={} argmin_alpha={}",
                fmt_num(r),
                fmt_num(tc),
                fmt_num(tn),
                fmt_num(al)
            );
            s
        }
        Format::Json => {
            let obj = |(r, tc, tn, al): (f64, f64, f64, f64)| json!({"r": r, "t_closed": tc, "t_numeric": tn, "argmin_alpha": al});
            json_text(json!({
                "rows": rows.iter().copied().map(obj).collect::<Vec<_>>(),
                "r_hat": obj(threshold),
            }))
        }
    };
    emit(&text, g.out.as_deref())?;
    Ok(())
}

pub fn bounds(a: &BoundsArgs, g: &Global) -> Outcome {
    let t = match (a.t, a.r) {
        (Some(t), _) => t,
        (None, Some(r)) => t_closed_form(r)?,
        (None, None) => return Err(usage("one of --r or --t is required")),
    };
    let params = OtParams {
        syndrome_overhead: a.syndrome_overhead,
        ..OtParams::robust(a.n, a.eps, t, a.p_error, a.p_erase)
    };
    let report = match a.mode {
        Mode::Ideal => ell_ideal(a.n, a.eps, t)?,
        Mode::Robust => params.robust_report()?,
    };
    let mode = match a.mode {
        Mode::Ideal => "ideal",
        Mode::Robust => "robust",
    };
    let text = match g.format.unwrap_or(Format::Json) {
        Format::Json => json_text(json!({
            "params": {
                "mode": mode,
                "n": a.n,
                "eps": a.eps,
                "t": t,
                "p_error": a.p_error,
                "p_erase": a.p_erase,
                "syndrome_overhead": a.syndrome_overhead,
            },
            "report": report,
        })),
        Format::Csv => {
            let regime = serde_json::to_value(report.regime).expect("enum serializes");
            format!(
                "mode,n,eps,t,p_error,p_erase,ell_max,delta,secure,margin_bits,regime\n{mode},{},{},{},{},{},{},{},{},{},{}\n",
                a.n,
                fmt_num(a.eps),
                fmt_num(t),
                fmt_num(a.p_error),
                fmt_num(a.p_erase),
                report.ell_max,
                fmt_num(report.delta),
                report.secure,
                fmt_num(report.margin_bits),
                regime.as_str().expect("string tag"),
            )
        }
    };
    emit(&text, g.out.as_deref())?;
    if report.secure {
        Ok(())
    } else {
        Err(Failure::Infeasible(format!(
            "no positive output length (ell_max = {})",
            report.ell_max
        )))
    }
}

fn strategy_kind(a: &SimulateArgs) -> AttackKind {
    match a.strategy {
        StrategyName::Store => AttackKind::StoreAsIs,
        StrategyName::Computational => AttackKind::MeasureComputational,
        StrategyName::Hadamard => AttackKind::MeasureHadamard,
        StrategyName::Breidbart => AttackKind::MeasureBreidbart,
        StrategyName::Partial => AttackKind::Partial {
            alpha: a.alpha,
            x_hat: a.x_hat,
            z_hat: a.z_hat,
        },
    }
}

pub fn simulate(a: &SimulateArgs, g: &Global) -> Outcome {
    if g.format == Some(Format::Csv) {
        return Err(usage("simulate only writes json"));
    }
    if a.exact && (a.n > EXACT_MAX_N || a.ell > EXACT_MAX_ELL) {
        return Err(usage(format!(
            "--exact needs --n <= {EXACT_MAX_N} and --ell <= {EXACT_MAX_ELL}, got n={} ell={}",
            a.n, a.ell
        )));
    }
    let channel = ChannelParams::new(a.p_error, a.p_erase)?;
    let params = ProtocolParams::new(a.n, a.ell, a.eps, channel, a.r, g.seed)?;
    let strategy = AttackStrategy::new(strategy_kind(a), a.r)?;
    let opts = SimOptions {
        exact_samples: a.exact.then_some(a.samples),
    };
    let report = run_simulation(&params, &strategy, a.trials, &opts)?;
    if let Some(path) = &a.transcript {
        let run = run_honest(&params, QubitBasis::Computational)?;
        std::fs::write(path, run.transcript.to_jsonl())?;
    }
    let mut value = serde_json::to_value(&report).expect("report serializes");
    value["params"]["strategy"] = serde_json::to_value(strategy.kind).expect("serializes");
    value["params"]["trials"] = json!(a.trials);
    emit(&json_text(value), g.out.as_deref())?;
    Ok(())
}

pub fn verify(a: &VerifyArgs, g: &Global) -> Outcome {
    let suite: Suite = a.suite.parse()?;
    let results = run_suite(suite, g.seed);
    let text = match g.format {
        Some(Format::Json) => json_text(serde_json::Value::Array(
            results
                .iter()
                .map(|c| {
                    json!({
                        "name": c.name,
                        "passed": c.passed,
                        "cases": c.cases,
                        "worst": c.worst,
                        "counterexample": c.counterexample,
                    })
                })
                .collect(),
        )),
        _ => results.iter().map(|c| format!("{c}\n")).collect(),
    };
    emit(&text, g.out.as_deref())?;
    match results.iter().find(|c| !c.passed) {
        None => Ok(()),
        Some(c) => Err(Failure::Verification(format!(
            "{} failed: {}",
            c.name,
            c.counterexample
                .as_deref()
                .unwrap_or("no counterexample recorded")
        ))),
    }
}
