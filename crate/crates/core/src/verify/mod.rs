//! Property suites over the numerical core. Each check reports whether it
//! held, the worst deviation seen and, on failure, the first counterexample.

mod entropy;
mod measurement;
mod pa;

use std::fmt;
use std::str::FromStr;

use crate::error::{param, Error};

pub use entropy::entropy_suite;
pub use measurement::{argmin_transition, measurement_suite};
pub use pa::{pa_exhaustive, pa_suite, PaSummary};

#[derive(Clone, Debug, PartialEq)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub cases: usize,
    /// Largest violation margin or error observed (check-specific units).
    pub worst: f64,
    pub counterexample: Option<String>,
}

impl CheckResult {
    fn new(name: &'static str) -> Self {
        Self {
            name,
            passed: true,
            cases: 0,
            worst: 0.0,
            counterexample: None,
        }
    }

    /// Records one case with error `err` against tolerance `tol`.
    fn record(&mut self, err: f64, tol: f64, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if err > self.worst || err.is_nan() {
            self.worst = err;
        }
        if !(err <= tol) && self.counterexample.is_none() {
            self.passed = false;
            self.counterexample = Some(describe());
        }
    }
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} ({} cases, worst {:.3e})",
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.cases,
            self.worst
        )?;
        if let Some(c) = &self.counterexample {
            write!(f, ": {c}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Entropy,
    Measurement,
    Pa,
    All,
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "entropy" => Ok(Suite::Entropy),
            "appendixB" => Ok(Suite::Measurement),
            "pa" => Ok(Suite::Pa),
            "all" => Ok(Suite::All),
            other => Err(param(format!(
                "unknown suite {other:?} (entropy, appendixB, pa, all)"
            ))),
        }
    }
}

pub fn run_suite(suite: Suite, seed: u64) -> Vec<CheckResult> {
    match suite {
        Suite::Entropy => entropy_suite(seed),
        Suite::Measurement => measurement_suite(seed),
        Suite::Pa => pa_suite(seed),
        Suite::All => {
            let mut all = entropy_suite(seed);
            all.extend(measurement_suite(seed));
            all.extend(pa_suite(seed));
            all
        }
    }
}
