use serde::{Deserialize, Serialize};

use crate::error::{param, Error, Result};
use crate::qmath::h;

/// Which branch of the depolarizing uncertainty bound applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regime {
    /// `r ≥ r̂`: storing the qubit is the adversary's best option, `t = h((1+r)/2)`.
    StoreLimited,
    /// `r < r̂`: measuring in a BB84 basis is best, `t = ½`.
    MeasureLimited,
}

impl Regime {
    /// Regime implied by an uncertainty bound: `t < ½` only happens above `r̂`.
    pub fn from_t(t: f64) -> Self {
        if t < 0.5 {
            Regime::StoreLimited
        } else {
            Regime::MeasureLimited
        }
    }
}

/// Inputs of the string-length calculators.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct OtParams {
    pub n: u64,
    pub eps: f64,
    /// Uncertainty bound in bits per qubit.
    pub t: f64,
    pub p_error: f64,
    pub p_erase: f64,
    /// Requested output length, if any.
    pub ell: Option<u64>,
    /// Syndrome bits sent beyond the asymptotic `h(p_error)·m_b` per string,
    /// summed over both strings. Zero is the asymptotic idealization.
    pub syndrome_overhead: f64,
}

impl OtParams {
    pub fn ideal(n: u64, eps: f64, t: f64) -> Self {
        Self {
            n,
            eps,
            t,
            p_error: 0.0,
            p_erase: 0.0,
            ell: None,
            syndrome_overhead: 0.0,
        }
    }

    pub fn robust(n: u64, eps: f64, t: f64, p_error: f64, p_erase: f64) -> Self {
        Self {
            p_error,
            p_erase,
            ..Self::ideal(n, eps, t)
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 1 {
            return Err(param("n must be at least 1"));
        }
        if !(self.eps > 0.0 && self.eps < 1.0) {
            return Err(param(format!("eps={} outside (0,1)", self.eps)));
        }
        if !(0.0..=1.0).contains(&self.t) {
            return Err(param(format!("t={} outside [0,1]", self.t)));
        }
        if !(0.0..0.5).contains(&self.p_error) {
            return Err(param(format!("p_error={} outside [0, 1/2)", self.p_error)));
        }
        if !(0.0..1.0).contains(&self.p_erase) {
            return Err(param(format!("p_erase={} outside [0,1)", self.p_erase)));
        }
        if !(self.syndrome_overhead >= 0.0) {
            return Err(param("syndrome overhead must be non-negative"));
        }
        Ok(())
    }

    /// Length report for the noiseless protocol (ignores the channel fields).
    pub fn ideal_report(&self) -> Result<SecurityReport> {
        ell_ideal(self.n, self.eps, self.t)
    }

    pub fn robust_report(&self) -> Result<SecurityReport> {
        self.validate()?;
        robust_with_overhead(self)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SecurityReport {
    /// Largest admissible output length, −1 when even ℓ = 1 is out of reach.
    pub ell_max: i64,
    pub delta: f64,
    pub secure: bool,
    /// Entropy rate left after the finite-size and error-correction penalties.
    pub margin_bits: f64,
    pub regime: Regime,
}

impl SecurityReport {
    fn from_bound(bound: f64, delta: f64, margin_bits: f64, t: f64) -> Self {
        let floored = bound.floor();
        let ell_max = if floored >= 1.0 { floored as i64 } else { -1 };
        Self {
            ell_max,
            delta,
            secure: ell_max >= 1,
            margin_bits,
            regime: Regime::from_t(t),
        }
    }
}

/// `⌈(8/5)·log₂(2/ε⁴)⌉`
pub fn min_qubits(eps: f64) -> u64 {
    (1.6 * (2.0 / eps.powi(4)).log2()).ceil() as u64
}

/// `8·√(log₂(2/ε⁴)/n_eff)`
pub fn delta_for(n_eff: f64, eps: f64) -> f64 {
    8.0 * ((2.0 / eps.powi(4)).log2() / n_eff).sqrt()
}

/// Real-valued robust bound with a caller-supplied δ:
/// `(t − δ − h(p_error))·(1−p_erase)·n/4 − ε·n/2 + ½ − log₂(1/ε)`.
pub fn robust_bound_real(n: u64, eps: f64, t: f64, delta: f64, p_error: f64, p_erase: f64) -> f64 {
    let n = n as f64;
    (t - delta - h(p_error)) * (1.0 - p_erase) * n / 4.0 - eps * n / 2.0 + 0.5 - (1.0 / eps).log2()
}

/// Real-valued noiseless bound with a caller-supplied δ: `¼(t−δ)n + ½ − log₂(1/ε)`.
pub fn ideal_bound_real(n: u64, eps: f64, t: f64, delta: f64) -> f64 {
    0.25 * (t - delta) * n as f64 + 0.5 - (1.0 / eps).log2()
}

fn check_floor(n_eff: f64, eps: f64, what: &str) -> Result<()> {
    let floor = min_qubits(eps);
    if n_eff < floor as f64 {
        return Err(Error::Precondition(format!(
            "{what}={n_eff} below the admissible floor {floor} = ceil(8/5 log2(2/eps^4))"
        )));
    }
    Ok(())
}

/// Output length of the noiseless protocol.
pub fn ell_ideal(n: u64, eps: f64, t: f64) -> Result<SecurityReport> {
    OtParams::ideal(n, eps, t).validate()?;
    check_floor(n as f64, eps, "n")?;
    let delta = delta_for(n as f64, eps);
    let bound = ideal_bound_real(n, eps, t, delta);
    Ok(SecurityReport::from_bound(bound, delta, t - delta, t))
}

/// Output length of the protocol with erasures and bit errors.
pub fn ell_robust(n: u64, eps: f64, t: f64, p_error: f64, p_erase: f64) -> Result<SecurityReport> {
    let params = OtParams::robust(n, eps, t, p_error, p_erase);
    params.validate()?;
    robust_with_overhead(&params)
}

fn robust_with_overhead(p: &OtParams) -> Result<SecurityReport> {
    if p.p_erase + p.eps >= 1.0 {
        return Err(param(format!(
            "p_erase + eps = {} must be below 1",
            p.p_erase + p.eps
        )));
    }
    let n_eff = (1.0 - p.p_erase - p.eps) * p.n as f64;
    check_floor(n_eff, p.eps, "(1-p_erase-eps)n")?;
    let delta = delta_for(n_eff, p.eps);
    let bound =
        robust_bound_real(p.n, p.eps, p.t, delta, p.p_error, p.p_erase) - p.syndrome_overhead / 2.0;
    Ok(SecurityReport::from_bound(
        bound,
        delta,
        p.t - delta - h(p.p_error),
        p.t,
    ))
}
