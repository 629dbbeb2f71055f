use serde::{Deserialize, Serialize};

use crate::error::{param, Result};
use crate::qmath::{binary_entropy_inv, h, Branch};
use crate::uncertainty::{r_hat, t_closed_form};

use super::length::Regime;

/// Whether some output length is achievable for large `n` at storage
/// parameter `r` and bit-error rate `p_error`.
pub fn secure_predicate(r: f64, p_error: f64) -> Result<(bool, Regime)> {
    if !(0.0..0.5).contains(&p_error) {
        return Err(param(format!("p_error={p_error} outside [0, 1/2)")));
    }
    let t = t_closed_form(r)?;
    let regime = if r >= r_hat() {
        Regime::StoreLimited
    } else {
        Regime::MeasureLimited
    };
    Ok((t > h(p_error), regime))
}

/// Largest tolerable bit-error rate against measuring adversaries: `h⁻¹(½)`.
pub fn qber_threshold() -> f64 {
    binary_entropy_inv(0.5, Branch::Lower).expect("½ is in range")
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct IdentSecurity {
    /// Distance from uniform, `½·2^{−exponent/4}`.
    pub eps_prime: f64,
    /// `t·d − 2·log₂ m − 2ℓ`
    pub exponent: f64,
    pub secure: bool,
}

/// Closeness to uniform of the hashed codeword in the identification scheme.
pub fn ident_security(t: f64, d: u64, m: u64, ell: u64) -> Result<IdentSecurity> {
    if d < 1 {
        return Err(param("code distance d must be at least 1"));
    }
    if m < 2 {
        return Err(param("m must be at least 2"));
    }
    if !(0.0..=1.0).contains(&t) {
        return Err(param(format!("t={t} outside [0,1]")));
    }
    let exponent = t * d as f64 - 2.0 * (m as f64).log2() - 2.0 * ell as f64;
    let eps_prime = 0.5 * (-0.25 * exponent).exp2();
    Ok(IdentSecurity {
        eps_prime,
        exponent,
        secure: exponent > 0.0,
    })
}

/// Admissible range for the number of surviving qubits in each basis:
/// `[⌈(1−p_erase−ε)n/2⌉, ⌊(1−p_erase+ε)n/2⌋]`.
pub fn abort_interval(n: u64, p_erase: f64, eps: f64) -> Result<(u64, u64)> {
    if !(0.0..1.0).contains(&p_erase) || eps < 0.0 {
        return Err(param(format!("p_erase={p_erase}, eps={eps} out of range")));
    }
    if p_erase + eps >= 1.0 {
        return Err(param(format!(
            "p_erase + eps = {} must be below 1",
            p_erase + eps
        )));
    }
    let half = n as f64 / 2.0;
    // absorb representation error so that exact products are not pushed across an integer
    let lo = ((1.0 - p_erase - eps) * half - 1e-9).ceil().max(0.0) as u64;
    let hi = ((1.0 - p_erase + eps) * half + 1e-9).floor() as u64;
    if lo > hi {
        return Err(param(format!("empty abort interval [{lo}, {hi}]")));
    }
    Ok((lo, hi))
}

/// `min(1, 4·e^{−2ε²n})`: bound on the honest abort probability.
pub fn honest_abort_bound(n: u64, eps: f64) -> f64 {
    (4.0 * (-2.0 * eps * eps * n as f64).exp()).min(1.0)
}
