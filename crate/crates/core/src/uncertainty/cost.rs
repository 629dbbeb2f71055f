use crate::error::{Error, Result};
use crate::qmath::{bb84_matrix, h, operator_entropy, CMatrix, DepolarizingChannel, QubitBasis};

use super::operator::{completeness_defect, MeasurementOperator};

/// Outcomes rarer than this are treated as impossible.
pub const OUTCOME_CUTOFF: f64 = 1e-14;
const COMPLETENESS_TOL: f64 = 1e-8;

fn channel(r: f64) -> Result<DepolarizingChannel> {
    DepolarizingChannel::new(r)
}

/// `H(X|ΘKE)` when uniform BB84 input `(X, Θ)` is measured with `ops`, the
/// outcome `K` is kept classically and the post-measurement qubit passes
/// through depolarizing storage with parameter `r`.
pub fn cost_b(ops: &[CMatrix], r: f64) -> Result<f64> {
    let noise = channel(r)?;
    let defect = completeness_defect(ops)?;
    if defect > COMPLETENESS_TOL {
        return Err(Error::IncompleteMeasurement(defect));
    }
    if ops[0].dim() != 2 {
        return Err(Error::DimensionMismatch(2, ops[0].dim()));
    }
    let mut classical = 0.0;
    let mut stored = 0.0;
    let mut mixture = 0.0;
    for theta in QubitBasis::BOTH {
        let inputs = [bb84_matrix(0, theta), bb84_matrix(1, theta)];
        for f in ops {
            let fd = f.adjoint();
            let post: Vec<CMatrix> = inputs.iter().map(|rho| &(f * rho) * &fd).collect();
            let probs: Vec<f64> = post.iter().map(|m| m.trace().re.max(0.0)).collect();
            let total: f64 = probs.iter().sum();
            if total < OUTCOME_CUTOFF {
                continue;
            }
            // P(θ, k) with X and Θ uniform
            let p_theta_k = total / 4.0;
            classical += p_theta_k * h(probs[0] / total);
            let mut avg = CMatrix::zeros(2);
            for (m, &p) in post.iter().zip(&probs) {
                avg = &avg + m;
                if p < OUTCOME_CUTOFF {
                    continue;
                }
                stored += p / 4.0 * operator_entropy(&noise.apply_operator(&m.scale(1.0 / p)))?;
            }
            mixture +=
                p_theta_k * operator_entropy(&noise.apply_operator(&avg.scale(1.0 / total)))?;
        }
    }
    Ok(classical + stored - mixture)
}

/// `½(h(2Tr(Fρ₀₊F)) + h(2Tr(Fρ₀ₓF))) + h((1+r)/2) − H(N(2F²))`.
pub fn cost_c(f: &MeasurementOperator, r: f64) -> Result<f64> {
    let noise = channel(r)?;
    let m = f.matrix();
    let m2 = &m * &m;
    let first: f64 = QubitBasis::BOTH
        .iter()
        .map(|&b| h(2.0 * (&m2 * &bb84_matrix(0, b)).trace().re))
        .sum::<f64>()
        / 2.0;
    let tail = operator_entropy(&noise.apply_operator(&m2.scale(2.0)))?;
    Ok(first + h((1.0 + r) / 2.0) - tail)
}

/// Closed-form evaluation of [`cost_c`] in terms of `(α, x̂, ẑ)`.
pub fn cost_c_scalar(alpha: f64, x_hat: f64, z_hat: f64, r: f64) -> f64 {
    let c = 4.0 * alpha * alpha - 1.0;
    0.5 * (h(0.5 * (1.0 + c * z_hat)) + h(0.5 * (1.0 + c * x_hat))) + h((1.0 + r) / 2.0)
        - h(2.0 * r * alpha * alpha + (1.0 - r) / 2.0)
}
