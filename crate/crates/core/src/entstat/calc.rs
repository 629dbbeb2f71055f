use crate::error::{param, Error, Result};

/// Parameters for the independent-copies min-entropy bound.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundParams {
    pub n: usize,
    pub eps: f64,
    pub dim_x: usize,
    pub gamma: f64,
}

impl BoundParams {
    /// `gamma` defaults to `2√dim_x + 1`.
    pub fn new(n: usize, eps: f64, dim_x: usize) -> Result<Self> {
        let gamma = 2.0 * (dim_x as f64).sqrt() + 1.0;
        Self::with_gamma(n, eps, dim_x, gamma)
    }

    pub fn with_gamma(n: usize, eps: f64, dim_x: usize, gamma: f64) -> Result<Self> {
        if n < 1 {
            return Err(param("n must be at least 1"));
        }
        if !(eps > 0.0 && eps < 1.0) {
            return Err(param(format!("eps={eps} outside (0,1)")));
        }
        if dim_x < 2 {
            return Err(param(format!("dim_x={dim_x} must be at least 2")));
        }
        if !(gamma >= 3.0) {
            return Err(param(format!("gamma={gamma} must be at least 3")));
        }
        Ok(Self {
            n,
            eps,
            dim_x,
            gamma,
        })
    }

    /// Smallest admissible `n`: `⌈(8/5)·log₂(2/ε²)⌉`.
    pub fn min_rounds(eps: f64) -> usize {
        (1.6 * (2.0 / (eps * eps)).log2()).ceil() as usize
    }

    /// Per-round penalty `δ = √(log₂(2/ε²)/n) · 4 log₂(2√dim_x + 1)`.
    pub fn delta(&self) -> f64 {
        let l = (2.0 / (self.eps * self.eps)).log2();
        (l / self.n as f64).sqrt() * 4.0 * (2.0 * (self.dim_x as f64).sqrt() + 1.0).log2()
    }

    fn check(&self, per_round: &[f64]) -> Result<()> {
        if per_round.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                got: per_round.len(),
            });
        }
        let floor = Self::min_rounds(self.eps);
        if self.n < floor {
            return Err(Error::Precondition(format!(
                "n={} below the admissible floor {floor} = ceil(8/5 log2(2/eps^2))",
                self.n
            )));
        }
        Ok(())
    }
}

/// Privacy amplification: `2^{−½(H − ℓ) − 1} + ε`.
pub fn pa_bound(hmin: f64, ell: usize, eps: f64) -> Result<f64> {
    if eps < 0.0 {
        return Err(param(format!("eps={eps} must be non-negative")));
    }
    Ok((-0.5 * (hmin - ell as f64) - 1.0).exp2() + eps)
}

/// Lower bound on the smooth min-entropy of `n` independent cq-states over
/// the same spaces: `Σ H_i − δ·n`.
pub fn aep_lower_bound(params: &BoundParams, per_round_entropy: &[f64]) -> Result<f64> {
    params.check(per_round_entropy)?;
    let total: f64 = per_round_entropy.iter().sum();
    Ok(total - params.delta() * params.n as f64)
}

/// General form with an explicit single-system contribution γ:
/// `Σ H_i − 4 log₂(γ) √(log₂(2/ε²)) √n`.
pub fn aep_lower_bound_gamma(params: &BoundParams, per_round_entropy: &[f64]) -> Result<f64> {
    params.check(per_round_entropy)?;
    let total: f64 = per_round_entropy.iter().sum();
    let l = (2.0 / (params.eps * params.eps)).log2();
    Ok(total - 4.0 * params.gamma.log2() * l.sqrt() * (params.n as f64).sqrt())
}

/// Outcome of splitting min-entropy between independent branches.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Split {
    /// Branch of smallest entropy (lowest index on ties).
    pub index: usize,
    /// Pairwise joint entropy the guarantee is computed from.
    pub alpha: f64,
    /// Entropy guaranteed for every other branch.
    pub guaranteed_bits: f64,
}

/// Splits using the pairwise bound implied by additivity,
/// `α = min_{i≠j} (H_i + H_j)`.
pub fn split_index(branch_entropies: &[f64]) -> Result<Split> {
    validate_branches(branch_entropies)?;
    let mut sorted = branch_entropies.to_vec();
    sorted.sort_by(f64::total_cmp);
    split_index_with_alpha(branch_entropies, sorted[0] + sorted[1])
}

/// Splits given an externally known pairwise bound `α`: the guarantee is
/// `α/2` for two branches and `α/2 − log₂ m` for `m > 2`.
pub fn split_index_with_alpha(branch_entropies: &[f64], alpha: f64) -> Result<Split> {
    validate_branches(branch_entropies)?;
    let m = branch_entropies.len();
    let index = branch_entropies
        .iter()
        .enumerate()
        .fold(
            0,
            |best, (i, &h)| if h < branch_entropies[best] { i } else { best },
        );
    let guaranteed_bits = if m == 2 {
        alpha / 2.0
    } else {
        alpha / 2.0 - (m as f64).log2()
    };
    Ok(Split {
        index,
        alpha,
        guaranteed_bits,
    })
}

fn validate_branches(b: &[f64]) -> Result<()> {
    if b.len() < 2 {
        return Err(param(format!("need at least 2 branches, got {}", b.len())));
    }
    if let Some(&x) = b.iter().find(|&&x| !(x >= 0.0)) {
        return Err(param(format!("branch entropy {x} must be non-negative")));
    }
    Ok(())
}

/// `min(1, 2·e^{−2ε²n})`: bound on `Pr[|S − pn| > εn]` for a binomial `S`.
pub fn chernoff_tail(n: usize, eps: f64) -> Result<f64> {
    if n < 1 {
        return Err(param("n must be at least 1"));
    }
    if eps < 0.0 {
        return Err(param(format!("eps={eps} must be non-negative")));
    }
    Ok((2.0 * (-2.0 * eps * eps * n as f64).exp()).min(1.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pa_examples() {
        assert!((pa_bound(7.0, 7, 0.0).unwrap() - 0.5).abs() < 1e-15);
        assert!((pa_bound(10.0, 4, 0.0).unwrap() - 0.0625).abs() < 1e-15);
        assert!((pa_bound(20.0, 10, 0.01).unwrap() - 0.025625).abs() < 1e-15);
        assert!(pa_bound(1.0, 1, -0.1).is_err());
    }

    #[test]
    fn aep_examples() {
        let p = BoundParams::new(1_000_000, 1e-3, 2).unwrap();
        let zeros = vec![0.0; p.n];
        let d = p.delta();
        assert!((aep_lower_bound(&p, &zeros).unwrap() + d * 1e6).abs() < 1e-6);

        let halves = vec![0.5; p.n];
        // δ = √(20.931569/10⁶) · 4 · log₂(2√2+1)
        assert!((d - 0.035443).abs() < 5e-6, "{d}");
        let bound = aep_lower_bound(&p, &halves).unwrap();
        assert!((bound - (500_000.0 - d * 1e6)).abs() < 1e-6);

        let g = BoundParams::with_gamma(1_000_000, 1e-3, 2, 2.0 * 2f64.sqrt() + 1.0).unwrap();
        let bg = aep_lower_bound_gamma(&g, &halves).unwrap();
        assert!((bg - bound).abs() < 1e-6);
    }

    #[test]
    fn aep_floor_enforced() {
        assert_eq!(BoundParams::min_rounds(1e-3), 34);
        let p = BoundParams::new(33, 1e-3, 2).unwrap();
        assert!(matches!(
            aep_lower_bound(&p, &vec![1.0; 33]),
            Err(Error::Precondition(_))
        ));
        let ok = BoundParams::new(34, 1e-3, 2).unwrap();
        assert!(aep_lower_bound(&ok, &vec![1.0; 34]).is_ok());
        assert!(BoundParams::with_gamma(10, 0.1, 2, 2.5).is_err());
        assert!(BoundParams::new(10, 1.0, 2).is_err());
    }

    #[test]
    fn split_examples() {
        let s = split_index(&[3.0, 7.0]).unwrap();
        assert_eq!(s.index, 0);
        assert_eq!(s.guaranteed_bits, 5.0);
        let s = split_index(&[4.0, 4.0]).unwrap();
        assert_eq!((s.index, s.guaranteed_bits), (0, 4.0));
        let s = split_index_with_alpha(&[6.0, 7.0, 6.5, 8.0], 12.0).unwrap();
        assert_eq!(s.guaranteed_bits, 4.0);
        assert!(split_index(&[]).is_err());
        assert!(split_index(&[1.0]).is_err());
    }

    #[test]
    fn chernoff_examples() {
        assert_eq!(chernoff_tail(50, 0.0).unwrap(), 1.0);
        assert!((chernoff_tail(100, 0.1).unwrap() - 0.270671).abs() < 1e-6);
        let tiny = chernoff_tail(10_000, 0.05).unwrap();
        assert!((tiny / 3.857499695927836e-22 - 1.0).abs() < 1e-9);
    }
}
