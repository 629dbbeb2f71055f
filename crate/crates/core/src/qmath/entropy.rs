use super::matrix::CMatrix;
use super::state::{DensityMatrix, PSD_TOL};
use crate::error::{param, Error, Result};

/// Eigenvalues below this are treated as exact zeros in `λ log λ`.
pub const EIGEN_ZERO: f64 = 1e-14;

/// Which half of `[0,1]` the binary-entropy inverse returns.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Branch {
    /// `p ∈ [0, ½]`
    Lower,
    /// `p ∈ [½, 1]`
    Upper,
}

fn plogp(p: f64) -> f64 {
    if p <= EIGEN_ZERO {
        0.0
    } else {
        p * p.log2()
    }
}

/// h(p) = -p log p - (1-p) log(1-p), base 2.
pub fn binary_entropy(p: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&p) {
        return Err(param(format!("binary entropy argument {p} outside [0,1]")));
    }
    Ok(h(p))
}

/// Unchecked binary entropy; arguments are clamped into `[0,1]`.
pub(crate) fn h(p: f64) -> f64 {
    let p = p.clamp(0.0, 1.0);
    -(plogp(p) + plogp(1.0 - p))
}

/// Inverse of `h` on the chosen branch, by bisection.
pub fn binary_entropy_inv(y: f64, branch: Branch) -> Result<f64> {
    if !(0.0..=1.0).contains(&y) {
        return Err(param(format!("binary entropy value {y} outside [0,1]")));
    }
    if y == 0.0 {
        return Ok(match branch {
            Branch::Lower => 0.0,
            Branch::Upper => 1.0,
        });
    }
    // h is increasing on [0, 1/2]
    let (mut lo, mut hi) = (0.0_f64, 0.5_f64);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if h(mid) < y {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let p = 0.5 * (lo + hi);
    Ok(match branch {
        Branch::Lower => p,
        Branch::Upper => 1.0 - p,
    })
}

fn spectrum_entropy(values: &[f64]) -> f64 {
    -values.iter().map(|&l| plogp(l)).sum::<f64>()
}

/// Von Neumann entropy in bits.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> Result<f64> {
    operator_entropy(rho.matrix())
}

/// Entropy of a Hermitian PSD unit-trace matrix that has not been wrapped in
/// [`DensityMatrix`]; rejects spectra below the PSD tolerance.
pub fn operator_entropy(m: &CMatrix) -> Result<f64> {
    let values = m.eigenvalues_hermitian();
    if let Some(&min) = values.first() {
        if min < -PSD_TOL {
            return Err(Error::NotPsd(min));
        }
    }
    Ok(spectrum_entropy(&values))
}

fn same_dim(a: &DensityMatrix, b: &DensityMatrix) -> Result<()> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch(a.dim(), b.dim()));
    }
    Ok(())
}

/// ½‖ρ − σ‖₁
pub fn trace_distance(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    same_dim(rho, sigma)?;
    Ok(0.5 * (rho.matrix() - sigma.matrix()).trace_norm())
}

/// Uhlmann fidelity ‖√ρ √σ‖₁ = Tr √(√ρ σ √ρ).
pub fn fidelity(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    same_dim(rho, sigma)?;
    let sqrt_rho = rho.matrix().map_spectrum(|l| l.max(0.0).sqrt());
    let inner = &(&sqrt_rho * sigma.matrix()) * &sqrt_rho;
    let f: f64 = inner
        .eigenvalues_hermitian()
        .iter()
        .map(|l| l.max(0.0).sqrt())
        .sum();
    Ok(f.min(1.0))
}

/// C(ρ,σ) = √(1 − F²)
pub fn c_distance(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    let f = fidelity(rho, sigma)?;
    Ok((1.0 - f * f).max(0.0).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qmath::state::{bb84_state, depolarize, QubitBasis};

    const PLUS: QubitBasis = QubitBasis::Computational;
    const TIMES: QubitBasis = QubitBasis::Hadamard;

    #[test]
    fn entropy_examples() {
        let mixed = DensityMatrix::maximally_mixed(2).unwrap();
        assert!((von_neumann_entropy(&mixed).unwrap() - 1.0).abs() < 1e-12);
        assert_eq!(von_neumann_entropy(&bb84_state(1, TIMES)).unwrap(), 0.0);
        let d = DensityMatrix::new(CMatrix::diag(&[0.8, 0.2])).unwrap();
        assert!((von_neumann_entropy(&d).unwrap() - 0.721928).abs() < 1e-6);
    }

    #[test]
    fn operator_entropy_rejects_negative_spectrum() {
        assert!(matches!(
            operator_entropy(&CMatrix::diag(&[1.1, -0.1])),
            Err(Error::NotPsd(_))
        ));
    }

    #[test]
    fn trace_distance_examples() {
        let zero = bb84_state(0, PLUS);
        let one = bb84_state(1, PLUS);
        assert!(trace_distance(&zero, &zero).unwrap() < 1e-15);
        assert!((trace_distance(&zero, &one).unwrap() - 1.0).abs() < 1e-14);
        for r in [0.0, 0.3, 0.77, 1.0] {
            let a = depolarize(&zero, r).unwrap();
            let b = depolarize(&one, r).unwrap();
            assert!((trace_distance(&a, &b).unwrap() - r).abs() < 1e-14);
        }
        let big = DensityMatrix::maximally_mixed(4).unwrap();
        assert!(matches!(
            trace_distance(&zero, &big),
            Err(Error::DimensionMismatch(2, 4))
        ));
    }

    #[test]
    fn c_distance_examples() {
        let zero = bb84_state(0, PLUS);
        assert!(c_distance(&zero, &zero).unwrap() < 1e-7);
        assert!((c_distance(&zero, &bb84_state(1, PLUS)).unwrap() - 1.0).abs() < 1e-12);
        let v = c_distance(&zero, &bb84_state(0, TIMES)).unwrap();
        assert!((v - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-9);
    }

    #[test]
    fn binary_entropy_examples() {
        assert_eq!(binary_entropy(0.5).unwrap(), 1.0);
        assert_eq!(binary_entropy(0.0).unwrap(), 0.0);
        assert_eq!(binary_entropy(1.0).unwrap(), 0.0);
        assert!((binary_entropy(0.11).unwrap() - 0.49999).abs() < 5e-4);
        let p = binary_entropy_inv(0.5, Branch::Upper).unwrap();
        assert!((p - 0.889972).abs() < 1e-6);
        assert!((h(p) - 0.5).abs() <= 1e-12);
        let q = binary_entropy_inv(0.5, Branch::Lower).unwrap();
        assert!((q - 0.110028).abs() < 1e-6);
        assert!(binary_entropy(1.01).is_err());
        assert!(binary_entropy_inv(-0.1, Branch::Lower).is_err());
    }

    #[test]
    fn inverse_endpoints() {
        assert_eq!(binary_entropy_inv(0.0, Branch::Lower).unwrap(), 0.0);
        assert!((binary_entropy_inv(1.0, Branch::Upper).unwrap() - 0.5).abs() < 1e-7);
    }
}
