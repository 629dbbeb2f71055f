use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::matrix::{CMatrix, C64};
use crate::error::{param, Error, Result};

pub const MIN_DIM: usize = 2;
pub const MAX_DIM: usize = 16;
pub const HERMITIAN_TOL: f64 = 1e-12;
pub const PSD_TOL: f64 = 1e-10;
pub const TRACE_TOL: f64 = 1e-10;

/// Encoding basis of a BB84 qubit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum QubitBasis {
    /// Computational basis, serialized as `+`.
    #[serde(rename = "+")]
    Computational,
    /// Hadamard basis, serialized as `x`.
    #[serde(rename = "x")]
    Hadamard,
}

impl QubitBasis {
    pub const BOTH: [QubitBasis; 2] = [QubitBasis::Computational, QubitBasis::Hadamard];

    pub fn index(self) -> usize {
        match self {
            QubitBasis::Computational => 0,
            QubitBasis::Hadamard => 1,
        }
    }

    pub fn from_index(i: usize) -> Self {
        if i == 0 {
            QubitBasis::Computational
        } else {
            QubitBasis::Hadamard
        }
    }

    pub fn other(self) -> Self {
        match self {
            QubitBasis::Computational => QubitBasis::Hadamard,
            QubitBasis::Hadamard => QubitBasis::Computational,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            QubitBasis::Computational => "+",
            QubitBasis::Hadamard => "x",
        }
    }
}

impl fmt::Display for QubitBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

impl FromStr for QubitBasis {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "+" => Ok(QubitBasis::Computational),
            "x" => Ok(QubitBasis::Hadamard),
            other => Err(param(format!(
                "unknown basis {other:?}, expected \"+\" or \"x\""
            ))),
        }
    }
}

/// A validated density operator: Hermitian, positive semi-definite, unit trace.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix(CMatrix);

impl DensityMatrix {
    pub fn new(m: CMatrix) -> Result<Self> {
        let dim = m.dim();
        if !(MIN_DIM..=MAX_DIM).contains(&dim) {
            return Err(Error::BadDimension(dim, MIN_DIM, MAX_DIM));
        }
        let defect = m.hermiticity_defect();
        if defect > HERMITIAN_TOL {
            return Err(Error::NotHermitian(defect));
        }
        let tr = m.trace().re;
        if (tr - 1.0).abs() > TRACE_TOL {
            return Err(Error::BadTrace(tr));
        }
        let min = m.eigh().min();
        if min < -PSD_TOL {
            return Err(Error::NotPsd(min));
        }
        Ok(Self(m))
    }

    /// Pure state |v><v| from a normalized vector.
    pub fn pure(v: &[C64]) -> Result<Self> {
        Self::new(CMatrix::outer(v))
    }

    pub fn maximally_mixed(dim: usize) -> Result<Self> {
        Self::new(CMatrix::identity(dim).scale(1.0 / dim as f64))
    }

    /// Normalizes a PSD operator with positive trace.
    pub fn normalized(m: &CMatrix) -> Result<Self> {
        let tr = m.trace().re;
        if tr <= 0.0 {
            return Err(param(format!("cannot normalize operator with trace {tr}")));
        }
        Self::new(m.scale(1.0 / tr))
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> CMatrix {
        self.0
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        self.0.eigenvalues_hermitian()
    }

    pub fn tensor(&self, other: &DensityMatrix) -> Result<DensityMatrix> {
        DensityMatrix::new(self.0.kron(&other.0))
    }

    /// Convex combination `w·self + (1-w)·other`.
    pub fn mix(&self, w: f64, other: &DensityMatrix) -> Result<DensityMatrix> {
        if !(0.0..=1.0).contains(&w) {
            return Err(param(format!("mixing weight {w} outside [0,1]")));
        }
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch(self.dim(), other.dim()));
        }
        DensityMatrix::new(&self.0.scale(w) + &other.0.scale(1.0 - w))
    }
}

/// `N(ρ) = r·ρ + (1-r)·id/d`: keeps the state with probability `r`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DepolarizingChannel {
    r: f64,
}

impl DepolarizingChannel {
    pub fn new(r: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&r) || r.is_nan() {
            return Err(param(format!("depolarizing parameter r={r} outside [0,1]")));
        }
        Ok(Self { r })
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn apply(&self, rho: &DensityMatrix) -> DensityMatrix {
        DensityMatrix(self.apply_operator(rho.matrix()))
    }

    /// Linear extension to arbitrary operators: `r·A + (1-r)·Tr(A)·id/d`.
    pub fn apply_operator(&self, a: &CMatrix) -> CMatrix {
        let d = a.dim();
        let tr = a.trace();
        let mut out = a.scale(self.r);
        let shift = tr * ((1.0 - self.r) / d as f64);
        for i in 0..d {
            out[(i, i)] += shift;
        }
        out
    }
}

fn basis_vector(x: u8, basis: QubitBasis) -> [C64; 2] {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    match (basis, x) {
        (QubitBasis::Computational, 0) => [C64::new(1.0, 0.0), C64::new(0.0, 0.0)],
        (QubitBasis::Computational, _) => [C64::new(0.0, 0.0), C64::new(1.0, 0.0)],
        (QubitBasis::Hadamard, 0) => [C64::new(s, 0.0), C64::new(s, 0.0)],
        (QubitBasis::Hadamard, _) => [C64::new(s, 0.0), C64::new(-s, 0.0)],
    }
}

/// |x⟩⟨x|_θ as a 2×2 matrix.
pub fn bb84_matrix(x: u8, basis: QubitBasis) -> CMatrix {
    CMatrix::outer(&basis_vector(x, basis))
}

/// |x⟩⟨x|_θ. Only the lowest bit of `x` is used.
pub fn bb84_state(x: u8, basis: QubitBasis) -> DensityMatrix {
    DensityMatrix(bb84_matrix(x & 1, basis))
}

pub fn depolarize(rho: &DensityMatrix, r: f64) -> Result<DensityMatrix> {
    Ok(DepolarizingChannel::new(r)?.apply(rho))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bb84_examples() {
        assert!(
            bb84_state(0, QubitBasis::Computational)
                .matrix()
                .max_abs_diff(&CMatrix::diag(&[1.0, 0.0]))
                < 1e-15
        );
        assert!(
            bb84_state(1, QubitBasis::Computational)
                .matrix()
                .max_abs_diff(&CMatrix::diag(&[0.0, 1.0]))
                < 1e-15
        );
        let minus = CMatrix::from_real_rows(2, &[0.5, -0.5, -0.5, 0.5]);
        assert!(
            bb84_state(1, QubitBasis::Hadamard)
                .matrix()
                .max_abs_diff(&minus)
                < 1e-15
        );
    }

    #[test]
    fn depolarize_examples() {
        let rho = bb84_state(0, QubitBasis::Computational);
        assert_eq!(depolarize(&rho, 1.0).unwrap(), rho);
        let mixed = depolarize(&rho, 0.0).unwrap();
        assert!(mixed.matrix().max_abs_diff(&CMatrix::diag(&[0.5, 0.5])) < 1e-15);
        let out = depolarize(&rho, 0.6).unwrap();
        assert!(out.matrix().max_abs_diff(&CMatrix::diag(&[0.8, 0.2])) < 1e-15);
    }

    #[test]
    fn depolarize_rejects_bad_r() {
        let rho = bb84_state(0, QubitBasis::Computational);
        assert!(matches!(depolarize(&rho, 1.5), Err(Error::Parameter(_))));
        assert!(matches!(depolarize(&rho, -0.1), Err(Error::Parameter(_))));
    }

    #[test]
    fn validation_rejects_bad_inputs() {
        assert!(matches!(
            DensityMatrix::new(CMatrix::diag(&[1.2, -0.2])),
            Err(Error::NotPsd(_))
        ));
        assert!(matches!(
            DensityMatrix::new(CMatrix::diag(&[0.5, 0.4])),
            Err(Error::BadTrace(_))
        ));
        let skew = CMatrix::from_real_rows(2, &[0.5, 0.1, 0.0, 0.5]);
        assert!(matches!(
            DensityMatrix::new(skew),
            Err(Error::NotHermitian(_))
        ));
        assert!(matches!(
            DensityMatrix::new(CMatrix::identity(17).scale(1.0 / 17.0)),
            Err(Error::BadDimension(17, _, _))
        ));
    }

    #[test]
    fn basis_serializes_as_symbols() {
        assert_eq!(
            serde_json::to_string(&QubitBasis::Hadamard).unwrap(),
            "\"x\""
        );
        assert_eq!(
            "+".parse::<QubitBasis>().unwrap(),
            QubitBasis::Computational
        );
        assert!("z".parse::<QubitBasis>().is_err());
    }
}
