use crate::error::{param, Error, Result};
use crate::qmath::{CMatrix, DensityMatrix};

use super::classical::guess_prob_table;
use super::sdp::{dual_guess_prob, BarrierOptions};

const PROB_TOL: f64 = 1e-10;
const DIAGONAL_TOL: f64 = 1e-14;
/// Largest E dimension handled by the barrier solver.
pub const MAX_DUAL_DIM: usize = 4;

/// Classical register X with conditional states of a quantum register E:
/// `ρ_XE = Σ_x P(x) |x⟩⟨x| ⊗ ρ_E^x`.
#[derive(Clone, Debug, PartialEq)]
pub struct CqState {
    labels: Vec<String>,
    probs: Vec<f64>,
    conditionals: Vec<DensityMatrix>,
    side_register: Option<String>,
}

impl CqState {
    /// Labels default to `"0"`, `"1"`, ...
    pub fn new(probs: Vec<f64>, conditionals: Vec<DensityMatrix>) -> Result<Self> {
        let labels = (0..probs.len()).map(|i| i.to_string()).collect();
        Self::with_labels(labels, probs, conditionals)
    }

    pub fn with_labels(
        labels: Vec<String>,
        probs: Vec<f64>,
        conditionals: Vec<DensityMatrix>,
    ) -> Result<Self> {
        if probs.is_empty() {
            return Err(param("cq-state needs at least one label"));
        }
        if labels.len() != probs.len() {
            return Err(Error::LengthMismatch {
                expected: probs.len(),
                got: labels.len(),
            });
        }
        if conditionals.len() != probs.len() {
            return Err(Error::LengthMismatch {
                expected: probs.len(),
                got: conditionals.len(),
            });
        }
        if let Some(&p) = probs.iter().find(|&&p| p < 0.0 || p.is_nan()) {
            return Err(param(format!("negative probability {p}")));
        }
        let total: f64 = probs.iter().sum();
        if (total - 1.0).abs() > PROB_TOL {
            return Err(param(format!("probabilities sum to {total}")));
        }
        let dim = conditionals[0].dim();
        if let Some(c) = conditionals.iter().find(|c| c.dim() != dim) {
            return Err(Error::DimensionMismatch(dim, c.dim()));
        }
        Ok(Self {
            labels,
            probs,
            conditionals,
            side_register: None,
        })
    }

    /// Classical X with a classical E given as a joint table `p[x][e]`.
    pub fn classical(joint: &[Vec<f64>]) -> Result<Self> {
        let e_len = joint.first().map_or(0, Vec::len).max(2);
        let mut probs = Vec::with_capacity(joint.len());
        let mut conditionals = Vec::with_capacity(joint.len());
        for row in joint {
            let px: f64 = row.iter().sum();
            probs.push(px);
            let mut diag = vec![0.0; e_len];
            if px > 0.0 {
                for (e, &p) in row.iter().enumerate() {
                    diag[e] = p / px;
                }
            } else {
                diag.iter_mut().for_each(|d| *d = 1.0 / e_len as f64);
            }
            conditionals.push(DensityMatrix::new(CMatrix::diag(&diag))?);
        }
        Self::new(probs, conditionals)
    }

    /// Tags the state as also carrying a named classical side register.
    pub fn with_side_register(mut self, name: impl Into<String>) -> Self {
        self.side_register = Some(name.into());
        self
    }

    pub fn side_register(&self) -> Option<&str> {
        self.side_register.as_deref()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn conditionals(&self) -> &[DensityMatrix] {
        &self.conditionals
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    pub fn e_dim(&self) -> usize {
        self.conditionals[0].dim()
    }

    /// Sub-normalized operators `P(x)·ρ_E^x`.
    pub fn weighted(&self) -> Vec<CMatrix> {
        self.probs
            .iter()
            .zip(&self.conditionals)
            .map(|(&p, rho)| rho.matrix().scale(p))
            .collect()
    }

    /// `ρ_E = Σ_x P(x) ρ_E^x`
    pub fn marginal_e(&self) -> CMatrix {
        let mut acc = CMatrix::zeros(self.e_dim());
        for w in self.weighted() {
            acc = &acc + &w;
        }
        acc
    }

    /// Joint operator `Σ_x P(x)|x⟩⟨x| ⊗ ρ_E^x` (dimension |X|·d_E).
    pub fn joint_operator(&self) -> CMatrix {
        let nx = self.len();
        let d = self.e_dim();
        let mut out = CMatrix::zeros(nx * d);
        for (x, w) in self.weighted().iter().enumerate() {
            for i in 0..d {
                for j in 0..d {
                    out[(x * d + i, x * d + j)] = w[(i, j)];
                }
            }
        }
        out
    }

    pub fn is_classical(&self) -> bool {
        self.conditionals
            .iter()
            .all(|c| c.matrix().is_diagonal(DIAGONAL_TOL))
    }

    /// Product of two independent cq-states; labels are joined with `,`.
    pub fn tensor(&self, other: &CqState) -> Result<CqState> {
        let mut labels = Vec::new();
        let mut probs = Vec::new();
        let mut conditionals = Vec::new();
        for (i, a) in self.conditionals.iter().enumerate() {
            for (j, b) in other.conditionals.iter().enumerate() {
                labels.push(format!("{},{}", self.labels[i], other.labels[j]));
                probs.push(self.probs[i] * other.probs[j]);
                conditionals.push(a.tensor(b)?);
            }
        }
        let total: f64 = probs.iter().sum();
        probs.iter_mut().for_each(|p| *p /= total);
        CqState::with_labels(labels, probs, conditionals)
    }
}

/// Optimal probability of distinguishing `ρ0` (prior `p0`) from `ρ1` (prior `p1`):
/// `½(1 + ‖p0ρ0 − p1ρ1‖₁)`.
pub fn helstrom_guess_prob(
    p0: f64,
    rho0: &DensityMatrix,
    p1: f64,
    rho1: &DensityMatrix,
) -> Result<f64> {
    if rho0.dim() != rho1.dim() {
        return Err(Error::DimensionMismatch(rho0.dim(), rho1.dim()));
    }
    if p0 < 0.0 || p1 < 0.0 || (p0 + p1 - 1.0).abs() > PROB_TOL {
        return Err(param(format!(
            "priors {p0}, {p1} do not form a distribution"
        )));
    }
    Ok(helstrom_weighted(
        &rho0.matrix().scale(p0),
        &rho1.matrix().scale(p1),
    ))
}

/// Helstrom value for two sub-normalized operators: `½(Tr(A+B) + ‖A − B‖₁)`.
pub(crate) fn helstrom_weighted(a: &CMatrix, b: &CMatrix) -> f64 {
    let total = a.trace().re + b.trace().re;
    0.5 * (total + (a - b).trace_norm())
}

/// `P_guess(X|E)` by the exact method for the instance: Helstrom for binary
/// X, the classical formula for diagonal E, the barrier dual otherwise.
pub fn guess_prob_cq(state: &CqState) -> Result<f64> {
    if state.len() == 1 {
        return Ok(1.0);
    }
    if state.len() == 2 {
        let w = state.weighted();
        return Ok(helstrom_weighted(&w[0], &w[1]));
    }
    if state.is_classical() {
        let d = state.e_dim();
        let table: Vec<Vec<f64>> = (0..d)
            .map(|e| state.weighted().iter().map(|w| w[(e, e)].re).collect())
            .collect();
        return Ok(guess_prob_table(&table));
    }
    if state.e_dim() > MAX_DUAL_DIM {
        return Err(Error::Unsupported(format!(
            "quantum E of dimension {} with {} labels (exact method limited to dimension {MAX_DUAL_DIM})",
            state.e_dim(),
            state.len()
        )));
    }
    Ok(dual_guess_prob(state, &BarrierOptions::default())?.dual_value)
}

/// `H∞(X|E) = −log₂ P_guess(X|E)`.
pub fn min_entropy_cq(state: &CqState) -> Result<f64> {
    Ok(-guess_prob_cq(state)?.log2())
}

/// Min-entropy through the dual program `min{Tr σ : σ ⪰ P(x)ρ_E^x}`.
pub fn min_entropy_dual(state: &CqState) -> Result<f64> {
    Ok(-dual_guess_prob(state, &BarrierOptions::default())?
        .dual_value
        .log2())
}

/// `d(X|E) = ½‖id/|X| ⊗ ρ_E − ρ_XE‖₁`, evaluated blockwise.
pub fn non_uniformity(state: &CqState) -> f64 {
    let rho_e = state.marginal_e();
    let share = rho_e.scale(1.0 / state.len() as f64);
    0.5 * state
        .weighted()
        .iter()
        .map(|w| (w - &share).trace_norm())
        .sum::<f64>()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qmath::{bb84_state, depolarize, QubitBasis};

    fn diag(v: &[f64]) -> DensityMatrix {
        DensityMatrix::new(CMatrix::diag(v)).unwrap()
    }

    #[test]
    fn helstrom_examples() {
        let zero = bb84_state(0, QubitBasis::Computational);
        let one = bb84_state(1, QubitBasis::Computational);
        assert!((helstrom_guess_prob(0.5, &zero, 0.5, &one).unwrap() - 1.0).abs() < 1e-14);
        assert!((helstrom_guess_prob(0.5, &zero, 0.5, &zero).unwrap() - 0.5).abs() < 1e-14);
        for r in [0.0, 0.25, 0.9] {
            for basis in QubitBasis::BOTH {
                let a = depolarize(&bb84_state(0, basis), r).unwrap();
                let b = depolarize(&bb84_state(1, basis), r).unwrap();
                let p = helstrom_guess_prob(0.5, &a, 0.5, &b).unwrap();
                assert!((p - (1.0 + r) / 2.0).abs() < 1e-14);
            }
        }
        let big = DensityMatrix::maximally_mixed(4).unwrap();
        assert!(matches!(
            helstrom_guess_prob(0.5, &zero, 0.5, &big),
            Err(Error::DimensionMismatch(2, 4))
        ));
        assert!(helstrom_guess_prob(0.5, &zero, 0.6, &one).is_err());
    }

    #[test]
    fn min_entropy_examples() {
        let mixed = DensityMatrix::maximally_mixed(2).unwrap();
        let indep = CqState::new(vec![0.5, 0.5], vec![mixed.clone(), mixed]).unwrap();
        assert!((min_entropy_cq(&indep).unwrap() - 1.0).abs() < 1e-12);

        let copied =
            CqState::new(vec![0.5, 0.5], vec![diag(&[1.0, 0.0]), diag(&[0.0, 1.0])]).unwrap();
        assert!(min_entropy_cq(&copied).unwrap().abs() < 1e-12);

        let bb84 = CqState::new(
            vec![0.5, 0.5],
            vec![
                bb84_state(0, QubitBasis::Computational),
                bb84_state(0, QubitBasis::Hadamard),
            ],
        )
        .unwrap();
        let expected = -(0.5 + 0.25 * 2f64.sqrt()).log2();
        assert!((min_entropy_cq(&bb84).unwrap() - expected).abs() < 1e-12);
        assert!((min_entropy_cq(&bb84).unwrap() - 0.228447).abs() < 1e-6);
    }

    #[test]
    fn classical_three_labels() {
        // X uniform over 3 values, E reveals whether X == 0
        let joint = vec![
            vec![1.0 / 3.0, 0.0],
            vec![0.0, 1.0 / 3.0],
            vec![0.0, 1.0 / 3.0],
        ];
        let st = CqState::classical(&joint).unwrap();
        assert!((guess_prob_cq(&st).unwrap() - 2.0 / 3.0).abs() < 1e-14);
    }

    #[test]
    fn unsupported_large_quantum_instance() {
        let mut rng = rand::rng();
        let conds: Vec<_> = (0..3)
            .map(|_| crate::qmath::random::random_mixed(8, 2, &mut rng))
            .collect();
        let st = CqState::new(vec![0.2, 0.3, 0.5], conds).unwrap();
        assert!(matches!(min_entropy_cq(&st), Err(Error::Unsupported(_))));
    }

    #[test]
    fn non_uniformity_examples() {
        let mixed = DensityMatrix::maximally_mixed(2).unwrap();
        let indep = CqState::new(vec![0.5, 0.5], vec![mixed.clone(), mixed.clone()]).unwrap();
        assert!(non_uniformity(&indep).abs() < 1e-15);

        let copied =
            CqState::new(vec![0.5, 0.5], vec![diag(&[1.0, 0.0]), diag(&[0.0, 1.0])]).unwrap();
        assert!((non_uniformity(&copied) - 0.5).abs() < 1e-14);

        let biased = CqState::new(vec![0.75, 0.25], vec![mixed.clone(), mixed]).unwrap();
        assert!((non_uniformity(&biased) - 0.25).abs() < 1e-14);
    }

    #[test]
    fn validation() {
        let m = DensityMatrix::maximally_mixed(2).unwrap();
        assert!(CqState::new(vec![0.5, 0.4], vec![m.clone(), m.clone()]).is_err());
        assert!(CqState::new(vec![0.5, 0.5], vec![m.clone()]).is_err());
        let big = DensityMatrix::maximally_mixed(3).unwrap();
        assert!(matches!(
            CqState::new(vec![0.5, 0.5], vec![m, big]),
            Err(Error::DimensionMismatch(2, 3))
        ));
    }

    #[test]
    fn joint_operator_is_normalized() {
        let st = CqState::new(
            vec![0.3, 0.7],
            vec![
                bb84_state(0, QubitBasis::Hadamard),
                bb84_state(1, QubitBasis::Computational),
            ],
        )
        .unwrap()
        .with_side_register("U");
        let j = st.joint_operator();
        assert_eq!(j.dim(), 4);
        assert!((j.trace().re - 1.0).abs() < 1e-14);
        assert_eq!(st.side_register(), Some("U"));
    }
}
