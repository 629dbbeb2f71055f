//! Individual-storage attacks by a dishonest receiver: a measurement on each
//! incoming qubit, then depolarizing storage of what is left until the bases
//! are revealed.

use std::f64::consts::PI;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::entstat::helstrom_weighted;
use crate::error::{param, Result};
use crate::qmath::{bb84_matrix, CMatrix, DensityMatrix, DepolarizingChannel, QubitBasis, C64};
use crate::uncertainty::MeasurementOperator;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "tag", rename_all = "kebab-case")]
pub enum AttackKind {
    StoreAsIs,
    MeasureComputational,
    MeasureHadamard,
    /// Projective measurement along the axis halfway between the two bases.
    MeasureBreidbart,
    /// Orbit measurement of `F(α, x̂, ẑ)`, keeping the post-measurement state.
    Partial {
        alpha: f64,
        x_hat: f64,
        z_hat: f64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AttackStrategy {
    pub kind: AttackKind,
    pub storage: DepolarizingChannel,
}

fn projective(v0: [f64; 2]) -> Vec<CMatrix> {
    let a = [C64::new(v0[0], 0.0), C64::new(v0[1], 0.0)];
    let b = [C64::new(-v0[1], 0.0), C64::new(v0[0], 0.0)];
    vec![CMatrix::outer(&a), CMatrix::outer(&b)]
}

impl AttackStrategy {
    pub fn new(kind: AttackKind, r: f64) -> Result<Self> {
        if let AttackKind::Partial {
            alpha,
            x_hat,
            z_hat,
        } = kind
        {
            MeasurementOperator::new(alpha, x_hat, z_hat)?;
        }
        Ok(Self {
            kind,
            storage: DepolarizingChannel::new(r)?,
        })
    }

    /// Kraus operators of the measurement step, one per outcome.
    pub fn kraus(&self) -> Vec<CMatrix> {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        match self.kind {
            AttackKind::StoreAsIs => vec![CMatrix::identity(2)],
            AttackKind::MeasureComputational => projective([1.0, 0.0]),
            AttackKind::MeasureHadamard => projective([s, s]),
            AttackKind::MeasureBreidbart => projective([(PI / 8.0).cos(), (PI / 8.0).sin()]),
            AttackKind::Partial {
                alpha,
                x_hat,
                z_hat,
            } => MeasurementOperator::new(alpha, x_hat, z_hat)
                .expect("validated at construction")
                .orbit()
                .into_operators(),
        }
    }

    /// Whether a quantum register survives the measurement.
    pub fn keeps_quantum(&self) -> bool {
        matches!(
            self.kind,
            AttackKind::StoreAsIs | AttackKind::Partial { .. }
        )
    }

    /// Channel applied to the retained register; destructive measurements
    /// leave nothing, which is the same as complete depolarization.
    fn effective_storage(&self) -> DepolarizingChannel {
        if self.keeps_quantum() {
            self.storage
        } else {
            DepolarizingChannel::new(0.0).expect("0 is valid")
        }
    }

    /// Sub-normalized `P(x, k | θ)·ρ_E^{x,k}` for `x = 0, 1` given outcome `k`.
    pub fn branch_operators(&self, k: usize, theta: QubitBasis) -> [CMatrix; 2] {
        let f = &self.kraus()[k];
        let channel = self.effective_storage();
        [0u8, 1].map(|x| {
            let post = &(f * &bb84_matrix(x, theta)) * &f.adjoint();
            channel.apply_operator(&post).scale(0.5)
        })
    }

    /// Expected probability of guessing a single bit after the basis reveal.
    pub fn analytic_guess_prob(&self) -> f64 {
        let outcomes = self.kraus().len();
        QubitBasis::BOTH
            .iter()
            .map(|&theta| {
                (0..outcomes)
                    .map(|k| {
                        let [a, b] = self.branch_operators(k, theta);
                        helstrom_weighted(&a, &b)
                    })
                    .sum::<f64>()
            })
            .sum::<f64>()
            / 2.0
    }
}

/// Classical outcome and retained register of one attacked round.
#[derive(Clone, Debug, PartialEq)]
pub struct AttackRound {
    pub outcome: usize,
    pub stored: Option<DensityMatrix>,
}

/// Runs the per-qubit attack on `|x⟩_θ`.
pub fn apply_attack<R: Rng + ?Sized>(
    strategy: &AttackStrategy,
    x: u8,
    theta: QubitBasis,
    rng: &mut R,
) -> Result<AttackRound> {
    let rho = bb84_matrix(x & 1, theta);
    let kraus = strategy.kraus();
    let posts: Vec<CMatrix> = kraus.iter().map(|f| &(f * &rho) * &f.adjoint()).collect();
    let probs: Vec<f64> = posts.iter().map(|p| p.trace().re.max(0.0)).collect();
    let total: f64 = probs.iter().sum();
    let mut u = rng.random::<f64>() * total;
    let mut outcome = probs.iter().rposition(|&p| p > 0.0).unwrap_or(0);
    for (k, &p) in probs.iter().enumerate() {
        if p > 0.0 && u < p {
            outcome = k;
            break;
        }
        u -= p;
    }
    let stored = if strategy.keeps_quantum() {
        let post = DensityMatrix::normalized(&posts[outcome])?;
        Some(strategy.storage.apply(&post))
    } else {
        None
    };
    Ok(AttackRound { outcome, stored })
}

/// One attacked round together with the values needed to score it.
#[derive(Clone, Debug, PartialEq)]
pub struct ScoredRound {
    pub round: AttackRound,
    pub x: u8,
    pub theta: QubitBasis,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GuessStats {
    pub rounds: usize,
    /// Expectation over outcomes and inputs of the optimal guess.
    pub analytic: f64,
    /// Mean over the observed outcomes of the optimal conditional guess.
    pub conditional_mean: f64,
    /// Fraction of rounds where a sampled Helstrom measurement was right.
    pub empirical: f64,
}

/// Measures each stored register optimally once `θ` is known.
pub fn adversary_finish<R: Rng + ?Sized>(
    strategy: &AttackStrategy,
    rounds: &[ScoredRound],
    reveal: &[QubitBasis],
    rng: &mut R,
) -> Result<GuessStats> {
    if reveal.len() != rounds.len() {
        return Err(param(format!(
            "{} revealed bases for {} rounds",
            reveal.len(),
            rounds.len()
        )));
    }
    let mut conditional = 0.0;
    let mut correct = 0usize;
    for (r, &theta) in rounds.iter().zip(reveal) {
        let [a, b] = strategy.branch_operators(r.round.outcome, theta);
        let weight = a.trace().re + b.trace().re;
        conditional += helstrom_weighted(&a, &b) / weight;
        // Helstrom projector onto the positive part of a − b; guess 0 there
        let pi0 = (&a - &b).map_spectrum(|l| if l > 0.0 { 1.0 } else { 0.0 });
        let p_zero = match &r.round.stored {
            Some(rho) => (&pi0 * rho.matrix()).trace().re,
            // nothing stored: the guess is a function of k alone
            None => (&pi0 * &CMatrix::identity(2).scale(0.5)).trace().re,
        };
        let guess = if rng.random::<f64>() < p_zero.clamp(0.0, 1.0) {
            0
        } else {
            1
        };
        correct += (guess == r.x) as usize;
    }
    let n = rounds.len().max(1) as f64;
    Ok(GuessStats {
        rounds: rounds.len(),
        analytic: strategy.analytic_guess_prob(),
        conditional_mean: conditional / n,
        empirical: correct as f64 / n,
    })
}
