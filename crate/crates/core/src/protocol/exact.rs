//! Exact distance from uniform of the string the adversary should not know,
//! for a handful of qubits. Classical randomness (Θ, hash seeds, X and the
//! adversary's outcomes K) is sampled; for each sample the cq-state of
//! `S_D̄` and the stored registers is handled exactly.
//!
//! With per-round operators `A_i = P(X_i=0, E_i | k_i)` and
//! `B_i = P(X_i=1, E_i | k_i)`, and `w(u) = Tᵀu` restricted to the unpadded
//! positions,
//! `ω_s − ρ_E/2^ℓ = 2^{−ℓ} Σ_{u≠0} (−1)^{u·s} ⊗_i (A_i + (−1)^{w_i(u)} B_i)`.
//! Rounds whose `A_i`, `B_i` commute are diagonalized jointly; the rest are
//! multiplied out densely.

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::attack::{apply_attack, AttackStrategy};
use super::hash::ToeplitzHash;
use super::params::ProtocolParams;
use super::rng::{stream, Role};
use crate::entstat::{helstrom_weighted, split_index};
use crate::error::{param, Error, Result};
use crate::qmath::{CMatrix, QubitBasis};

pub const EXACT_MAX_N: usize = 8;
pub const EXACT_MAX_ELL: usize = 2;
/// Exact-mode samples use trial numbers from here on, away from [`super::simulate`].
pub const EXACT_TRIAL_OFFSET: u64 = 1 << 32;
const COMMUTE_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AdvantageEstimate {
    pub mean: f64,
    /// Half-width of the normal-approximation 95% interval.
    pub ci95: f64,
    pub samples: usize,
}

/// Per-round conditional operators, normalized so that `Tr(A + B) = 1`.
struct Round {
    a: CMatrix,
    b: CMatrix,
}

impl Round {
    fn commutes(&self) -> bool {
        let ab = &self.a * &self.b;
        let ba = &self.b * &self.a;
        ab.max_abs_diff(&ba) <= COMMUTE_TOL
    }

    fn min_entropy(&self) -> f64 {
        -helstrom_weighted(&self.a, &self.b).log2()
    }

    /// `A + (−1)^w B`
    fn term(&self, w: u8) -> CMatrix {
        if w == 0 {
            &self.a + &self.b
        } else {
            &self.a - &self.b
        }
    }

    /// Eigenvalues of `A` and `B` in a common eigenbasis.
    fn joint_spectrum(&self) -> ([f64; 2], [f64; 2]) {
        let generic = &self.a + &self.b.scale(std::f64::consts::SQRT_2);
        let v = generic.eigh().vectors;
        let rot = |m: &CMatrix| {
            let d = &(&v.adjoint() * m) * &v;
            [d[(0, 0)].re, d[(1, 1)].re]
        };
        (rot(&self.a), rot(&self.b))
    }
}

/// `d(S_D̄ | S_D, D, Θ, F, K, E)` for one fixed classical sample.
fn advantage_given(rounds: &[Round], hash: &ToeplitzHash) -> f64 {
    let ell = hash.n_out();
    if ell == 0 {
        return 0.0;
    }
    let m = rounds.len();
    let ws: Vec<Vec<u8>> = (1..1usize << ell)
        .map(|u| {
            (0..m)
                .map(|j| (0..ell).fold(0u8, |acc, i| acc ^ ((u >> i) as u8 & 1 & hash.entry(i, j))))
                .collect()
        })
        .collect();
    if ell == 1 {
        let prod: f64 = rounds
            .iter()
            .zip(&ws[0])
            .filter(|(_, &w)| w == 1)
            .map(|(r, _)| (&r.a - &r.b).trace_norm())
            .product();
        return 0.5 * prod;
    }

    let (comm, dense): (Vec<usize>, Vec<usize>) = (0..m).partition(|&j| rounds[j].commutes());
    let spectra: Vec<([f64; 2], [f64; 2])> =
        comm.iter().map(|&j| rounds[j].joint_spectrum()).collect();
    let dense_terms: Vec<CMatrix> = ws
        .iter()
        .map(|w| {
            dense.iter().fold(CMatrix::identity(1), |acc, &j| {
                acc.kron(&rounds[j].term(w[j]))
            })
        })
        .collect();
    let dim = 1usize << dense.len();
    let mut total = 0.0;
    for c in 0..1usize << comm.len() {
        let coefs: Vec<f64> = ws
            .iter()
            .map(|w| {
                comm.iter().enumerate().fold(1.0, |acc, (t, &j)| {
                    let (a, b) = spectra[t];
                    let idx = c >> t & 1;
                    acc * if w[j] == 0 {
                        a[idx] + b[idx]
                    } else {
                        a[idx] - b[idx]
                    }
                })
            })
            .collect();
        for s in 0..1usize << ell {
            let mut acc = CMatrix::zeros(dim);
            for (ui, term) in dense_terms.iter().enumerate() {
                let u = ui + 1;
                let sign = if (u & s).count_ones() % 2 == 0 {
                    1.0
                } else {
                    -1.0
                };
                if coefs[ui] != 0.0 {
                    acc = &acc + &term.scale(sign * coefs[ui]);
                }
            }
            total += if dim == 1 {
                acc[(0, 0)].re.abs()
            } else {
                acc.trace_norm()
            };
        }
    }
    0.5 * total / (1usize << ell) as f64
}

/// Monte Carlo over classical randomness of the exact per-sample advantage.
/// Models the basic protocol: no erasures and no syndromes.
pub fn exact_advantage_small_n(
    params: &ProtocolParams,
    strategy: &AttackStrategy,
    classical_samples: usize,
) -> Result<AdvantageEstimate> {
    if params.n > EXACT_MAX_N || params.ell > EXACT_MAX_ELL {
        return Err(Error::Unsupported(format!(
            "exact mode needs n <= {EXACT_MAX_N} and ell <= {EXACT_MAX_ELL}, got n={} ell={}",
            params.n, params.ell
        )));
    }
    if classical_samples < 1 {
        return Err(param("need at least one classical sample"));
    }
    let mut values = Vec::with_capacity(classical_samples);
    for sample in 0..classical_samples as u64 {
        let mut rng = stream(
            params.rng_seed,
            EXACT_TRIAL_OFFSET + sample,
            Role::Adversary,
        );
        values.push(sample_advantage(params, strategy, &mut rng)?);
    }
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = if values.len() > 1 {
        values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0)
    } else {
        0.0
    };
    Ok(AdvantageEstimate {
        mean,
        ci95: 1.96 * (var / n).sqrt(),
        samples: values.len(),
    })
}

fn sample_advantage<R: Rng + ?Sized>(
    params: &ProtocolParams,
    strategy: &AttackStrategy,
    rng: &mut R,
) -> Result<f64> {
    let n = params.n;
    let theta: Vec<QubitBasis> = (0..n)
        .map(|_| QubitBasis::from_index(rng.random::<bool>() as usize))
        .collect();
    let x: Vec<u8> = (0..n).map(|_| rng.random::<bool>() as u8).collect();
    let hashes = [
        ToeplitzHash::random(n, params.ell, rng)?,
        ToeplitzHash::random(n, params.ell, rng)?,
    ];
    let mut rounds: [Vec<Round>; 2] = [Vec::new(), Vec::new()];
    let mut entropy = [0.0; 2];
    for i in 0..n {
        let k = apply_attack(strategy, x[i], theta[i], rng)?.outcome;
        let [a, b] = strategy.branch_operators(k, theta[i]);
        let weight = a.trace().re + b.trace().re;
        let round = Round {
            a: a.scale(1.0 / weight),
            b: b.scale(1.0 / weight),
        };
        let basis = theta[i].index();
        entropy[basis] += round.min_entropy();
        rounds[basis].push(round);
    }
    let d = split_index(&entropy)?.index;
    let ignorant = 1 - d;
    Ok(advantage_given(&rounds[ignorant], &hashes[ignorant]))
}
