//! Log-barrier interior-point solver for the guessing-probability dual
//! `min { Tr σ : σ ⪰ A_x for all x }` with `A_x = P(x) ρ_E^x`.
//!
//! σ is parametrized by d² real coordinates in a Hermitian basis. On the
//! central path `M_x = S_x⁻¹ / t` (with `S_x = σ − A_x`) is a POVM, which gives
//! a primal value and the duality gap `Σ_x Tr(M_x S_x) = |X|·d / t`.

use super::cq::{CqState, MAX_DUAL_DIM};
use crate::error::{Error, Result};
use crate::qmath::{CMatrix, C64};

#[derive(Clone, Debug)]
pub struct BarrierOptions {
    pub outer_iterations: usize,
    /// Multiplier applied to the barrier weight 1/t per outer iteration.
    pub barrier_factor: f64,
    pub gap_tol: f64,
    pub newton_iterations: usize,
}

impl Default for BarrierOptions {
    fn default() -> Self {
        Self {
            outer_iterations: 30,
            barrier_factor: 0.2,
            gap_tol: 1e-9,
            newton_iterations: 60,
        }
    }
}

#[derive(Clone, Debug)]
pub struct DualSolution {
    /// `Tr σ` at the final iterate; an upper bound on `P_guess`.
    pub dual_value: f64,
    /// `Σ_x Tr(M_x A_x)` for the POVM recovered from the central path.
    pub primal_value: f64,
    pub gap: f64,
    pub sigma: CMatrix,
    pub outer_iterations: usize,
}

fn hermitian_basis(d: usize) -> Vec<CMatrix> {
    let mut basis = Vec::with_capacity(d * d);
    for i in 0..d {
        let mut m = CMatrix::zeros(d);
        m[(i, i)] = C64::new(1.0, 0.0);
        basis.push(m);
    }
    for i in 0..d {
        for j in (i + 1)..d {
            let mut re = CMatrix::zeros(d);
            re[(i, j)] = C64::new(1.0, 0.0);
            re[(j, i)] = C64::new(1.0, 0.0);
            basis.push(re);
            let mut im = CMatrix::zeros(d);
            im[(i, j)] = C64::new(0.0, 1.0);
            im[(j, i)] = C64::new(0.0, -1.0);
            basis.push(im);
        }
    }
    basis
}

fn assemble(basis: &[CMatrix], coords: &[f64]) -> CMatrix {
    let d = basis[0].dim();
    let mut m = CMatrix::zeros(d);
    for (g, &c) in basis.iter().zip(coords) {
        if c != 0.0 {
            m = &m + &g.scale(c);
        }
    }
    m
}

/// Slack inverses and the barrier value; `None` if some slack is not
/// positive definite.
fn slacks(sigma: &CMatrix, targets: &[CMatrix]) -> Option<(Vec<CMatrix>, f64)> {
    let mut inverses = Vec::with_capacity(targets.len());
    let mut logdet = 0.0;
    for a in targets {
        let s = sigma - a;
        let eig = s.eigh();
        if eig.min() <= 0.0 {
            return None;
        }
        logdet += eig.values.iter().map(|l| l.ln()).sum::<f64>();
        inverses.push(s.map_spectrum(|l| 1.0 / l));
    }
    Some((inverses, logdet))
}

fn tr_prod(a: &CMatrix, b: &CMatrix) -> f64 {
    let d = a.dim();
    let mut s = C64::new(0.0, 0.0);
    for i in 0..d {
        for k in 0..d {
            s += a[(i, k)] * b[(k, i)];
        }
    }
    s.re
}

/// Solves the symmetric positive-definite system `H x = b`.
fn solve_spd(h: &[Vec<f64>], b: &[f64]) -> Option<Vec<f64>> {
    let n = b.len();
    let mut l = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..=i {
            let mut s = h[i][j];
            for k in 0..j {
                s -= l[i][k] * l[j][k];
            }
            if i == j {
                if s <= 0.0 {
                    return None;
                }
                l[i][i] = s.sqrt();
            } else {
                l[i][j] = s / l[j][j];
            }
        }
    }
    let mut y = vec![0.0; n];
    for i in 0..n {
        let mut s = b[i];
        for k in 0..i {
            s -= l[i][k] * y[k];
        }
        y[i] = s / l[i][i];
    }
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let mut s = y[i];
        for k in (i + 1)..n {
            s -= l[k][i] * x[k];
        }
        x[i] = s / l[i][i];
    }
    Some(x)
}

pub fn dual_guess_prob(state: &CqState, opts: &BarrierOptions) -> Result<DualSolution> {
    let d = state.e_dim();
    if d > MAX_DUAL_DIM {
        return Err(Error::Unsupported(format!(
            "barrier solver supports E dimension <= {MAX_DUAL_DIM}, got {d}"
        )));
    }
    let targets = state.weighted();
    let basis = hermitian_basis(d);
    let nvar = basis.len();
    let traces: Vec<f64> = basis.iter().map(|g| g.trace().re).collect();

    let start = targets
        .iter()
        .map(|a| a.eigenvalues_hermitian().last().copied().unwrap_or(0.0))
        .fold(0.0, f64::max)
        + 1.0;
    let mut coords = vec![0.0; nvar];
    coords[..d].iter_mut().for_each(|c| *c = start);

    let constraints = (targets.len() * d) as f64;
    let mut t = 1.0;
    let mut outer = 0;

    let objective = |coords: &[f64], t: f64| -> Option<f64> {
        let sigma = assemble(&basis, coords);
        let (_, logdet) = slacks(&sigma, &targets)?;
        Some(t * sigma.trace().re - logdet)
    };

    while outer < opts.outer_iterations {
        outer += 1;
        for _ in 0..opts.newton_iterations {
            let sigma = assemble(&basis, &coords);
            let (inverses, _) = slacks(&sigma, &targets).expect("iterate stays feasible");
            let products: Vec<Vec<CMatrix>> = inverses
                .iter()
                .map(|inv| basis.iter().map(|g| inv * g).collect())
                .collect();
            let mut grad = traces.iter().map(|&tr| t * tr).collect::<Vec<_>>();
            let mut hess = vec![vec![0.0; nvar]; nvar];
            for prods in &products {
                for j in 0..nvar {
                    grad[j] -= prods[j].trace().re;
                    for k in 0..=j {
                        let v = tr_prod(&prods[j], &prods[k]);
                        hess[j][k] += v;
                        if k != j {
                            hess[k][j] += v;
                        }
                    }
                }
            }
            let rhs: Vec<f64> = grad.iter().map(|g| -g).collect();
            let Some(step) = solve_spd(&hess, &rhs) else {
                break;
            };
            let decrement: f64 = -grad.iter().zip(&step).map(|(g, s)| g * s).sum::<f64>();
            if decrement / 2.0 <= 1e-14 {
                break;
            }
            let f0 = objective(&coords, t).expect("feasible");
            let mut alpha = 1.0;
            let mut moved = false;
            while alpha > 1e-12 {
                let trial: Vec<f64> = coords
                    .iter()
                    .zip(&step)
                    .map(|(c, s)| c + alpha * s)
                    .collect();
                if let Some(f) = objective(&trial, t) {
                    if f <= f0 - 0.25 * alpha * decrement {
                        coords = trial;
                        moved = true;
                        break;
                    }
                }
                alpha *= 0.5;
            }
            if !moved {
                break;
            }
        }
        if constraints / t <= opts.gap_tol {
            break;
        }
        t /= opts.barrier_factor;
    }

    let sigma = assemble(&basis, &coords);
    let (inverses, _) = slacks(&sigma, &targets).expect("final iterate feasible");
    let primal_value = inverses
        .iter()
        .zip(&targets)
        .map(|(inv, a)| tr_prod(&inv.scale(1.0 / t), a))
        .sum();
    Ok(DualSolution {
        dual_value: sigma.trace().re,
        primal_value,
        gap: constraints / t,
        sigma,
        outer_iterations: outer,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::entstat::cq::helstrom_weighted;
    use crate::qmath::{bb84_state, random, DensityMatrix, QubitBasis};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn bb84_pair_matches_helstrom() {
        let st = CqState::new(
            vec![0.5, 0.5],
            vec![
                bb84_state(0, QubitBasis::Computational),
                bb84_state(0, QubitBasis::Hadamard),
            ],
        )
        .unwrap();
        let sol = dual_guess_prob(&st, &BarrierOptions::default()).unwrap();
        let expected = 0.5 + 0.25 * 2f64.sqrt();
        assert!(
            (sol.dual_value - expected).abs() < 1e-8,
            "{}",
            sol.dual_value
        );
        assert!(sol.gap <= 1e-9);
        assert!(sol.primal_value <= sol.dual_value + 1e-12);
    }

    #[test]
    fn four_states_in_dimension_four() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a = CqState::new(
            vec![0.4, 0.6],
            vec![
                random::random_mixed(2, 2, &mut rng),
                random::random_pure(2, &mut rng),
            ],
        )
        .unwrap();
        let b = CqState::new(
            vec![0.5, 0.5],
            vec![
                random::random_pure(2, &mut rng),
                random::random_mixed(2, 3, &mut rng),
            ],
        )
        .unwrap();
        let prod = a.tensor(&b).unwrap();
        let pa = {
            let w = a.weighted();
            helstrom_weighted(&w[0], &w[1])
        };
        let pb = {
            let w = b.weighted();
            helstrom_weighted(&w[0], &w[1])
        };
        let sol = dual_guess_prob(&prod, &BarrierOptions::default()).unwrap();
        assert!(
            (sol.dual_value - pa * pb).abs() < 1e-9,
            "{} vs {}",
            sol.dual_value,
            pa * pb
        );
    }

    #[test]
    fn rejects_large_dimension() {
        let m = DensityMatrix::maximally_mixed(5).unwrap();
        let st = CqState::new(vec![0.5, 0.5], vec![m.clone(), m]).unwrap();
        assert!(dual_guess_prob(&st, &BarrierOptions::default()).is_err());
    }
}
