//! Random states for property checks.

use rand::Rng;
use rand_distr::StandardNormal;

use super::matrix::{CMatrix, C64};
use super::state::DensityMatrix;

pub fn random_unit_vector<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Vec<C64> {
    loop {
        let v: Vec<C64> = (0..dim)
            .map(|_| C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
            .collect();
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-6 {
            return v.into_iter().map(|z| z / norm).collect();
        }
    }
}

pub fn random_pure<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> DensityMatrix {
    DensityMatrix::pure(&random_unit_vector(dim, rng)).expect("normalized vector")
}

/// Random mixture of `terms` random pure states with Dirichlet-like weights.
pub fn random_mixed<R: Rng + ?Sized>(dim: usize, terms: usize, rng: &mut R) -> DensityMatrix {
    let weights: Vec<f64> = (0..terms)
        .map(|_| -rng.random::<f64>().max(1e-12).ln())
        .collect();
    let total: f64 = weights.iter().sum();
    let mut acc = CMatrix::zeros(dim);
    for w in weights {
        let v = random_unit_vector(dim, rng);
        acc = &acc + &CMatrix::outer(&v).scale(w / total);
    }
    DensityMatrix::new(acc).expect("convex combination of states")
}

/// Random probability vector of the given length.
pub fn random_distribution<R: Rng + ?Sized>(len: usize, rng: &mut R) -> Vec<f64> {
    let w: Vec<f64> = (0..len)
        .map(|_| -rng.random::<f64>().max(1e-12).ln())
        .collect();
    let total: f64 = w.iter().sum();
    w.into_iter().map(|x| x / total).collect()
}
