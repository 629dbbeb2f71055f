use rand::Rng;
use serde::{Deserialize, Serialize};

use super::bits::BitString;
use crate::error::{param, Error, Result};

/// Toeplitz matrix over GF(2) with `T[i][j] = seed[i − j + n_in − 1]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ToeplitzHash {
    n_in: usize,
    n_out: usize,
    seed: BitString,
}

impl ToeplitzHash {
    pub fn new(n_in: usize, n_out: usize, seed: BitString) -> Result<Self> {
        if n_in == 0 {
            return Err(param("hash input length must be positive"));
        }
        let expected = n_in + n_out.max(1) - 1;
        if n_out > 0 && seed.len() != expected {
            return Err(Error::LengthMismatch {
                expected,
                got: seed.len(),
            });
        }
        Ok(Self { n_in, n_out, seed })
    }

    pub fn random<R: Rng + ?Sized>(n_in: usize, n_out: usize, rng: &mut R) -> Result<Self> {
        let len = if n_out == 0 { 0 } else { n_in + n_out - 1 };
        Self::new(n_in, n_out, BitString::random(len, rng))
    }

    pub fn n_in(&self) -> usize {
        self.n_in
    }

    pub fn n_out(&self) -> usize {
        self.n_out
    }

    pub fn seed(&self) -> &BitString {
        &self.seed
    }

    /// `T[i][j]`
    pub fn entry(&self, i: usize, j: usize) -> u8 {
        self.seed.get(i + self.n_in - 1 - j)
    }

    pub fn apply(&self, x: &BitString) -> Result<BitString> {
        if x.len() != self.n_in {
            return Err(Error::LengthMismatch {
                expected: self.n_in,
                got: x.len(),
            });
        }
        let xs = x.bits();
        Ok(BitString::from_bits((0..self.n_out).map(|i| {
            xs.iter()
                .enumerate()
                .fold(0u8, |acc, (j, &b)| acc ^ (b & self.entry(i, j)))
        })))
    }
}

/// `toeplitz_hash(h, x)`
pub fn toeplitz_hash(h: &ToeplitzHash, x: &BitString) -> Result<BitString> {
    h.apply(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_strings(n: usize) -> Vec<BitString> {
        (0..1u32 << n)
            .map(|v| BitString::from_bits((0..n).map(|i| (v >> i) as u8)))
            .collect()
    }

    #[test]
    fn zero_maps_to_zero_and_is_linear() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        let h = ToeplitzHash::random(9, 3, &mut rng).unwrap();
        assert_eq!(h.apply(&BitString::zeros(9)).unwrap(), BitString::zeros(3));
        let x = BitString::random(9, &mut rng);
        let y = BitString::random(9, &mut rng);
        let lhs = h.apply(&x.xor(&y).unwrap()).unwrap();
        let rhs = h.apply(&x).unwrap().xor(&h.apply(&y).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn exhaustive_two_universality() {
        let (n, l) = (6, 2);
        let seeds = all_strings(n + l - 1);
        let inputs = all_strings(n);
        let hashes: Vec<ToeplitzHash> = seeds
            .into_iter()
            .map(|s| ToeplitzHash::new(n, l, s).unwrap())
            .collect();
        let images: Vec<Vec<BitString>> = hashes
            .iter()
            .map(|h| inputs.iter().map(|x| h.apply(x).unwrap()).collect())
            .collect();
        for a in 0..inputs.len() {
            for b in (a + 1)..inputs.len() {
                let collisions = images.iter().filter(|img| img[a] == img[b]).count();
                assert!(collisions * 4 <= hashes.len());
            }
        }
    }

    use rand::SeedableRng;
}
