//! Syndrome-based information reconciliation with random parity-check codes.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use statrs::distribution::{Binomial, DiscreteCDF};

use super::bits::BitString;
use crate::error::{param, Error, Result};
use crate::qmath::h;

/// Largest block decoded by exhaustive coset search.
pub const EXHAUSTIVE_LIMIT: usize = 24;

/// Shortest syndrome, at least `⌈h(p)·m⌉` bits, whose [`counting_radius`]
/// `w` satisfies `Pr[Bin(m, p) > w] ≤ target`; capped at `m`.
pub fn syndrome_length(m: usize, p_error: f64, target: f64) -> usize {
    let shannon = (h(p_error) * m as f64).ceil() as usize;
    if m == 0 || p_error == 0.0 {
        return shannon.min(m);
    }
    let errors = Binomial::new(p_error, m as u64).expect("p_error in [0, 1]");
    let w = (0..=m)
        .find(|&w| errors.sf(w as u64) <= target)
        .unwrap_or(m);
    (log2_ball(m, w).ceil() as usize).max(shannon).min(m)
}

/// `log₂ Σ_{j≤w} C(m, j)`
pub fn log2_ball(m: usize, w: usize) -> f64 {
    let mut log_terms = Vec::with_capacity(w + 1);
    let mut log_c = 0.0f64;
    for j in 0..=w.min(m) {
        if j > 0 {
            log_c += ((m - j + 1) as f64).log2() - (j as f64).log2();
        }
        log_terms.push(log_c);
    }
    let top = log_terms.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    top + log_terms
        .iter()
        .map(|l| (l - top).exp2())
        .sum::<f64>()
        .log2()
}

/// Largest `w` with `log₂ Σ_{j≤w} C(m, j) ≤ s`: the number of errors a
/// syndrome of `s` bits can single out by counting.
pub fn counting_radius(m: usize, s: usize) -> usize {
    let mut w = 0;
    while w < m && log2_ball(m, w + 1) <= s as f64 {
        w += 1;
    }
    w
}

/// Random full-rank `s × m` parity-check matrix, rows packed into `u64` words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearCode {
    m: usize,
    s: usize,
    seed: u64,
    rows: Vec<Vec<u64>>,
}

fn words(m: usize) -> usize {
    m.div_ceil(64).max(1)
}

fn rank(rows: &[Vec<u64>], m: usize) -> usize {
    let mut rows = rows.to_vec();
    let mut r = 0;
    for col in 0..m {
        let (w, b) = (col / 64, col % 64);
        let Some(p) = (r..rows.len()).find(|&i| rows[i][w] >> b & 1 == 1) else {
            continue;
        };
        rows.swap(r, p);
        let pivot = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row[w] >> b & 1 == 1 {
                row.iter_mut().zip(&pivot).for_each(|(a, p)| *a ^= p);
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    r
}

/// Serializable description from which both parties rebuild the code.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeSpec {
    pub m: usize,
    pub s: usize,
    pub seed: u64,
}

impl LinearCode {
    /// Draws rows from a generator seeded with `seed` until they have full rank.
    pub fn random(m: usize, s: usize, seed: u64) -> Result<Self> {
        if s > m {
            return Err(param(format!(
                "syndrome length {s} exceeds block length {m}"
            )));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let nw = words(m);
        loop {
            let rows: Vec<Vec<u64>> = (0..s)
                .map(|_| {
                    let mut row: Vec<u64> = (0..nw).map(|_| rng.random()).collect();
                    if m % 64 != 0 {
                        row[nw - 1] &= (1u64 << (m % 64)) - 1;
                    }
                    if m == 0 {
                        row[0] = 0;
                    }
                    row
                })
                .collect();
            if rank(&rows, m) == s {
                return Ok(Self { m, s, seed, rows });
            }
        }
    }

    pub fn from_spec(spec: CodeSpec) -> Result<Self> {
        Self::random(spec.m, spec.s, spec.seed)
    }

    pub fn spec(&self) -> CodeSpec {
        CodeSpec {
            m: self.m,
            s: self.s,
            seed: self.seed,
        }
    }

    pub fn length(&self) -> usize {
        self.m
    }

    pub fn syndrome_bits(&self) -> usize {
        self.s
    }

    /// Entry `(i, j)` of the parity-check matrix.
    pub fn parity_bit(&self, i: usize, j: usize) -> u8 {
        (self.rows[i][j / 64] >> (j % 64) & 1) as u8
    }

    fn pack(&self, x: &BitString) -> Vec<u64> {
        let mut out = vec![0u64; words(self.m)];
        for (j, &b) in x.bits().iter().enumerate() {
            out[j / 64] |= (b as u64) << (j % 64);
        }
        out
    }

    fn check_len(&self, x: &BitString) -> Result<()> {
        if x.len() != self.m {
            return Err(Error::LengthMismatch {
                expected: self.m,
                got: x.len(),
            });
        }
        Ok(())
    }

    pub fn syndrome(&self, x: &BitString) -> Result<BitString> {
        self.check_len(x)?;
        let packed = self.pack(x);
        Ok(BitString::from_bits(self.rows.iter().map(|row| {
            (row.iter()
                .zip(&packed)
                .map(|(a, b)| (a & b).count_ones())
                .sum::<u32>()
                & 1) as u8
        })))
    }

    /// Syndrome of each unit vector, packed into `u32` (requires `s ≤ 32`).
    fn column_syndromes(&self) -> Vec<u32> {
        (0..self.m)
            .map(|j| (0..self.s).fold(0u32, |acc, i| acc | (self.parity_bit(i, j) as u32) << i))
            .collect()
    }

    /// Minimum-distance decoding by exhaustive coset search (`m ≤ 24`). Ties
    /// go to the lexicographically smallest flip pattern.
    pub fn ml_decode(&self, received: &BitString, syndrome: &BitString) -> Result<BitString> {
        self.check_len(received)?;
        if syndrome.len() != self.s {
            return Err(Error::LengthMismatch {
                expected: self.s,
                got: syndrome.len(),
            });
        }
        if self.m > EXHAUSTIVE_LIMIT {
            return Err(Error::Unsupported(format!(
                "exhaustive decoding limited to m <= {EXHAUSTIVE_LIMIT}, got {}",
                self.m
            )));
        }
        let diff = self.syndrome(received)?.xor(syndrome)?;
        let target = diff
            .bits()
            .iter()
            .enumerate()
            .fold(0u32, |a, (i, &b)| a | (b as u32) << i);
        let cols = self.column_syndromes();
        let m = self.m;
        // pattern bit (m-1-i) flips string position i, so numeric order is lexicographic order
        let syn_of = |pattern: u32| {
            (0..m)
                .filter(|&i| pattern >> (m - 1 - i) & 1 == 1)
                .fold(0u32, |a, i| a ^ cols[i])
        };
        for w in 0..=m {
            let mut pattern: u32 = if w == 0 { 0 } else { (1u32 << w) - 1 };
            let limit = 1u64 << m;
            while (pattern as u64) < limit {
                if syn_of(pattern) == target {
                    let flips =
                        BitString::from_bits((0..m).map(|i| (pattern >> (m - 1 - i)) as u8));
                    return received.xor(&flips);
                }
                if w == 0 {
                    break;
                }
                // Gosper's hack: next larger integer with the same popcount
                let c = pattern & pattern.wrapping_neg();
                let r = pattern.wrapping_add(c);
                if r == 0 {
                    break;
                }
                pattern = (((r ^ pattern) >> 2) / c) | r;
            }
        }
        Err(Error::Protocol(
            "no coset leader found for a full-rank code".into(),
        ))
    }

    /// Stand-in for an efficient near-capacity decoder on blocks too long
    /// for exhaustive search: it recovers `truth` exactly when the error
    /// weight is within [`counting_radius`], and otherwise leaves the
    /// received word uncorrected.
    pub fn genie_decode(
        &self,
        received: &BitString,
        syndrome: &BitString,
        truth: &BitString,
    ) -> Result<BitString> {
        self.check_len(received)?;
        if self.syndrome(truth)? != *syndrome {
            return Err(Error::Protocol(
                "genie truth does not match the syndrome".into(),
            ));
        }
        let errors = received.xor(truth)?.weight();
        if errors <= counting_radius(self.m, self.s) {
            Ok(truth.clone())
        } else {
            Ok(received.clone())
        }
    }

    /// Exhaustive decoding when the block is short enough, the genie otherwise.
    pub fn decode(
        &self,
        received: &BitString,
        syndrome: &BitString,
        truth: &BitString,
    ) -> Result<BitString> {
        if self.m <= EXHAUSTIVE_LIMIT {
            self.ml_decode(received, syndrome)
        } else {
            self.genie_decode(received, syndrome, truth)
        }
    }
}

/// `syndrome(c, x)`
pub fn syndrome(code: &LinearCode, x: &BitString) -> Result<BitString> {
    code.syndrome(x)
}

/// `ml_decode(c, x′, syn)`
pub fn ml_decode(code: &LinearCode, received: &BitString, syn: &BitString) -> Result<BitString> {
    code.ml_decode(received, syn)
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
    fn codewords_have_zero_syndrome() {
        let code = LinearCode::random(10, 4, 5).unwrap();
        let zero = BitString::zeros(4);
        let codewords: Vec<_> = all_strings(10)
            .into_iter()
            .filter(|x| code.syndrome(x).unwrap() == zero)
            .collect();
        assert_eq!(codewords.len(), 1 << 6);
        let a = &codewords[3];
        let b = &codewords[17];
        assert_eq!(code.syndrome(&a.xor(b).unwrap()).unwrap(), zero);
    }

    #[test]
    fn full_rank_and_seeded() {
        assert_eq!(
            LinearCode::random(70, 30, 9).unwrap(),
            LinearCode::random(70, 30, 9).unwrap()
        );
        let c = LinearCode::random(70, 30, 9).unwrap();
        assert_eq!(rank(&c.rows, 70), 30);
        assert!(LinearCode::random(5, 6, 0).is_err());
    }

    #[test]
    fn decodes_within_radius_exhaustively() {
        // a [12, 4] code: syndrome 8 bits; every error of weight <= radius must be corrected
        for seed in 0..5 {
            let code = LinearCode::random(12, 8, seed).unwrap();
            let x = BitString::from_bits([1, 0, 1, 1, 0, 0, 1, 0, 1, 1, 1, 0]);
            let syn = code.syndrome(&x).unwrap();
            let zero_err = code.ml_decode(&x, &syn).unwrap();
            assert_eq!(zero_err, x);
            // radius: largest t with all patterns of weight <= t having distinct syndromes
            let patterns = all_strings(12);
            let mut radius = 0;
            'grow: for t in 1..=12 {
                let mut seen = std::collections::HashSet::new();
                for e in patterns.iter().filter(|e| e.weight() <= t) {
                    if !seen.insert(code.syndrome(e).unwrap()) {
                        break 'grow;
                    }
                }
                radius = t;
            }
            for e in patterns.iter().filter(|e| e.weight() <= radius) {
                let received = x.xor(e).unwrap();
                assert_eq!(code.ml_decode(&received, &syn).unwrap(), x);
            }
        }
    }

    #[test]
    fn ties_prefer_lexicographically_smallest_flip() {
        // with no syndrome bits every pattern is a coset member; the empty flip wins
        let code = LinearCode::random(6, 0, 1).unwrap();
        let r = BitString::from_bits([1, 0, 1, 0, 1, 1]);
        assert_eq!(code.ml_decode(&r, &BitString::zeros(0)).unwrap(), r);
        // one syndrome bit equal to the parity of all bits: weight-one flips tie, the
        // lexicographically smallest pattern flips the last position
        let full = LinearCode {
            m: 4,
            s: 1,
            seed: 0,
            rows: vec![vec![0b1111]],
        };
        let r = BitString::from_bits([0, 0, 0, 0]);
        let decoded = full.ml_decode(&r, &BitString::from_bits([1])).unwrap();
        assert_eq!(decoded, BitString::from_bits([0, 0, 0, 1]));
    }

    #[test]
    fn counting_radius_examples() {
        assert_eq!(counting_radius(358, 139), 28);
        let s = syndrome_length(358, 0.05, 1e-3);
        let tail = Binomial::new(0.05, 358)
            .unwrap()
            .sf(counting_radius(358, s) as u64);
        assert!(tail <= 1e-3 && s >= 103, "s={s} tail={tail}");
        assert_eq!(syndrome_length(10, 0.4, 1e-3), 10);
        assert_eq!(syndrome_length(50, 0.0, 1e-3), 0);
    }

    #[test]
    fn genie_follows_radius() {
        let code = LinearCode::random(100, 40, 2).unwrap();
        let x = BitString::zeros(100);
        let syn = code.syndrome(&x).unwrap();
        let radius = counting_radius(100, 40);
        let near = BitString::from_bits((0..100).map(|i| (i < radius) as u8));
        let far = BitString::from_bits((0..100).map(|i| (i <= radius) as u8));
        assert_eq!(code.decode(&near, &syn, &x).unwrap(), x);
        assert_eq!(code.decode(&far, &syn, &x).unwrap(), far);
    }
}
