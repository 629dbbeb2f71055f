//! Honest parties as state machines. Each step consumes the previous state,
//! so messages can only be produced in protocol order.

use rand::Rng;

use super::bits::BitString;
use super::channel::Pulse;
use super::code::{syndrome_length, LinearCode};
use super::hash::ToeplitzHash;
use super::params::ProtocolParams;
use super::transcript::{AbortMsg, RevealMsg, SyndromeMsg};
use crate::bounds::abort_interval;
use crate::error::{Error, Result};
use crate::qmath::QubitBasis;

/// Alice before sending.
pub struct Alice {
    params: ProtocolParams,
}

/// Alice after the qubits left, waiting for the detection report.
pub struct AliceSent {
    params: ProtocolParams,
    x: BitString,
    theta: Vec<QubitBasis>,
}

/// Alice's outputs `S₊`, `S×`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AliceOutput {
    pub s_plus: BitString,
    pub s_times: BitString,
}

impl AliceOutput {
    pub fn get(&self, basis: QubitBasis) -> &BitString {
        match basis {
            QubitBasis::Computational => &self.s_plus,
            QubitBasis::Hadamard => &self.s_times,
        }
    }
}

pub enum AliceDecision {
    Reveal(RevealMsg, AliceOutput),
    Abort(AbortMsg),
}

impl Alice {
    pub fn new(params: ProtocolParams) -> Self {
        Self { params }
    }

    /// Picks `X` and `Θ` and emits the pulses.
    pub fn send<R: Rng + ?Sized>(self, rng: &mut R) -> (AliceSent, Vec<Pulse>) {
        let n = self.params.n;
        let x = BitString::random(n, rng);
        let theta: Vec<QubitBasis> = (0..n)
            .map(|_| QubitBasis::from_index(rng.random::<bool>() as usize))
            .collect();
        let pulses = x
            .bits()
            .iter()
            .zip(&theta)
            .map(|(&bit, &basis)| Pulse { bit, basis })
            .collect();
        (
            AliceSent {
                params: self.params,
                x,
                theta,
            },
            pulses,
        )
    }
}

impl AliceSent {
    pub fn x(&self) -> &BitString {
        &self.x
    }

    pub fn theta(&self) -> &[QubitBasis] {
        &self.theta
    }

    /// Restricts to the reported positions, runs the abort test and, if it
    /// passes, picks hashes and computes syndromes.
    pub fn on_report<R: Rng + ?Sized>(
        self,
        received: &BitString,
        rng: &mut R,
    ) -> Result<AliceDecision> {
        let p = &self.params;
        if received.len() != p.n {
            return Err(Error::LengthMismatch {
                expected: p.n,
                got: received.len(),
            });
        }
        let in_basis = |b: QubitBasis| -> Vec<usize> {
            (0..p.n)
                .filter(|&i| received.get(i) == 1 && self.theta[i] == b)
                .collect()
        };
        let i_plus = in_basis(QubitBasis::Computational);
        let i_times = in_basis(QubitBasis::Hadamard);
        if !p.is_ideal() {
            let (lo, hi) = abort_interval(p.n as u64, p.channel.p_erase, p.eps)?;
            let inside = |m: usize| (lo..=hi).contains(&(m as u64));
            if !inside(i_plus.len()) || !inside(i_times.len()) {
                return Ok(AliceDecision::Abort(AbortMsg {
                    m_plus: i_plus.len(),
                    m_times: i_times.len(),
                    lo,
                    hi,
                }));
            }
        }
        let hash_plus = ToeplitzHash::random(p.n, p.ell, rng)?;
        let hash_times = ToeplitzHash::random(p.n, p.ell, rng)?;
        let mut syndromes = [None, None];
        if !p.is_ideal() {
            for (slot, idx) in syndromes.iter_mut().zip([&i_plus, &i_times]) {
                let m = idx.len();
                let s = syndrome_length(m, p.channel.p_error, p.code_failure);
                let code = LinearCode::random(m, s, rng.random())?;
                let syndrome = code.syndrome(&self.x.select(idx))?;
                *slot = Some(SyndromeMsg {
                    code: code.spec(),
                    syndrome,
                });
            }
        }
        let out = AliceOutput {
            s_plus: hash_plus.apply(&self.x.select(&i_plus).padded(p.n))?,
            s_times: hash_times.apply(&self.x.select(&i_times).padded(p.n))?,
        };
        let [syndrome_plus, syndrome_times] = syndromes;
        Ok(AliceDecision::Reveal(
            RevealMsg {
                i_plus,
                i_times,
                hash_plus,
                hash_times,
                syndrome_plus,
                syndrome_times,
            },
            out,
        ))
    }
}

/// Honest Bob before any qubit arrives.
pub struct HonestBob {
    choice: QubitBasis,
}

/// Bob holding measurement outcomes, waiting for the reveal.
pub struct BobWaiting {
    choice: QubitBasis,
    outcomes: Vec<Option<u8>>,
}

impl HonestBob {
    pub fn new(choice: QubitBasis) -> Self {
        Self { choice }
    }

    /// Measures every detected pulse in the basis of his choice bit and
    /// reports which pulses arrived.
    pub fn receive<R: Rng + ?Sized>(
        self,
        arrived: &[Option<Pulse>],
        rng: &mut R,
    ) -> (BobWaiting, BitString) {
        let outcomes: Vec<Option<u8>> = arrived
            .iter()
            .map(|p| p.map(|p| p.measure(self.choice, rng)))
            .collect();
        let report = BitString::from_bits(outcomes.iter().map(|o| o.is_some() as u8));
        (
            BobWaiting {
                choice: self.choice,
                outcomes,
            },
            report,
        )
    }
}

impl BobWaiting {
    pub fn choice(&self) -> QubitBasis {
        self.choice
    }

    /// Corrects his string with the syndrome and hashes it. `truth` is
    /// consulted only by the stand-in decoder used for long blocks.
    pub fn on_reveal(self, reveal: &RevealMsg, truth: &BitString) -> Result<BitString> {
        let idx = reveal.indices(self.choice);
        let hash = reveal.hash(self.choice);
        let mut bits = Vec::with_capacity(idx.len());
        for &i in idx {
            let b = self.outcomes.get(i).copied().flatten().ok_or_else(|| {
                Error::Protocol(format!("reveal lists position {i} that Bob did not detect"))
            })?;
            bits.push(b);
        }
        let mut x_c = BitString::from_bits(bits);
        if let Some(syn) = reveal.syndrome(self.choice) {
            let code = LinearCode::from_spec(syn.code)?;
            x_c = code.decode(&x_c, &syn.syndrome, &truth.select(idx))?;
        }
        hash.apply(&x_c.padded(hash.n_in()))
    }
}
