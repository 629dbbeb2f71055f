use rand::Rng;
use serde::{Deserialize, Serialize};

use super::attack::{adversary_finish, apply_attack, AttackStrategy, ScoredRound};
use super::channel::transmit;
use super::exact::{exact_advantage_small_n, AdvantageEstimate};
use super::params::ProtocolParams;
use super::party::{Alice, AliceDecision, HonestBob};
use super::rng::{stream, Role};
use super::transcript::{Body, Transcript};
use crate::bounds::{secure_predicate, Regime};
use crate::error::{param, Result};
use crate::qmath::QubitBasis;

/// Result of one honest execution.
#[derive(Clone, Debug, PartialEq)]
pub struct HonestRun {
    pub transcript: Transcript,
    /// `None` when Alice aborted.
    pub agree: Option<bool>,
}

/// Honest Alice and honest Bob with choice bit `choice`, trial 0.
pub fn run_honest(params: &ProtocolParams, choice: QubitBasis) -> Result<HonestRun> {
    run_honest_trial(params, choice, 0)
}

pub fn run_honest_trial(
    params: &ProtocolParams,
    choice: QubitBasis,
    trial: u64,
) -> Result<HonestRun> {
    params.validate()?;
    let mut alice_rng = stream(params.rng_seed, trial, Role::Alice);
    let mut bob_rng = stream(params.rng_seed, trial, Role::Bob);
    let mut channel_rng = stream(params.rng_seed, trial, Role::Channel);
    let mut transcript = Transcript::new();

    let (alice, pulses) = Alice::new(*params).send(&mut alice_rng);
    transcript.push(Body::Qubits { n: params.n })?;
    let arrived = transmit(&params.channel, &pulses, &mut channel_rng);
    let (bob, received) = HonestBob::new(choice).receive(&arrived, &mut bob_rng);
    transcript.push(Body::Report {
        received: received.clone(),
    })?;
    let x = alice.x().clone();
    match alice.on_report(&received, &mut alice_rng)? {
        AliceDecision::Abort(msg) => {
            transcript.push(Body::Abort(msg))?;
            Ok(HonestRun {
                transcript,
                agree: None,
            })
        }
        AliceDecision::Reveal(reveal, out) => {
            transcript.push(Body::Reveal(reveal.clone()))?;
            let s_c = bob.on_reveal(&reveal, &x)?;
            let agree = s_c == *out.get(choice);
            transcript.push(Body::OutputAlice {
                s_plus: out.s_plus,
                s_times: out.s_times,
            })?;
            transcript.push(Body::OutputBob { choice, s_c })?;
            Ok(HonestRun {
                transcript,
                agree: Some(agree),
            })
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertifiedLength {
    pub ell_max: i64,
    pub feasible: bool,
    /// Whether some length is achievable for large `n` at these `(r, p_error)`.
    pub corollary_secure: bool,
    pub regime: Regime,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimReport {
    pub params: ProtocolParams,
    /// Fraction of non-aborted honest runs with `S′_C = S_C`; `None` if all aborted.
    pub correctness_rate: Option<f64>,
    pub abort_rate: f64,
    pub per_bit_guess_analytic: f64,
    pub per_bit_guess_empirical: f64,
    pub ell_certified: CertifiedLength,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d_estimate: Option<AdvantageEstimate>,
}

/// Extra work for [`simulate`].
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct SimOptions {
    /// Classical samples for the exact small-n advantage; `None` skips it.
    pub exact_samples: Option<usize>,
}

/// Honest runs plus an attacked run per trial, all seeded from `params.rng_seed`.
/// Bob's choice bit alternates between `+` (even trials) and `x` (odd trials).
pub fn simulate(
    params: &ProtocolParams,
    strategy: &AttackStrategy,
    trials: usize,
    opts: &SimOptions,
) -> Result<SimReport> {
    params.validate()?;
    if trials < 1 {
        return Err(param("trials must be at least 1"));
    }
    let (mut agreed, mut completed, mut aborted) = (0usize, 0usize, 0usize);
    let mut correct_bits = 0.0;
    let mut attacked_bits = 0usize;
    for trial in 0..trials as u64 {
        let choice = QubitBasis::from_index(trial as usize % 2);
        let run = run_honest_trial(params, choice, trial)?;
        match run.agree {
            None => aborted += 1,
            Some(a) => {
                completed += 1;
                agreed += a as usize;
            }
        }

        let mut rng = stream(params.rng_seed, trial, Role::Adversary);
        let mut rounds = Vec::with_capacity(params.n);
        for _ in 0..params.n {
            let x = rng.random::<bool>() as u8;
            let theta = QubitBasis::from_index(rng.random::<bool>() as usize);
            let round = apply_attack(strategy, x, theta, &mut rng)?;
            rounds.push(ScoredRound { round, x, theta });
        }
        let reveal: Vec<QubitBasis> = rounds.iter().map(|r| r.theta).collect();
        let stats = adversary_finish(strategy, &rounds, &reveal, &mut rng)?;
        correct_bits += stats.empirical * stats.rounds as f64;
        attacked_bits += stats.rounds;
    }

    let (secure, regime) = secure_predicate(params.storage.r(), params.channel.p_error)?;
    let ell_max = params.certified().map(|r| r.ell_max).unwrap_or(-1);
    let d_estimate = match opts.exact_samples {
        Some(samples) => Some(exact_advantage_small_n(params, strategy, samples)?),
        None => None,
    };
    Ok(SimReport {
        params: *params,
        correctness_rate: (completed > 0).then(|| agreed as f64 / completed as f64),
        abort_rate: aborted as f64 / trials as f64,
        per_bit_guess_analytic: strategy.analytic_guess_prob(),
        per_bit_guess_empirical: correct_bits / attacked_bits as f64,
        ell_certified: CertifiedLength {
            ell_max,
            feasible: ell_max >= 1,
            corollary_secure: secure,
            regime,
        },
        d_estimate,
    })
}
