//! Executable protocol: honest parties, channel, hashing and reconciliation,
//! individual-storage attacks, Monte Carlo and exact small-n evaluation.

mod attack;
pub mod bits;
mod channel;
pub mod code;
mod exact;
mod hash;
mod params;
mod party;
pub mod rng;
mod sim;
mod transcript;

pub use attack::{
    adversary_finish, apply_attack, AttackKind, AttackRound, AttackStrategy, GuessStats,
    ScoredRound,
};
pub use bits::BitString;
pub use channel::{transmit, ChannelParams, Pulse};
pub use code::{ml_decode, syndrome, CodeSpec, LinearCode};
pub use exact::{exact_advantage_small_n, AdvantageEstimate, EXACT_MAX_ELL, EXACT_MAX_N};
pub use hash::{toeplitz_hash, ToeplitzHash};
pub use params::{ProtocolParams, RevealDelay, DEFAULT_CODE_FAILURE};
pub use party::{Alice, AliceDecision, AliceOutput, AliceSent, BobWaiting, HonestBob};
pub use sim::{
    run_honest, run_honest_trial, simulate, CertifiedLength, HonestRun, SimOptions, SimReport,
};
pub use transcript::{AbortMsg, Body, Message, RevealMsg, Sender, SyndromeMsg, Transcript};
