//! Oblivious transfer in the noisy-quantum-storage model.
//!
//! - [`qmath`]: density matrices, the depolarizing channel, entropies, distances.
//! - [`entstat`]: guessing probability, min-entropy, non-uniformity and the
//!   analytic bound calculators (privacy amplification, AEP, splitting, Chernoff).
//! - [`uncertainty`]: the single-qubit uncertainty bound under depolarizing
//!   storage, both closed form and by direct minimization.
//! - [`bounds`]: extractable string length for the ideal and the robust protocol.
//! - [`protocol`]: executable honest and dishonest parties, hashing, syndrome
//!   coding, channel models, Monte Carlo and exact small-n security evaluation.
//! - [`verify`]: property suites shared by the CLI and the acceptance tests.

pub mod bounds;
pub mod entstat;
pub mod error;
pub mod protocol;
pub mod qmath;
pub mod uncertainty;
pub mod verify;

pub use error::{Error, Result};
