use serde::{Deserialize, Serialize};

use super::channel::ChannelParams;
use crate::bounds::{abort_interval, ell_robust, SecurityReport};
use crate::error::{param, Error, Result};
use crate::qmath::DepolarizingChannel;
use crate::uncertainty::t_closed_form;

/// Default per-block decoding failure target.
pub const DEFAULT_CODE_FAILURE: f64 = 1e-3;

/// The reveal waiting time only orders events: the adversary's storage
/// channel acts once, after the qubits arrive and before the reveal message.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RevealDelay;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProtocolParams {
    pub n: usize,
    pub ell: usize,
    pub eps: f64,
    #[serde(skip)]
    pub reveal_delay: RevealDelay,
    pub channel: ChannelParams,
    pub storage: DepolarizingChannel,
    /// Target probability that a syndrome fails to correct a block.
    pub code_failure: f64,
    pub rng_seed: u64,
}

impl ProtocolParams {
    pub fn new(
        n: usize,
        ell: usize,
        eps: f64,
        channel: ChannelParams,
        r: f64,
        rng_seed: u64,
    ) -> Result<Self> {
        let p = Self {
            n,
            ell,
            eps,
            reveal_delay: RevealDelay,
            channel,
            storage: DepolarizingChannel::new(r)?,
            code_failure: DEFAULT_CODE_FAILURE,
            rng_seed,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 1 {
            return Err(param("n must be at least 1"));
        }
        if self.ell > self.n {
            return Err(param(format!("ell={} exceeds n={}", self.ell, self.n)));
        }
        if !(self.eps > 0.0 && self.eps < 1.0) {
            return Err(param(format!("eps={} outside (0,1)", self.eps)));
        }
        self.channel.validate()?;
        if !(self.code_failure > 0.0 && self.code_failure < 1.0) {
            return Err(param(format!(
                "code failure target {} outside (0,1)",
                self.code_failure
            )));
        }
        if !self.is_ideal() {
            abort_interval(self.n as u64, self.channel.p_erase, self.eps)?;
        }
        Ok(())
    }

    /// A noiseless channel runs the basic protocol: no abort test and no syndromes.
    pub fn is_ideal(&self) -> bool {
        self.channel.is_noiseless()
    }

    /// Length guarantee at these parameters with `t` from the depolarizing bound.
    pub fn certified(&self) -> Result<SecurityReport> {
        let t = t_closed_form(self.storage.r())?;
        ell_robust(
            self.n as u64,
            self.eps,
            t,
            self.channel.p_error,
            self.channel.p_erase,
        )
    }

    /// Fails unless `ell` is within the certified length.
    pub fn check_certified(&self) -> Result<()> {
        let rep = self.certified()?;
        if rep.ell_max < self.ell as i64 {
            return Err(Error::Precondition(format!(
                "ell={} exceeds the certified length {}",
                self.ell, rep.ell_max
            )));
        }
        Ok(())
    }
}
