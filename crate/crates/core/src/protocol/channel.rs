use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{param, Result};
use crate::qmath::QubitBasis;

/// Erasure followed by a binary symmetric channel on the surviving pulses.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChannelParams {
    pub p_error: f64,
    pub p_erase: f64,
}

impl ChannelParams {
    pub const NOISELESS: ChannelParams = ChannelParams {
        p_error: 0.0,
        p_erase: 0.0,
    };

    pub fn new(p_error: f64, p_erase: f64) -> Result<Self> {
        let c = Self { p_error, p_erase };
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        if !(0.0..0.5).contains(&self.p_error) {
            return Err(param(format!("p_error={} outside [0, 1/2)", self.p_error)));
        }
        if !(0.0..1.0).contains(&self.p_erase) {
            return Err(param(format!("p_erase={} outside [0,1)", self.p_erase)));
        }
        Ok(())
    }

    pub fn is_noiseless(&self) -> bool {
        self.p_error == 0.0 && self.p_erase == 0.0
    }
}

/// A BB84 pulse as it reaches the receiver: the encoded bit (possibly
/// flipped by the channel) and the preparation basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pulse {
    pub bit: u8,
    pub basis: QubitBasis,
}

impl Pulse {
    /// Measurement in `basis`: the encoded bit if the bases agree, a fair
    /// coin otherwise.
    pub fn measure<R: Rng + ?Sized>(&self, basis: QubitBasis, rng: &mut R) -> u8 {
        if basis == self.basis {
            self.bit
        } else {
            rng.random::<bool>() as u8
        }
    }
}

/// Sends each pulse through the channel; `None` marks an erasure. Erasures
/// do not depend on the basis.
pub fn transmit<R: Rng + ?Sized>(
    channel: &ChannelParams,
    pulses: &[Pulse],
    rng: &mut R,
) -> Vec<Option<Pulse>> {
    pulses
        .iter()
        .map(|p| {
            let erased = rng.random_bool(channel.p_erase);
            let flip = rng.random_bool(channel.p_error) as u8;
            (!erased).then_some(Pulse {
                bit: p.bit ^ flip,
                basis: p.basis,
            })
        })
        .collect()
}
