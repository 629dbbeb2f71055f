//! Bit strings stored one bit per byte. The wire form packs them
//! little-endian within each byte (bit `i` is bit `i % 8` of byte `i / 8`)
//! and base64-encodes the bytes.

use base64::engine::general_purpose::STANDARD;
use base64::Engine;
use rand::Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BitString(Vec<u8>);

impl BitString {
    pub fn zeros(len: usize) -> Self {
        Self(vec![0; len])
    }

    /// Keeps only the lowest bit of each entry.
    pub fn from_bits(bits: impl IntoIterator<Item = u8>) -> Self {
        Self(bits.into_iter().map(|b| b & 1).collect())
    }

    pub fn random<R: Rng + ?Sized>(len: usize, rng: &mut R) -> Self {
        Self((0..len).map(|_| rng.random::<bool>() as u8).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn bits(&self) -> &[u8] {
        &self.0
    }

    pub fn get(&self, i: usize) -> u8 {
        self.0[i]
    }

    pub fn weight(&self) -> usize {
        self.0.iter().map(|&b| b as usize).sum()
    }

    /// Bits at the given positions, in order.
    pub fn select(&self, positions: &[usize]) -> BitString {
        Self(positions.iter().map(|&i| self.0[i]).collect())
    }

    /// Zero-pads (or truncates) to `len` bits.
    pub fn padded(&self, len: usize) -> BitString {
        let mut v = self.0.clone();
        v.resize(len, 0);
        Self(v)
    }

    pub fn xor(&self, other: &BitString) -> Result<BitString> {
        if self.len() != other.len() {
            return Err(Error::LengthMismatch {
                expected: self.len(),
                got: other.len(),
            });
        }
        Ok(Self(
            self.0.iter().zip(&other.0).map(|(a, b)| a ^ b).collect(),
        ))
    }

    pub fn pack(&self) -> Vec<u8> {
        let mut out = vec![0u8; self.len().div_ceil(8)];
        for (i, &b) in self.0.iter().enumerate() {
            out[i / 8] |= b << (i % 8);
        }
        out
    }

    pub fn unpack(bytes: &[u8], len: usize) -> Result<BitString> {
        if bytes.len() != len.div_ceil(8) {
            return Err(Error::Format(format!(
                "{} bytes cannot hold exactly {len} bits",
                bytes.len()
            )));
        }
        let bits: Vec<u8> = (0..len).map(|i| (bytes[i / 8] >> (i % 8)) & 1).collect();
        if len % 8 != 0 && bytes[len / 8] >> (len % 8) != 0 {
            return Err(Error::Format("non-zero padding bits".into()));
        }
        Ok(Self(bits))
    }

    pub fn to_base64(&self) -> String {
        STANDARD.encode(self.pack())
    }

    pub fn from_base64(s: &str, len: usize) -> Result<BitString> {
        let bytes = STANDARD
            .decode(s)
            .map_err(|e| Error::Format(e.to_string()))?;
        Self::unpack(&bytes, len)
    }
}

impl std::fmt::Display for BitString {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for &b in &self.0 {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct Wire {
    len: usize,
    b64: String,
}

impl Serialize for BitString {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        Wire {
            len: self.len(),
            b64: self.to_base64(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for BitString {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = Wire::deserialize(d)?;
        BitString::from_base64(&w.b64, w.len).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn packing_is_little_endian() {
        let b = BitString::from_bits([1, 0, 0, 0, 0, 0, 0, 0, 0, 1]);
        assert_eq!(b.pack(), vec![0x01, 0x02]);
        assert_eq!(BitString::unpack(&[0x01, 0x02], 10).unwrap(), b);
        assert!(BitString::unpack(&[0x01, 0x06], 10).is_err());
    }

    #[test]
    fn json_round_trip() {
        let b = BitString::from_bits([1, 1, 0, 1, 0]);
        let s = serde_json::to_string(&b).unwrap();
        assert_eq!(s, r#"{"len":5,"b64":"Cw=="}"#);
        assert_eq!(serde_json::from_str::<BitString>(&s).unwrap(), b);
    }
}
