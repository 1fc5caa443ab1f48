//! Bit sequences that read and print as `"0110"` strings.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::{Error, Result};

/// An ordered run of bits. Serializes as a compact `0`/`1` string.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Bitstring {
    bits: Vec<u8>,
}

impl Bitstring {
    pub fn from_bits(bits: impl IntoIterator<Item = u8>) -> Result<Self> {
        let bits: Vec<u8> = bits.into_iter().collect();
        if let Some(bad) = bits.iter().find(|&&b| b > 1) {
            return Err(Error::InvalidLayout(format!(
                "bitstring values must be 0 or 1, got {bad}"
            )));
        }
        Ok(Self { bits })
    }

    pub fn random<R: Rng + ?Sized>(len: usize, rng: &mut R) -> Self {
        Self {
            bits: (0..len).map(|_| rng.gen_range(0..=1u8)).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    pub fn get(&self, i: usize) -> Option<u8> {
        self.bits.get(i).copied()
    }

    /// Hamming distance; the lengths must match.
    pub fn distance(&self, other: &Self) -> Result<usize> {
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch(format!(
                "comparing bitstrings of lengths {} and {}",
                self.len(),
                other.len()
            )));
        }
        Ok(self
            .bits
            .iter()
            .zip(&other.bits)
            .filter(|(a, b)| a != b)
            .count())
    }

    /// True when `self` appears inside `other` in order (not necessarily
    /// contiguously).
    pub fn is_subsequence_of(&self, other: &Self) -> bool {
        let mut needle = self.bits.iter().peekable();
        for b in &other.bits {
            if needle.peek() == Some(&b) {
                needle.next();
            }
        }
        needle.peek().is_none()
    }
}

impl fmt::Display for Bitstring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.bits {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

impl FromStr for Bitstring {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(0u8),
                '1' => Ok(1u8),
                other => Err(Error::InvalidLayout(format!(
                    "bitstring may only contain 0 and 1, got '{other}'"
                ))),
            })
            .collect::<Result<Vec<u8>>>()
            .map(|bits| Self { bits })
    }
}

impl Serialize for Bitstring {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Bitstring {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
