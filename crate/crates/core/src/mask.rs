//! Fixed-length bit strings used as one-time pads over the transferred
//! messages.

use std::fmt;

use rand::{CryptoRng, Rng};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

/// A byte string of fixed length `kappa / 8`, XOR-ed onto messages.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct MaskBytes(Vec<u8>);

impl MaskBytes {
    pub fn new(bytes: Vec<u8>) -> Self {
        Self(bytes)
    }

    pub fn zero(len: usize) -> Self {
        Self(vec![0; len])
    }

    pub fn random<R: Rng + CryptoRng>(len: usize, rng: &mut R) -> Self {
        let mut bytes = vec![0; len];
        rng.fill(bytes.as_mut_slice());
        Self(bytes)
    }

    pub fn from_hex(s: &str) -> Result<Self> {
        let s = s.trim();
        if !s.len().is_multiple_of(2) {
            return Err(Error::Decode(format!("odd-length hex string {s:?}")));
        }
        (0..s.len())
            .step_by(2)
            .map(|i| {
                u8::from_str_radix(&s[i..i + 2], 16)
                    .map_err(|_| Error::Decode(format!("invalid hex string {s:?}")))
            })
            .collect::<Result<Vec<u8>>>()
            .map(Self)
    }

    pub fn to_hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02X}")).collect()
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<u8> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Bitwise XOR; both operands must have the same length.
    pub fn xor(&self, other: &MaskBytes) -> Result<MaskBytes> {
        if self.len() != other.len() {
            return Err(Error::LengthMismatch {
                left: self.len(),
                right: other.len(),
            });
        }
        Ok(Self(
            self.0.iter().zip(&other.0).map(|(a, b)| a ^ b).collect(),
        ))
    }

    /// Bits in transmission order (most significant bit of byte 0 first).
    pub fn bits(&self) -> impl Iterator<Item = bool> + '_ {
        self.0
            .iter()
            .flat_map(|byte| (0..8).rev().map(move |i| (byte >> i) & 1 == 1))
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        Self(pack_bits(bits))
    }
}

impl fmt::Debug for MaskBytes {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MaskBytes({})", self.to_hex())
    }
}

impl From<Vec<u8>> for MaskBytes {
    fn from(bytes: Vec<u8>) -> Self {
        Self(bytes)
    }
}

pub fn xor_mask(a: &MaskBytes, b: &MaskBytes) -> Result<MaskBytes> {
    a.xor(b)
}

/// Packs bits MSB-first; a trailing partial byte is zero padded.
pub fn pack_bits(bits: &[bool]) -> Vec<u8> {
    bits.chunks(8)
        .map(|chunk| {
            chunk
                .iter()
                .enumerate()
                .fold(0u8, |acc, (i, &bit)| acc | ((bit as u8) << (7 - i)))
        })
        .collect()
}

pub fn unpack_bits(bytes: &[u8], count: usize) -> Vec<bool> {
    (0..count)
        .map(|i| (bytes[i / 8] >> (7 - i % 8)) & 1 == 1)
        .collect()
}

/// SHA-256 in counter mode: `H(domain || ctr_be32 || input)` blocks,
/// truncated to `len` bytes. Used to turn group elements into masks.
pub fn kdf(domain: &[u8], input: &[u8], len: usize) -> MaskBytes {
    let mut out = Vec::with_capacity(len + 32);
    let mut counter = 0u32;
    while out.len() < len {
        let mut hasher = Sha256::new();
        hasher.update(domain);
        hasher.update(counter.to_be_bytes());
        hasher.update(input);
        out.extend_from_slice(&hasher.finalize());
        counter += 1;
    }
    out.truncate(len);
    MaskBytes(out)
}
