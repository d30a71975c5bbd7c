//! The amplified SPHF over `k_amp`-tuples of ciphertexts.
//!
//! Each amplification slot `j` is an independent `ell`-parallel construction:
//! a uniform `K_j` of `kappa` bits, `ell = kappa * rep` bit keys, and the mask
//! `T_j = ECC(K_j) xor S_j` with `S_j = (Hash(hk_{j,i}, c_j))_i`. The output is
//! `K = K_1 xor ... xor K_{k_amp}`. A single slot whose ciphertext is far from
//! the code makes its `K'_j` unpredictable, and with it `K'`.
//!
//! Bit keys are regenerated from a per-slot seed (ChaCha8, one stream per
//! position), so a hash key is `k_amp` seeds plus `k_amp` short strings.

use rand::{CryptoRng, Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::bit_sphf::{bit_hash, bit_proj_hash, bit_proj_kg_t};
use super::ecc::RepetitionCode;
use super::encryption::{LweCiphertext, LweWitness};
use super::gaussian::DiscreteGaussian;
use super::params::LweParams;
use super::zq::{ModqMatrix, ModqVector};
use crate::error::{decode_err, Result};
use crate::mask::{pack_bits, unpack_bits, MaskBytes};

/// `k_amp` ciphertexts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AmpWord(pub Vec<LweCiphertext>);

/// One witness per component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AmpWitness(pub Vec<LweWitness>);

#[derive(Clone, PartialEq, Eq)]
pub struct SlotKey {
    seed: [u8; 32],
    k: Vec<bool>,
}

impl std::fmt::Debug for SlotKey {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("SlotKey(..)")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FullHashKey {
    slots: Vec<SlotKey>,
}

impl FullHashKey {
    pub fn slots(&self) -> usize {
        self.slots.len()
    }

    pub fn slot_key(&self, j: usize) -> MaskBytes {
        MaskBytes::from_bits(&self.slots[j].k)
    }

    /// Bit key `hk_{j,i}`.
    pub fn bit_key(&self, p: &LweParams, gauss: &DiscreteGaussian, j: usize, i: usize) -> Vec<i64> {
        let mut rng = ChaCha8Rng::from_seed(self.slots[j].seed);
        rng.set_stream(i as u64);
        gauss.sample_vec(p.m, &mut rng)
    }

    /// `K = xor_j K_j`.
    pub fn key(&self) -> MaskBytes {
        let kappa = self.slots[0].k.len();
        let bits: Vec<bool> = (0..kappa)
            .map(|b| self.slots.iter().fold(false, |acc, s| acc ^ s.k[b]))
            .collect();
        MaskBytes::from_bits(&bits)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FullProjKey {
    /// `hp_{j,i}` at index `j * ell + i`.
    pub hp: Vec<ModqVector>,
    /// `T_j`, `ell` bits each.
    pub masks: Vec<Vec<bool>>,
}

pub fn full_hash_kg<R: Rng + CryptoRng + ?Sized>(p: &LweParams, rng: &mut R) -> FullHashKey {
    FullHashKey {
        slots: (0..p.k_amp)
            .map(|_| SlotKey {
                seed: rng.gen(),
                k: (0..p.kappa).map(|_| rng.gen()).collect(),
            })
            .collect(),
    }
}

/// `S_j` for every slot, with fresh rounding randomness.
pub fn hash_bits<R: Rng + ?Sized>(
    p: &LweParams,
    gauss: &DiscreteGaussian,
    hk: &FullHashKey,
    word: &AmpWord,
    rng: &mut R,
) -> Vec<Vec<bool>> {
    assert_eq!(word.0.len(), hk.slots());
    (0..hk.slots())
        .map(|j| {
            (0..p.ell)
                .map(|i| bit_hash(&hk.bit_key(p, gauss, j, i), &word.0[j], p.q, rng))
                .collect()
        })
        .collect()
}

pub fn full_proj_kg<R: Rng + ?Sized>(
    p: &LweParams,
    a: &ModqMatrix,
    gauss: &DiscreteGaussian,
    hk: &FullHashKey,
    word: &AmpWord,
    rng: &mut R,
) -> FullProjKey {
    assert_eq!(word.0.len(), hk.slots());
    let code = RepetitionCode::new(p.rep);
    let at = a.transposed();
    let mut hp = Vec::with_capacity(p.k_amp * p.ell);
    let mut masks = Vec::with_capacity(p.k_amp);
    for (j, slot) in hk.slots.iter().enumerate() {
        let codeword = code.encode(&slot.k);
        let mut mask = Vec::with_capacity(p.ell);
        for (i, &bit) in codeword.iter().enumerate() {
            let h = hk.bit_key(p, gauss, j, i);
            hp.push(bit_proj_kg_t(&at, &h, p.q));
            mask.push(bit ^ bit_hash(&h, &word.0[j], p.q, rng));
        }
        masks.push(mask);
    }
    FullProjKey { hp, masks }
}

pub fn full_hash(hk: &FullHashKey, _word: &AmpWord) -> MaskBytes {
    hk.key()
}

/// `K' = xor_j ECC^{-1}(T_j xor S'_j)`.
pub fn full_proj_hash<R: Rng + ?Sized>(
    p: &LweParams,
    hp: &FullProjKey,
    witness: &AmpWitness,
    rng: &mut R,
) -> MaskBytes {
    let code = RepetitionCode::new(p.rep);
    let mut k = vec![false; p.kappa];
    for (j, (mask, w)) in hp.masks.iter().zip(&witness.0).enumerate() {
        let noisy: Vec<bool> = mask
            .iter()
            .enumerate()
            .map(|(i, &t)| t ^ bit_proj_hash(&hp.hp[j * p.ell + i], &w.s, p.q, rng))
            .collect();
        for (acc, b) in k.iter_mut().zip(code.decode(&noisy)) {
            *acc ^= b;
        }
    }
    MaskBytes::from_bits(&k)
}

impl FullProjKey {
    /// `digest || hp entries || masks`, each mask packed to `ceil(ell / 8)` bytes.
    pub fn encode(&self, p: &LweParams) -> Vec<u8> {
        let width = p.entry_bytes();
        let mut out = p.digest().to_vec();
        for v in &self.hp {
            v.write_le(width, &mut out);
        }
        for mask in &self.masks {
            out.extend(pack_bits(mask));
        }
        out
    }

    pub fn decode(p: &LweParams, bytes: &[u8]) -> Result<Self> {
        let width = p.entry_bytes();
        let hp_len = p.k_amp * p.ell * p.n * width;
        let mask_len = p.ell.div_ceil(8);
        let expected = 16 + hp_len + p.k_amp * mask_len;
        if bytes.len() != expected {
            return Err(decode_err(format!(
                "projection key must be {expected} bytes, got {}",
                bytes.len()
            )));
        }
        if bytes[..16] != p.digest() {
            return Err(decode_err("parameter digest mismatch"));
        }
        let body = &bytes[16..16 + hp_len];
        let hp = body
            .chunks(p.n * width)
            .map(|c| ModqVector::read_le(c, p.n, width, p.q))
            .collect::<Result<Vec<_>>>()?;
        let masks = bytes[16 + hp_len..]
            .chunks(mask_len)
            .map(|c| unpack_bits(c, p.ell))
            .collect();
        Ok(Self { hp, masks })
    }
}
