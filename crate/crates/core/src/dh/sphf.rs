//! Word-independent SPHF over ElGamal encryptions of the identity.
//!
//! `L = {(g^r, h^r)}`, `L' = X \ L`, `hk = (alpha, beta)`,
//! `hp = g^alpha h^beta`, `Hash(hk, (u, v)) = u^alpha v^beta`,
//! `ProjHash(hp, x, r) = hp^r`. There is no grey zone: every ciphertext
//! decrypts, so smoothness holds on the whole complement of `L`.

use num_bigint::BigUint;
use rand::{CryptoRng, Rng};
use sha2::{Digest, Sha256};

use super::elgamal::{eg_decrypt, eg_encrypt, DhCiphertext};
use super::group::{GroupElement, GroupParams};
use crate::error::{decode_err, Result};
use crate::mask::{kdf, MaskBytes};
use crate::sphf::{RhoMode, RhoTrapdoor, SigmaMode, SphfWg};

const MASK_DOMAIN: &[u8] = b"GZOT-DH-MASK-v1";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DhHashKey {
    pub alpha: BigUint,
    pub beta: BigUint,
}

#[derive(Clone, Debug)]
pub struct DhSphf {
    grp: GroupParams,
}

impl DhSphf {
    pub fn new(grp: GroupParams) -> Self {
        Self { grp }
    }

    pub fn preset(name: &str) -> Result<Self> {
        GroupParams::preset(name).map(Self::new)
    }

    pub fn group(&self) -> &GroupParams {
        &self.grp
    }

    /// Encryption of the identity under `h` with randomness `r`.
    pub fn word_with_witness(&self, h: &GroupElement, r: &BigUint) -> DhCiphertext {
        eg_encrypt(&self.grp, h, &self.grp.identity(), r)
    }

    fn random_non_identity<R: Rng + CryptoRng>(&self, rng: &mut R) -> GroupElement {
        loop {
            let m = self.grp.random_element(rng);
            if !m.is_identity() {
                return m;
            }
        }
    }
}

impl SphfWg for DhSphf {
    const TAG: u8 = 1;
    const NAME: &'static str = "dh";

    type Sigma = GroupElement;
    type Rho = DhCiphertext;
    type SigmaTrapdoor = BigUint;
    type Word = DhCiphertext;
    type Witness = BigUint;
    type HashKey = DhHashKey;
    type ProjKey = GroupElement;
    type HashValue = GroupElement;

    fn params_digest(&self) -> [u8; 16] {
        let mut hasher = Sha256::new();
        hasher.update(b"GZOT-DH-PARAMS");
        hasher.update(self.grp.to_bytes());
        hasher.finalize()[..16].try_into().unwrap()
    }

    fn sample_sigma<R: Rng + CryptoRng>(
        &self,
        mode: SigmaMode,
        rng: &mut R,
    ) -> (GroupElement, Option<BigUint>) {
        match mode {
            SigmaMode::S0 => (self.grp.random_element(rng), None),
            SigmaMode::S1 => {
                let beta = self.grp.random_scalar(rng);
                (self.grp.g_exp(&beta), Some(beta))
            }
        }
    }

    fn sample_rho<R: Rng + CryptoRng>(
        &self,
        h: &GroupElement,
        mode: RhoMode,
        rng: &mut R,
    ) -> (DhCiphertext, Option<RhoTrapdoor<DhCiphertext, BigUint>>) {
        let grp = &self.grp;
        match mode {
            RhoMode::R0 => (
                DhCiphertext {
                    c0: grp.random_element(rng),
                    c1: grp.random_element(rng),
                },
                None,
            ),
            RhoMode::R1 => {
                let t = grp.random_scalar(rng);
                let rho = self.word_with_witness(h, &t);
                let r = grp.random_scalar(rng);
                let x = self.word_with_witness(h, &r);
                let x_prime = rho.divide(grp, &x);
                let w_prime = grp.scalar_sub(&t, &r);
                (
                    rho,
                    Some(RhoTrapdoor::Witnessed {
                        x,
                        x_prime,
                        w: r,
                        w_prime,
                    }),
                )
            }
            RhoMode::R1Prime => {
                let m = self.random_non_identity(rng);
                let m_prime = self.random_non_identity(rng);
                let x = eg_encrypt(grp, h, &m, &grp.random_scalar(rng));
                let x_prime = eg_encrypt(grp, h, &m_prime, &grp.random_scalar(rng));
                (
                    x.combine(grp, &x_prime),
                    Some(RhoTrapdoor::Unwitnessed { x, x_prime }),
                )
            }
        }
    }

    fn hash_kg<R: Rng + CryptoRng>(&self, rng: &mut R) -> DhHashKey {
        DhHashKey {
            alpha: self.grp.random_scalar(rng),
            beta: self.grp.random_scalar(rng),
        }
    }

    fn proj_kg<R: Rng + CryptoRng>(
        &self,
        h: &GroupElement,
        hk: &DhHashKey,
        _word: &DhCiphertext,
        _rng: &mut R,
    ) -> GroupElement {
        self.grp
            .mul(&self.grp.g_exp(&hk.alpha), &self.grp.exp(h, &hk.beta))
    }

    fn hash<R: Rng + CryptoRng>(
        &self,
        hk: &DhHashKey,
        word: &DhCiphertext,
        _rng: &mut R,
    ) -> GroupElement {
        self.grp.mul(
            &self.grp.exp(&word.c0, &hk.alpha),
            &self.grp.exp(&word.c1, &hk.beta),
        )
    }

    /// `hp^r`. A witness that does not match the word yields a well-formed
    /// but unrelated value; nothing is detected here.
    fn proj_hash<R: Rng + CryptoRng>(
        &self,
        hp: &GroupElement,
        _word: &DhCiphertext,
        r: &BigUint,
        _rng: &mut R,
    ) -> GroupElement {
        self.grp.exp(hp, r)
    }

    fn wordgen_l<R: Rng + CryptoRng>(
        &self,
        h: &GroupElement,
        rng: &mut R,
    ) -> (DhCiphertext, BigUint) {
        let r = self.grp.random_scalar(rng);
        (self.word_with_witness(h, &r), r)
    }

    fn wordgen_x<R: Rng + CryptoRng>(&self, rng: &mut R) -> DhCiphertext {
        DhCiphertext {
            c0: self.grp.random_element(rng),
            c1: self.grp.random_element(rng),
        }
    }

    fn wordtest(&self, _h: &GroupElement, beta: &BigUint, word: &DhCiphertext) -> bool {
        !eg_decrypt(&self.grp, beta, word).is_identity()
    }

    fn complement(&self, rho: &DhCiphertext, word: &DhCiphertext) -> DhCiphertext {
        rho.divide(&self.grp, word)
    }

    fn check_witness(&self, h: &GroupElement, word: &DhCiphertext, r: &BigUint) -> bool {
        self.word_with_witness(h, r) == *word
    }

    fn check_sigma_trapdoor(&self, h: &GroupElement, beta: &BigUint) -> bool {
        self.grp.g_exp(beta) == *h
    }

    fn to_mask(&self, value: &GroupElement, len: usize) -> Result<MaskBytes> {
        Ok(kdf(MASK_DOMAIN, &self.grp.encode_element(value), len))
    }

    fn fixed_mask_len(&self) -> Option<usize> {
        None
    }

    fn encode_sigma(&self, h: &GroupElement) -> Vec<u8> {
        self.grp.encode_element(h)
    }

    fn encode_rho(&self, rho: &DhCiphertext) -> Vec<u8> {
        self.encode_word(rho)
    }

    fn encode_word(&self, word: &DhCiphertext) -> Vec<u8> {
        let mut out = self.grp.encode_element(&word.c0);
        out.extend(self.grp.encode_element(&word.c1));
        out
    }

    fn decode_word(&self, bytes: &[u8]) -> Result<DhCiphertext> {
        let w = self.grp.element_width();
        if bytes.len() != 2 * w {
            return Err(decode_err(format!(
                "dh word must be {} bytes, got {}",
                2 * w,
                bytes.len()
            )));
        }
        Ok(DhCiphertext {
            c0: self.grp.decode_element(&bytes[..w])?,
            c1: self.grp.decode_element(&bytes[w..])?,
        })
    }

    fn encode_proj_key(&self, hp: &GroupElement) -> Vec<u8> {
        self.grp.encode_element(hp)
    }

    fn decode_proj_key(&self, bytes: &[u8]) -> Result<GroupElement> {
        self.grp.decode_element(bytes)
    }
}
