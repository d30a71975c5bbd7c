//! The instantiation-independent contract of a smooth projective hash
//! function with grey zone, and the CRS modes it is sampled in.
//!
//! Three word sets live in the ambient space `X`: the language `L` of
//! honest encryptions of the neutral plaintext, the set `L'` of words that
//! decrypt to anything else (or fail to decrypt), and the grey zone in
//! between. Correctness is required on `L`, smoothness on `L'`, nothing on
//! the grey zone.
//!
//! The CRS is a pair `(sigma, rho)`. `sigma` fixes the languages and, when
//! sampled in mode [`SigmaMode::S1`], comes with a membership-test trapdoor
//! for `L'`. `rho` fixes the complement map `x -> x'`; in mode
//! [`RhoMode::R1`] it comes with a witnessed pair of `L` words that
//! complement each other, in mode [`RhoMode::R1Prime`] with a pair of `L'`
//! words. Honest executions use `(S0, R0)`; the trapdoor modes exist for the
//! simulator and the test harness only.

use std::fmt::Debug;

use rand::{CryptoRng, Rng};

use crate::error::Result;
use crate::mask::MaskBytes;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SigmaMode {
    S0,
    S1,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RhoMode {
    R0,
    R1,
    R1Prime,
}

impl std::str::FromStr for SigmaMode {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "s0" => Ok(SigmaMode::S0),
            "s1" => Ok(SigmaMode::S1),
            _ => Err(crate::Error::Params(format!("unknown sigma mode {s:?}"))),
        }
    }
}

impl std::str::FromStr for RhoMode {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "r0" => Ok(RhoMode::R0),
            "r1" => Ok(RhoMode::R1),
            "r1prime" | "r1'" | "r1p" => Ok(RhoMode::R1Prime),
            _ => Err(crate::Error::Params(format!("unknown rho mode {s:?}"))),
        }
    }
}

/// Trapdoor attached to a rho sampled in `R1` or `R1'`.
#[derive(Clone, Debug)]
pub enum RhoTrapdoor<W, Wit> {
    /// `R1`: two `L` words with witnesses, `x_prime = complement(rho, x)`.
    Witnessed { x: W, x_prime: W, w: Wit, w_prime: Wit },
    /// `R1'`: two `L'` words, `x_prime = complement(rho, x)`.
    Unwitnessed { x: W, x_prime: W },
}

impl<W, Wit> RhoTrapdoor<W, Wit> {
    pub fn words(&self) -> (&W, &W) {
        match self {
            RhoTrapdoor::Witnessed { x, x_prime, .. } | RhoTrapdoor::Unwitnessed { x, x_prime } => {
                (x, x_prime)
            }
        }
    }
}

/// Common reference string. Trapdoors ride along as optional fields and are
/// never serialized; see [`Crs::public_bytes`].
pub struct Crs<S: SphfWg + ?Sized> {
    pub sigma: S::Sigma,
    pub rho: S::Rho,
    pub sigma_mode: SigmaMode,
    pub rho_mode: RhoMode,
    pub td_sigma: Option<S::SigmaTrapdoor>,
    pub td_rho: Option<RhoTrapdoor<S::Word, S::Witness>>,
}

impl<S: SphfWg + ?Sized> Clone for Crs<S> {
    fn clone(&self) -> Self {
        Self {
            sigma: self.sigma.clone(),
            rho: self.rho.clone(),
            sigma_mode: self.sigma_mode,
            rho_mode: self.rho_mode,
            td_sigma: self.td_sigma.clone(),
            td_rho: self.td_rho.clone(),
        }
    }
}

impl<S: SphfWg + ?Sized> Debug for Crs<S> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Crs")
            .field("sigma_mode", &self.sigma_mode)
            .field("rho_mode", &self.rho_mode)
            .field("td_sigma", &self.td_sigma.is_some())
            .field("td_rho", &self.td_rho.is_some())
            .finish_non_exhaustive()
    }
}

impl<S: SphfWg + ?Sized> Crs<S> {
    /// Wire form of the public part: `[tag][len][sigma][len][rho]`, lengths
    /// as 4-byte big-endian. Mode tags and trapdoors are not included.
    pub fn public_bytes(&self, inst: &S) -> Vec<u8> {
        let sigma = inst.encode_sigma(&self.sigma);
        let rho = inst.encode_rho(&self.rho);
        let mut out = Vec::with_capacity(9 + sigma.len() + rho.len());
        out.push(S::TAG);
        out.extend_from_slice(&(sigma.len() as u32).to_be_bytes());
        out.extend_from_slice(&sigma);
        out.extend_from_slice(&(rho.len() as u32).to_be_bytes());
        out.extend_from_slice(&rho);
        out
    }
}

/// The SPHF-with-grey-zone contract.
///
/// `proj_kg` takes the word (GL-style word-dependent projection keys);
/// instantiations with word-independent keys ignore it. `hash` never sees a
/// witness and `proj_hash` never sees the hash key. Operations that round
/// probabilistically take the random source explicitly, which keeps every
/// run reproducible from a seed.
pub trait SphfWg {
    /// Instantiation tag carried in wire frames.
    const TAG: u8;
    const NAME: &'static str;

    type Sigma: Clone + Debug;
    type Rho: Clone + Debug;
    type SigmaTrapdoor: Clone + Debug;
    type Word: Clone + Debug + PartialEq;
    type Witness: Clone + Debug;
    type HashKey;
    type ProjKey: Clone + Debug;
    type HashValue: Clone + Debug + PartialEq;

    /// Digest of the public parameter set, mixed into CRS derivation and
    /// (for LWE) into every serialized vector.
    fn params_digest(&self) -> [u8; 16];

    fn sample_sigma<R: Rng + CryptoRng>(
        &self,
        mode: SigmaMode,
        rng: &mut R,
    ) -> (Self::Sigma, Option<Self::SigmaTrapdoor>);

    #[allow(clippy::type_complexity)]
    fn sample_rho<R: Rng + CryptoRng>(
        &self,
        sigma: &Self::Sigma,
        mode: RhoMode,
        rng: &mut R,
    ) -> (Self::Rho, Option<RhoTrapdoor<Self::Word, Self::Witness>>);

    fn hash_kg<R: Rng + CryptoRng>(&self, rng: &mut R) -> Self::HashKey;

    fn proj_kg<R: Rng + CryptoRng>(
        &self,
        sigma: &Self::Sigma,
        hk: &Self::HashKey,
        word: &Self::Word,
        rng: &mut R,
    ) -> Self::ProjKey;

    fn hash<R: Rng + CryptoRng>(
        &self,
        hk: &Self::HashKey,
        word: &Self::Word,
        rng: &mut R,
    ) -> Self::HashValue;

    fn proj_hash<R: Rng + CryptoRng>(
        &self,
        hp: &Self::ProjKey,
        word: &Self::Word,
        witness: &Self::Witness,
        rng: &mut R,
    ) -> Self::HashValue;

    fn wordgen_l<R: Rng + CryptoRng>(
        &self,
        sigma: &Self::Sigma,
        rng: &mut R,
    ) -> (Self::Word, Self::Witness);

    fn wordgen_x<R: Rng + CryptoRng>(&self, rng: &mut R) -> Self::Word;

    /// Membership test for `L'` using the sigma trapdoor.
    fn wordtest(&self, sigma: &Self::Sigma, td_sigma: &Self::SigmaTrapdoor, word: &Self::Word)
        -> bool;

    /// `x' ` such that `x (+) x' = rho` under the ciphertext homomorphism.
    fn complement(&self, rho: &Self::Rho, word: &Self::Word) -> Self::Word;

    /// Checks that `witness` proves `word ∈ L`.
    fn check_witness(&self, sigma: &Self::Sigma, word: &Self::Word, witness: &Self::Witness)
        -> bool;

    /// Whether `td_sigma` is the trapdoor of `sigma`.
    fn check_sigma_trapdoor(&self, sigma: &Self::Sigma, td_sigma: &Self::SigmaTrapdoor) -> bool;

    /// Converts a hash value into a `len`-byte mask.
    fn to_mask(&self, value: &Self::HashValue, len: usize) -> Result<MaskBytes>;

    /// Mask length imposed by the instantiation, if any.
    fn fixed_mask_len(&self) -> Option<usize>;

    fn encode_sigma(&self, sigma: &Self::Sigma) -> Vec<u8>;
    fn encode_rho(&self, rho: &Self::Rho) -> Vec<u8>;
    fn encode_word(&self, word: &Self::Word) -> Vec<u8>;
    fn decode_word(&self, bytes: &[u8]) -> Result<Self::Word>;
    fn encode_proj_key(&self, hp: &Self::ProjKey) -> Vec<u8>;
    fn decode_proj_key(&self, bytes: &[u8]) -> Result<Self::ProjKey>;
}

/// Checks the mode/trapdoor invariants of a CRS.
///
/// * `td_sigma` is present iff `sigma_mode = S1`, and is the trapdoor of
///   `sigma`.
/// * `td_rho` is absent for `R0`, witnessed for `R1`, unwitnessed for `R1'`.
/// * the trapdoor words complement each other under `rho`; for `R1` both
///   witnesses verify, for `R1'` both words test into `L'` when an `S1`
///   trapdoor is available.
pub fn check_crs_consistency<S: SphfWg>(inst: &S, crs: &Crs<S>) -> bool {
    let sigma_ok = match (crs.sigma_mode, &crs.td_sigma) {
        (SigmaMode::S0, None) => true,
        (SigmaMode::S1, Some(td)) => inst.check_sigma_trapdoor(&crs.sigma, td),
        _ => false,
    };
    if !sigma_ok {
        return false;
    }
    match (crs.rho_mode, &crs.td_rho) {
        (RhoMode::R0, None) => true,
        (RhoMode::R1, Some(RhoTrapdoor::Witnessed { x, x_prime, w, w_prime })) => {
            inst.complement(&crs.rho, x) == *x_prime
                && inst.check_witness(&crs.sigma, x, w)
                && inst.check_witness(&crs.sigma, x_prime, w_prime)
        }
        (RhoMode::R1Prime, Some(RhoTrapdoor::Unwitnessed { x, x_prime })) => {
            inst.complement(&crs.rho, x) == *x_prime
                && crs.td_sigma.as_ref().is_none_or(|td| {
                    inst.wordtest(&crs.sigma, td, x) && inst.wordtest(&crs.sigma, td, x_prime)
                })
        }
        _ => false,
    }
}
