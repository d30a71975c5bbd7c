//! CRS derivation from the session id.
//!
//! `seed = SHA-256("GZOT-CRS-v1" || tag || params_digest || sid)` keys a
//! ChaCha20 stream that runs `sample_sigma` and then `sample_rho`. Both
//! parties thus obtain the same CRS without talking to each other.

use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use sha2::{Digest, Sha256};

use super::SessionId;
use crate::dh::DhSphf;
use crate::error::{Error, Result};
use crate::lwe::LweSphf;
use crate::sphf::{Crs, RhoMode, SigmaMode, SphfWg};

const CRS_DOMAIN: &[u8] = b"GZOT-CRS-v1";

/// Runtime selector for the two instantiations, keyed by wire tag.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Instantiation {
    Dh,
    Lwe,
}

impl Instantiation {
    pub fn tag(self) -> u8 {
        match self {
            Instantiation::Dh => DhSphf::TAG,
            Instantiation::Lwe => LweSphf::TAG,
        }
    }

    pub fn from_tag(tag: u8) -> Result<Self> {
        match tag {
            t if t == DhSphf::TAG => Ok(Instantiation::Dh),
            t if t == LweSphf::TAG => Ok(Instantiation::Lwe),
            other => Err(Error::UnknownInstantiation(other)),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Instantiation::Dh => DhSphf::NAME,
            Instantiation::Lwe => LweSphf::NAME,
        }
    }
}

impl fmt::Display for Instantiation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Instantiation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "dh" | "1" => Ok(Instantiation::Dh),
            "lwe" | "2" => Ok(Instantiation::Lwe),
            other => Err(Error::Params(format!("unknown instantiation {other:?}"))),
        }
    }
}

/// 256-bit seed of the CRS sampler for `sid`.
pub fn crs_seed<S: SphfWg>(inst: &S, sid: SessionId) -> [u8; 32] {
    let mut h = Sha256::new();
    h.update(CRS_DOMAIN);
    h.update([S::TAG]);
    h.update(inst.params_digest());
    h.update(sid.as_bytes());
    h.finalize().into()
}

/// Deterministic CRS for `sid`. Honest runs use `(S0, R0)`.
pub fn derive_crs<S: SphfWg>(
    inst: &S,
    sid: SessionId,
    sigma_mode: SigmaMode,
    rho_mode: RhoMode,
) -> Crs<S> {
    let mut rng = ChaCha20Rng::from_seed(crs_seed(inst, sid));
    let (sigma, td_sigma) = inst.sample_sigma(sigma_mode, &mut rng);
    let (rho, td_rho) = inst.sample_rho(&sigma, rho_mode, &mut rng);
    Crs {
        sigma,
        rho,
        sigma_mode,
        rho_mode,
        td_sigma,
        td_rho,
    }
}
