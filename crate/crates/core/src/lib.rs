//! Smooth projective hash functions with a grey zone, and the two-flow
//! oblivious transfer built from them.
//!
//! The crate is organised around the [`sphf::SphfWg`] contract:
//!
//! * [`dh`] instantiates it from ElGamal over a prime-order subgroup of
//!   `Z_P^*`. Correctness is exact and smoothness is perfect.
//! * [`lwe`] instantiates it from Micciancio–Peikert style LWE encryption
//!   with a gadget trapdoor, a probabilistic-rounding bit hash, a repetition
//!   code and k-fold XOR amplification.
//! * [`ot`] runs the oblivious transfer over any instantiation, together with
//!   the ideal functionality and the trapdoor extractors used by the
//!   simulation-based security argument.
//!
//! Nothing in this crate is constant time. It is a research artifact.

pub mod dh;
pub mod error;
pub mod lwe;
pub mod mask;
pub mod ot;
pub mod sphf;

pub use error::{Error, Result};
pub use mask::{xor_mask, MaskBytes};
pub use sphf::{check_crs_consistency, Crs, RhoMode, RhoTrapdoor, SigmaMode, SphfWg};
