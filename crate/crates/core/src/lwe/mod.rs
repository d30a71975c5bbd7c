//! Learning-with-errors instantiation: gadget trapdoors, bit encryption,
//! the probabilistic-rounding bit SPHF and its amplification.

pub mod bit_sphf;
pub mod ecc;
pub mod encryption;
pub mod full;
pub mod gaussian;
pub mod params;
pub mod sphf;
pub mod trapdoor;
pub mod zq;

pub use encryption::{encode_bit, lwe_decrypt, lwe_encrypt, LweCiphertext, LweWitness};
pub use full::{AmpWitness, AmpWord, FullHashKey, FullProjKey};
pub use params::{LweParams, SquaredBound};
pub use sphf::LweSphf;
pub use trapdoor::{gadget_invert, trapgen, Trapdoor};
pub use zq::{ModqMatrix, ModqVector};
