//! Decisional Diffie-Hellman instantiation: ElGamal in a prime-order
//! subgroup of `Z_P^*`.

pub mod elgamal;
pub mod group;
pub mod sphf;

pub use elgamal::{eg_decrypt, eg_encrypt, eg_keygen, keys_from_secret, DhCiphertext, ElGamalKeys};
pub use group::{is_probable_prime, GroupElement, GroupParams};
pub use sphf::{DhHashKey, DhSphf};
