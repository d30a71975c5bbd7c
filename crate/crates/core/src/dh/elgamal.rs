//! ElGamal over [`GroupParams`], multiplicatively homomorphic.

use num_bigint::BigUint;
use num_traits::Zero;
use rand::{CryptoRng, Rng};

use super::group::{GroupElement, GroupParams};

/// `(c0, c1) = (g^r, h^r * M)`. Doubles as the word type of the DH SPHF.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DhCiphertext {
    pub c0: GroupElement,
    pub c1: GroupElement,
}

impl DhCiphertext {
    /// Componentwise product, the homomorphic combination.
    pub fn combine(&self, grp: &GroupParams, other: &DhCiphertext) -> DhCiphertext {
        DhCiphertext {
            c0: grp.mul(&self.c0, &other.c0),
            c1: grp.mul(&self.c1, &other.c1),
        }
    }

    /// Componentwise quotient `self / other`.
    pub fn divide(&self, grp: &GroupParams, other: &DhCiphertext) -> DhCiphertext {
        DhCiphertext {
            c0: grp.div(&self.c0, &other.c0),
            c1: grp.div(&self.c1, &other.c1),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ElGamalKeys {
    pub pk: GroupElement,
    pub sk: BigUint,
}

pub fn eg_keygen<R: Rng + CryptoRng>(grp: &GroupParams, rng: &mut R) -> ElGamalKeys {
    keys_from_secret(grp, grp.random_scalar(rng))
}

pub fn keys_from_secret(grp: &GroupParams, sk: BigUint) -> ElGamalKeys {
    if sk.is_zero() {
        log::warn!("degenerate ElGamal key beta = 0: public key is the identity");
    }
    ElGamalKeys {
        pk: grp.g_exp(&sk),
        sk,
    }
}

pub fn eg_encrypt(grp: &GroupParams, pk: &GroupElement, m: &GroupElement, r: &BigUint) -> DhCiphertext {
    DhCiphertext {
        c0: grp.g_exp(r),
        c1: grp.mul(&grp.exp(pk, r), m),
    }
}

pub fn eg_decrypt(grp: &GroupParams, sk: &BigUint, c: &DhCiphertext) -> GroupElement {
    grp.div(&c.c1, &grp.exp(&c.c0, sk))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha20Rng;

    fn toy() -> GroupParams {
        GroupParams::preset("toy").unwrap()
    }

    fn el(grp: &GroupParams, v: u32) -> GroupElement {
        grp.element(v.into()).unwrap()
    }

    #[test]
    fn keygen_vectors() {
        let grp = toy();
        assert!(keys_from_secret(&grp, 0u32.into()).pk.is_identity());
        assert_eq!(keys_from_secret(&grp, 3u32.into()).pk, el(&grp, 8));
    }

    #[test]
    fn independent_keygens_differ() {
        let grp = GroupParams::preset("test").unwrap();
        let a = eg_keygen(&grp, &mut ChaCha20Rng::seed_from_u64(1));
        let b = eg_keygen(&grp, &mut ChaCha20Rng::seed_from_u64(2));
        assert_ne!(a.sk, b.sk);
    }

    #[test]
    fn encrypt_vectors() {
        let grp = toy();
        let h = el(&grp, 8);
        let one = grp.identity();
        let c = eg_encrypt(&grp, &h, &one, &0u32.into());
        assert!(c.c0.is_identity() && c.c1.is_identity());
        let c = eg_encrypt(&grp, &h, &one, &5u32.into());
        assert_eq!((c.c0.clone(), c.c1.clone()), (el(&grp, 9), el(&grp, 16)));
        let c = eg_encrypt(&grp, &h, &el(&grp, 2), &5u32.into());
        assert_eq!((c.c0, c.c1), (el(&grp, 9), el(&grp, 9)));
    }

    #[test]
    fn decrypt_vectors() {
        let grp = toy();
        let unit = DhCiphertext {
            c0: grp.identity(),
            c1: grp.identity(),
        };
        for beta in 0..11u32 {
            assert!(eg_decrypt(&grp, &beta.into(), &unit).is_identity());
        }
        let c = DhCiphertext {
            c0: el(&grp, 9),
            c1: el(&grp, 16),
        };
        assert!(eg_decrypt(&grp, &3u32.into(), &c).is_identity());
    }

    #[test]
    fn round_trip() {
        let grp = GroupParams::preset("test").unwrap();
        let mut rng = ChaCha20Rng::seed_from_u64(3);
        let keys = eg_keygen(&grp, &mut rng);
        for _ in 0..100 {
            let m = grp.random_element(&mut rng);
            let r = grp.random_scalar(&mut rng);
            let c = eg_encrypt(&grp, &keys.pk, &m, &r);
            assert_eq!(eg_decrypt(&grp, &keys.sk, &c), m);
        }
    }

    #[test]
    fn homomorphism() {
        let grp = toy();
        let mut rng = ChaCha20Rng::seed_from_u64(4);
        let keys = eg_keygen(&grp, &mut rng);
        for _ in 0..50 {
            let (m1, m2) = (grp.random_element(&mut rng), grp.random_element(&mut rng));
            let c1 = eg_encrypt(&grp, &keys.pk, &m1, &grp.random_scalar(&mut rng));
            let c2 = eg_encrypt(&grp, &keys.pk, &m2, &grp.random_scalar(&mut rng));
            assert_eq!(eg_decrypt(&grp, &keys.sk, &c1.combine(&grp, &c2)), grp.mul(&m1, &m2));
            assert_eq!(eg_decrypt(&grp, &keys.sk, &c1.divide(&grp, &c2)), grp.div(&m1, &m2));
        }
    }
}
