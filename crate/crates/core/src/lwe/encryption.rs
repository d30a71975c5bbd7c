//! Bit encryption `c = A s + e + Encode(mu)` with `Encode(mu) = mu (0, ..., 0, ceil(q/2))`.
//!
//! Decryption inverts `2c = A (2s) + 2e + (0, ..., 0, mu)` with radius `B'`,
//! reads `mu` off the parity of the last noise coordinate and rejects unless
//! every other coordinate is even and the halved noise is within `B''`.

use rand::Rng;

use super::gaussian::DiscreteGaussian;
use super::params::LweParams;
use super::trapdoor::{gadget_invert, Trapdoor};
use super::zq::{center, norm2_at_most, sub_mod, ModqMatrix, ModqVector};

pub type LweCiphertext = ModqVector;

/// Encryption randomness; `s` alone determines `e` given the ciphertext.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LweWitness {
    pub s: ModqVector,
    pub e: Vec<i64>,
}

pub fn encode_bit(p: &LweParams, mu: u8) -> ModqVector {
    let mut v = ModqVector::zero(p.m);
    if mu & 1 == 1 {
        v.0[p.m - 1] = p.q.div_ceil(2);
    }
    v
}

/// Noise `e ~ D_{Z,t}^m`, resampled while `|e| > B`.
pub fn sample_noise<R: Rng + ?Sized>(p: &LweParams, gauss: &DiscreteGaussian, rng: &mut R) -> Vec<i64> {
    let max = p.b().max_norm2();
    loop {
        let e = gauss.sample_vec(p.m, rng);
        if norm2_at_most(&e, max) {
            return e;
        }
    }
}

pub fn lwe_encrypt<R: Rng + ?Sized>(
    p: &LweParams,
    a: &ModqMatrix,
    gauss: &DiscreteGaussian,
    mu: u8,
    rng: &mut R,
) -> (LweCiphertext, LweWitness) {
    let s = ModqVector::uniform(p.n, p.q, rng);
    let e = sample_noise(p, gauss, rng);
    let c = a
        .mul_vec(&s, p.q)
        .add(&ModqVector::from_signed(&e, p.q), p.q)
        .add(&encode_bit(p, mu), p.q);
    (c, LweWitness { s, e })
}

/// `c - A s - Encode(mu) = e` and `|e| <= B`.
pub fn check_encryption(p: &LweParams, a: &ModqMatrix, c: &LweCiphertext, mu: u8, w: &LweWitness) -> bool {
    if c.len() != p.m || w.s.len() != p.n || w.e.len() != p.m {
        return false;
    }
    let d = c.sub(&a.mul_vec(&w.s, p.q), p.q).sub(&encode_bit(p, mu), p.q);
    d.centered(p.q) == w.e && norm2_at_most(&w.e, p.b().max_norm2())
}

/// `Some(mu)` or `None` for a ciphertext outside both decryption balls.
pub fn lwe_decrypt(p: &LweParams, td: &Trapdoor, a: &ModqMatrix, c: &LweCiphertext) -> Option<u8> {
    let doubled = c.add(c, p.q);
    let (_, e_star) = gadget_invert(p, td, a, &doubled, &p.b_inv())?;
    let (last, rest) = e_star.split_last()?;
    if rest.iter().any(|x| x & 1 != 0) {
        return None;
    }
    let mu = last.rem_euclid(2);
    let halved: Vec<i64> = rest
        .iter()
        .map(|x| x / 2)
        .chain(std::iter::once((last - mu) / 2))
        .collect();
    norm2_at_most(&halved, p.b_dec().max_norm2()).then_some(mu as u8)
}

/// Centered `c - A s`, the noise a candidate `s` implies.
pub fn implied_noise(p: &LweParams, a: &ModqMatrix, c: &LweCiphertext, s: &ModqVector) -> Vec<i64> {
    c.0.iter()
        .zip(&a.mul_vec(s, p.q).0)
        .map(|(&ci, &ai)| center(sub_mod(ci, ai, p.q), p.q))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lwe::trapdoor::{tagged_matrix, trapgen};
    use rand::SeedableRng;
    use rand_chacha::ChaCha20Rng;

    struct Setup {
        p: LweParams,
        t: Trapdoor,
        a: ModqMatrix,
        gauss: DiscreteGaussian,
        rng: ChaCha20Rng,
    }

    fn setup(name: &str, seed: u64) -> Setup {
        let p = LweParams::preset(name).unwrap();
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        let (t, a0) = trapgen(&p, &mut rng);
        let a = tagged_matrix(&p, &a0);
        let gauss = DiscreteGaussian::from_square(p.t2).unwrap();
        Setup { p, t, a, gauss, rng }
    }

    #[test]
    fn encode_doubling_identity() {
        let p = LweParams::new("q11", 1, 11, 1, 1, 1, 8, 1, 1);
        assert!(p.is_err());
        // The q = 11 example by hand: ceil(11 / 2) = 6 and 2 * 6 mod 11 = 1.
        assert_eq!(11u64.div_ceil(2), 6);
        assert_eq!(2 * 6 % 11, 1);
        for name in ["toy", "test", "test-full", "demo"] {
            let p = LweParams::preset(name).unwrap();
            assert!(encode_bit(&p, 0).0.iter().all(|&x| x == 0));
            for mu in [0u8, 1] {
                let e = encode_bit(&p, mu);
                let d = e.add(&e, p.q);
                assert!(d.0[..p.m - 1].iter().all(|&x| x == 0));
                assert_eq!(d.0[p.m - 1], mu as u64, "{name}");
            }
        }
    }

    #[test]
    fn round_trips() {
        for name in ["toy", "test"] {
            let mut s = setup(name, 1);
            for i in 0..1000 {
                let mu = (i % 2) as u8;
                let (c, w) = lwe_encrypt(&s.p, &s.a, &s.gauss, mu, &mut s.rng);
                assert!(check_encryption(&s.p, &s.a, &c, mu, &w));
                assert!(!check_encryption(&s.p, &s.a, &c, 1 - mu, &w));
                assert_eq!(lwe_decrypt(&s.p, &s.t, &s.a, &c), Some(mu), "{name}");
            }
        }
    }

    #[test]
    fn noise_just_above_b_dprime_is_rejected() {
        let mut s = setup("test", 2);
        let p = s.p.clone();
        let r = p.b_dec().max_norm2().isqrt() as i64;
        let sv = ModqVector::uniform(p.n, p.q, &mut s.rng);
        for (mag, expect) in [(r, Some(0)), (r + 1, None)] {
            let mut e = vec![0i64; p.m];
            e[3] = mag;
            let c = s.a.mul_vec(&sv, p.q).add(&ModqVector::from_signed(&e, p.q), p.q);
            assert_eq!(lwe_decrypt(&p, &s.t, &s.a, &c), expect, "magnitude {mag}");
        }
        let mut e = vec![0i64; p.m];
        e[p.m - 1] = -(r + 1);
        let c = s.a.mul_vec(&sv, p.q).add(&ModqVector::from_signed(&e, p.q), p.q).add(&encode_bit(&p, 1), p.q);
        assert_eq!(lwe_decrypt(&p, &s.t, &s.a, &c), None);
    }

    #[test]
    fn uniform_ciphertexts_are_rejected() {
        let mut s = setup("test", 3);
        let bot = (0..1000)
            .filter(|_| {
                let c = ModqVector::uniform(s.p.m, s.p.q, &mut s.rng);
                lwe_decrypt(&s.p, &s.t, &s.a, &c).is_none()
            })
            .count();
        assert!(bot >= 999, "{bot}");
    }

    #[test]
    fn homomorphic_sums_of_zero_encryptions() {
        let mut s = setup("test", 4);
        assert!(s.p.homomorphic_margin());
        for _ in 0..200 {
            let (c1, _) = lwe_encrypt(&s.p, &s.a, &s.gauss, 0, &mut s.rng);
            let (c2, _) = lwe_encrypt(&s.p, &s.a, &s.gauss, 0, &mut s.rng);
            assert_eq!(lwe_decrypt(&s.p, &s.t, &s.a, &c1.add(&c2, s.p.q)), Some(0));
            let (c3, _) = lwe_encrypt(&s.p, &s.a, &s.gauss, 1, &mut s.rng);
            assert_eq!(lwe_decrypt(&s.p, &s.t, &s.a, &c1.add(&c3, s.p.q)), Some(1));
        }
    }

    #[test]
    fn implied_noise_matches_witness() {
        let mut s = setup("toy", 5);
        let (c, w) = lwe_encrypt(&s.p, &s.a, &s.gauss, 0, &mut s.rng);
        assert_eq!(implied_noise(&s.p, &s.a, &c, &w.s), w.e);
    }
}
