//! Single-bit SPHF: `hk = h ~ D_{Z,s}^m`, `hp = A^t h`,
//! `Hash = R(<h, c>)`, `ProjHash = R(<hp, s>)`.
//!
//! `R` outputs 1 with probability `(1 + cos(2 pi x / q)) / 2`. Two
//! independent roundings of `u` and `u + delta` for uniform `u` agree with
//! probability `1/2 + cos(2 pi delta / q) / 4`, which is `3/4` for
//! `delta << q`.

use rand::Rng;

use super::gaussian::DiscreteGaussian;
use super::zq::{ModqMatrix, ModqVector, Transposed};

pub fn round_probability(x: u64, q: u64) -> f64 {
    let theta = 2.0 * std::f64::consts::PI * (x % q) as f64 / q as f64;
    0.5 * (1.0 + theta.cos())
}

pub fn prob_round<R: Rng + ?Sized>(x: u64, q: u64, rng: &mut R) -> bool {
    rng.gen::<f64>() < round_probability(x, q)
}

pub fn bit_hash_kg<R: Rng + ?Sized>(m: usize, gauss: &DiscreteGaussian, rng: &mut R) -> Vec<i64> {
    gauss.sample_vec(m, rng)
}

pub fn bit_proj_kg(a: &ModqMatrix, h: &[i64], q: u64) -> ModqVector {
    a.transpose_mul_small(h, q)
}

/// [`bit_proj_kg`] against a precomputed transpose.
pub fn bit_proj_kg_t(at: &Transposed, h: &[i64], q: u64) -> ModqVector {
    at.mul_small(h, q)
}

pub fn bit_hash<R: Rng + ?Sized>(h: &[i64], c: &ModqVector, q: u64, rng: &mut R) -> bool {
    prob_round(c.dot_small(h, q), q, rng)
}

pub fn bit_proj_hash<R: Rng + ?Sized>(hp: &ModqVector, s: &ModqVector, q: u64, rng: &mut R) -> bool {
    prob_round(hp.dot(s, q), q, rng)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lwe::encryption::lwe_encrypt;
    use crate::lwe::params::LweParams;
    use crate::lwe::trapdoor::{tagged_matrix, trapgen};
    use rand::SeedableRng;
    use rand_chacha::ChaCha20Rng;

    #[test]
    fn rounding_endpoints() {
        let mut rng = ChaCha20Rng::seed_from_u64(1);
        let q = 1_073_741_827u64;
        assert_eq!(round_probability(0, q), 1.0);
        assert!((0..1000).all(|_| prob_round(0, q, &mut rng)));
        for x in [(q - 1) / 2, q.div_ceil(2)] {
            let p = round_probability(x, q);
            let pi2 = std::f64::consts::PI.powi(2);
            assert!(p <= 10.0 * pi2 / (q as f64).powi(2), "p = {p}");
        }
    }

    #[test]
    fn double_rounding_agrees_three_quarters() {
        let mut rng = ChaCha20Rng::seed_from_u64(2);
        let q = 1_073_741_827u64;
        for delta in [0u64, 17, 1000] {
            let n = 100_000;
            let agree = (0..n)
                .filter(|_| {
                    let u = rng.gen_range(0..q);
                    prob_round(u, q, &mut rng) == prob_round((u + delta) % q, q, &mut rng)
                })
                .count();
            let rate = agree as f64 / n as f64;
            assert!((rate - 0.75).abs() < 0.02, "delta = {delta}, rate = {rate}");
        }
    }

    #[test]
    fn noiseless_word_gives_identical_inputs() {
        let p = LweParams::preset("test").unwrap();
        let mut rng = ChaCha20Rng::seed_from_u64(3);
        let (_, a0) = trapgen(&p, &mut rng);
        let a = tagged_matrix(&p, &a0);
        let gauss = DiscreteGaussian::from_square(p.s_hk2).unwrap();
        for _ in 0..20 {
            let s = ModqVector::uniform(p.n, p.q, &mut rng);
            let c = a.mul_vec(&s, p.q);
            let h = bit_hash_kg(p.m, &gauss, &mut rng);
            let hp = bit_proj_kg(&a, &h, p.q);
            assert_eq!(c.dot_small(&h, p.q), hp.dot(&s, p.q));
        }
    }

    #[test]
    fn agreement_on_honest_and_random_words() {
        let p = LweParams::preset("test").unwrap();
        let mut rng = ChaCha20Rng::seed_from_u64(4);
        let (_, a0) = trapgen(&p, &mut rng);
        let a = tagged_matrix(&p, &a0);
        let g_t = DiscreteGaussian::from_square(p.t2).unwrap();
        let g_hk = DiscreteGaussian::from_square(p.s_hk2).unwrap();
        let trials = 10_000;
        let (mut honest, mut noisy) = (0, 0);
        for _ in 0..trials {
            let (c, w) = lwe_encrypt(&p, &a, &g_t, 0, &mut rng);
            let h = bit_hash_kg(p.m, &g_hk, &mut rng);
            let hp = bit_proj_kg(&a, &h, p.q);
            honest += (bit_hash(&h, &c, p.q, &mut rng) == bit_proj_hash(&hp, &w.s, p.q, &mut rng)) as usize;
            // Same s, uniform noise: the offset <h, e> is uniform.
            let u = ModqVector::uniform(p.m, p.q, &mut rng);
            let c_u = a.mul_vec(&w.s, p.q).add(&u, p.q);
            noisy += (bit_hash(&h, &c_u, p.q, &mut rng) == bit_proj_hash(&hp, &w.s, p.q, &mut rng)) as usize;
        }
        let honest = honest as f64 / trials as f64;
        let noisy = noisy as f64 / trials as f64;
        assert!((honest - 0.75).abs() < 0.02, "honest {honest}");
        assert!((noisy - 0.5).abs() < 0.02, "noisy {noisy}");
    }

    #[test]
    fn uniform_word_hash_is_unbiased() {
        let p = LweParams::preset("toy").unwrap();
        let mut rng = ChaCha20Rng::seed_from_u64(5);
        let gauss = DiscreteGaussian::from_square(p.s_hk2).unwrap();
        let trials = 10_000;
        let ones = (0..trials)
            .filter(|_| {
                let h = bit_hash_kg(p.m, &gauss, &mut rng);
                let c = ModqVector::uniform(p.m, p.q, &mut rng);
                bit_hash(&h, &c, p.q, &mut rng)
            })
            .count();
        assert!((ones as f64 / trials as f64 - 0.5).abs() <= 0.02);
    }
}
