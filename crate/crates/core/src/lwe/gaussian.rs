//! Centered discrete Gaussian over `Z` with weight `exp(-pi x^2 / s^2)`,
//! cut at `|x| <= ceil(12 s)`. Not constant time.
//!
//! Sampling inverts a 64-bit cumulative table: one `u64` per draw, with a
//! 256-entry guide indexed by the top byte to skip the search.

use rand::Rng;

use crate::error::{Error, Result};

#[derive(Clone)]
pub struct DiscreteGaussian {
    s: f64,
    tail: i64,
    /// `cdf[i] = floor(2^64 P[X <= i - tail])`, last entry saturated.
    cdf: Vec<u64>,
    /// `guide[b]` is the first index whose threshold exceeds `b << 56`.
    guide: [u32; 256],
}

impl std::fmt::Debug for DiscreteGaussian {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "DiscreteGaussian(s = {})", self.s)
    }
}

impl DiscreteGaussian {
    pub fn new(s: f64) -> Result<Self> {
        if s.is_nan() || s < 1.0 || !s.is_finite() {
            return Err(Error::Params(format!("gaussian parameter {s} below 1")));
        }
        let tail = (12.0 * s).ceil() as i64;
        let weights: Vec<f64> = (-tail..=tail)
            .map(|x| (-std::f64::consts::PI * (x * x) as f64 / (s * s)).exp())
            .collect();
        let total: f64 = weights.iter().sum();
        let mut acc = 0.0;
        let mut cdf: Vec<u64> = weights
            .iter()
            .map(|w| {
                acc += w / total;
                // 2^64 * acc, saturating at the top.
                (acc * 18_446_744_073_709_551_616.0).min(u64::MAX as f64) as u64
            })
            .collect();
        *cdf.last_mut().unwrap() = u64::MAX;
        let mut guide = [0u32; 256];
        let mut i = 0usize;
        for (b, g) in guide.iter_mut().enumerate() {
            while cdf[i] <= (b as u64) << 56 {
                i += 1;
            }
            *g = i as u32;
        }
        Ok(Self { s, tail, cdf, guide })
    }

    pub fn from_square(s2: u64) -> Result<Self> {
        Self::new((s2 as f64).sqrt())
    }

    pub fn parameter(&self) -> f64 {
        self.s
    }

    pub fn tail(&self) -> i64 {
        self.tail
    }

    #[inline]
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> i64 {
        let u = rng.next_u64();
        let mut i = self.guide[(u >> 56) as usize] as usize;
        while self.cdf[i] <= u && i + 1 < self.cdf.len() {
            i += 1;
        }
        i as i64 - self.tail
    }

    pub fn sample_vec<R: Rng + ?Sized>(&self, len: usize, rng: &mut R) -> Vec<i64> {
        (0..len).map(|_| self.sample(rng)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha20Rng;

    /// Variance of the untruncated discrete Gaussian by direct summation.
    fn variance_oracle(s: f64) -> f64 {
        let (mut z, mut v) = (0.0, 0.0);
        for x in -2000i64..=2000 {
            let w = (-std::f64::consts::PI * (x * x) as f64 / (s * s)).exp();
            z += w;
            v += w * (x * x) as f64;
        }
        v / z
    }

    #[test]
    fn moments() {
        let mut rng = ChaCha20Rng::seed_from_u64(1);
        for s in [1.0, 4.0, 8.0, 31.7] {
            let g = DiscreteGaussian::new(s).unwrap();
            let xs = g.sample_vec(100_000, &mut rng);
            let mean = xs.iter().sum::<i64>() as f64 / xs.len() as f64;
            let var = xs.iter().map(|&x| (x as f64 - mean).powi(2)).sum::<f64>() / xs.len() as f64;
            assert!(mean.abs() <= 0.05 * s, "s = {s}, mean = {mean}");
            let continuous = s * s / (2.0 * std::f64::consts::PI);
            let oracle = variance_oracle(s);
            assert!((var / oracle - 1.0).abs() < 0.03, "s = {s}: {var} vs {oracle}");
            if s >= 4.0 {
                assert!((var / continuous - 1.0).abs() < 0.10, "s = {s}: {var} vs {continuous}");
            }
            assert!(xs.iter().all(|x| x.abs() <= g.tail()));
        }
    }

    #[test]
    fn rejects_small_parameters() {
        assert!(DiscreteGaussian::new(0.5).is_err());
        assert!(DiscreteGaussian::new(f64::NAN).is_err());
        assert_eq!(DiscreteGaussian::from_square(64).unwrap().tail(), 96);
    }

    #[test]
    fn table_inversion_matches_probabilities() {
        let g = DiscreteGaussian::new(2.0).unwrap();
        let mut rng = ChaCha20Rng::seed_from_u64(3);
        let n = 200_000;
        let mut counts = std::collections::HashMap::new();
        for _ in 0..n {
            *counts.entry(g.sample(&mut rng)).or_insert(0usize) += 1;
        }
        let z: f64 = (-30i64..=30).map(|x| (-std::f64::consts::PI * (x * x) as f64 / 4.0).exp()).sum();
        for x in -3i64..=3 {
            let p = (-std::f64::consts::PI * (x * x) as f64 / 4.0).exp() / z;
            let got = *counts.get(&x).unwrap_or(&0) as f64 / n as f64;
            let sd = (p * (1.0 - p) / n as f64).sqrt();
            assert!((got - p).abs() < 5.0 * sd, "x = {x}: {got} vs {p}");
        }
    }
}
