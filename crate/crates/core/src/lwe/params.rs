//! Parameter sets for the LWE instantiation.
//!
//! Every Gaussian parameter is stored by its square, an integer, so that the
//! noise bounds are exact rationals:
//!
//! * `B^2   = 4 t^2 m`
//! * `B'^2  = q^2 / (64 m)`
//! * `B''^2 = q^2 / (256 m)`, that is `B'' = B' / 2`
//!
//! Squared norms are integers, so `|e|^2 <= num / den` is decided exactly by
//! comparing against `floor(num / den)`.

use std::fmt;

use num_bigint::BigUint;
use sha2::{Digest, Sha256};

use crate::dh::is_probable_prime;
use crate::error::{Error, Result};

/// Exact squared radius `num / den`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SquaredBound {
    pub num: u128,
    pub den: u128,
}

impl SquaredBound {
    pub fn new(num: u128, den: u128) -> Self {
        assert!(den > 0);
        Self { num, den }
    }

    /// Largest integer squared norm inside the ball.
    pub fn max_norm2(&self) -> u128 {
        self.num / self.den
    }

    pub fn admits(&self, norm2: u128) -> bool {
        norm2 <= self.max_norm2()
    }

    /// The ball of `factor` times the radius.
    pub fn scaled(&self, factor: u128) -> Self {
        Self::new(self.num * factor * factor, self.den)
    }

    pub fn radius(&self) -> f64 {
        (self.num as f64 / self.den as f64).sqrt()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LweParams {
    pub name: String,
    pub n: usize,
    pub q: u64,
    /// Gadget exponent `ceil(log2 q) - 1`.
    pub k_g: u32,
    /// Gadget width `k_g + 1`.
    pub width: usize,
    pub m_bar: usize,
    pub m: usize,
    pub sigma2: u64,
    /// Squared encryption-noise parameter.
    pub t2: u64,
    /// Squared hash-key Gaussian parameter.
    pub s_hk2: u64,
    pub kappa: usize,
    pub rep: usize,
    pub ell: usize,
    pub k_amp: usize,
}

/// Smallest prime `>= start`.
pub fn next_prime(start: u64) -> u64 {
    let mut c = start | 1;
    while !is_probable_prime(&BigUint::from(c)) {
        c += 2;
    }
    c
}

impl LweParams {
    /// Builds a parameter set with `m_bar = n * width` and checks every
    /// operational constraint.
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        name: &str,
        n: usize,
        q: u64,
        sigma2: u64,
        t2: u64,
        s_hk2: u64,
        kappa: usize,
        rep: usize,
        k_amp: usize,
    ) -> Result<Self> {
        let bad = |msg: String| Err(Error::Params(msg));
        if q < 5 || q.is_multiple_of(2) || !is_probable_prime(&BigUint::from(q)) {
            return bad(format!("q = {q} is not an odd prime"));
        }
        if q >= 1 << 62 {
            return bad(format!("q = {q} exceeds 62 bits"));
        }
        if n == 0 || kappa == 0 || k_amp == 0 {
            return bad("n, kappa and k_amp must be positive".into());
        }
        if !kappa.is_multiple_of(8) {
            return bad(format!("kappa = {kappa} is not a multiple of 8"));
        }
        if rep.is_multiple_of(2) {
            return bad(format!("rep = {rep} must be odd"));
        }
        if t2 == 0 || s_hk2 == 0 {
            return bad("gaussian parameters must be at least 1".into());
        }
        let k_g = 64 - (q - 1).leading_zeros() - 1;
        let width = k_g as usize + 1;
        let m_bar = n * width;
        let p = Self {
            name: name.to_string(),
            n,
            q,
            k_g,
            width,
            m_bar,
            m: m_bar + n * width,
            sigma2,
            t2,
            s_hk2,
            kappa,
            rep,
            ell: kappa * rep,
            k_amp,
        };
        if !p.noise_fits() {
            return bad(format!(
                "B = {:.1} exceeds B'' = {:.1}",
                p.b().radius(),
                p.b_dec().radius()
            ));
        }
        Ok(p)
    }

    /// `toy`, `test`, `test-full` or `demo`. `test` is a reduced `test-full`
    /// (n = 16, k_amp = 2) sized for repeated trials on one core.
    pub fn preset(name: &str) -> Result<Self> {
        // omega^2 = log2 n, so t^2 = sigma^2 * m * log2 n.
        let t2_formula = |n: usize, q: u64, sigma2: u64| sigma2 * Self::dims(n, q).1 as u64 * n.ilog2() as u64;
        match name {
            "toy" => {
                let q = next_prime(1 << 13);
                // The t formula overshoots B'' at this size; unit noise is the
                // largest integer t^2 with B <= B''.
                Self::new("toy", 8, q, 32, 1, 32, 8, 31, 2)
            }
            "test" => {
                let (n, sigma2) = (16, 64);
                let q = next_prime(1 << 30);
                Self::new("test", n, q, sigma2, t2_formula(n, q, sigma2), 64, 16, 63, 2)
            }
            "test-full" => {
                let (n, sigma2) = (64, 64);
                let q = next_prime(1 << 30);
                Self::new("test-full", n, q, sigma2, t2_formula(n, q, sigma2), 64, 16, 63, 8)
            }
            "demo" => {
                let (n, sigma2) = (128, 512);
                let q = next_prime(1 << 61);
                Self::new("demo", n, q, sigma2, t2_formula(n, q, sigma2), 512, 128, 127, 40)
            }
            other => Err(Error::UnknownPreset(other.to_string())),
        }
    }

    /// `(width, m)` for a given `n` and `q`.
    fn dims(n: usize, q: u64) -> (usize, usize) {
        let width = (64 - (q - 1).leading_zeros()) as usize;
        (width, 2 * n * width)
    }

    /// Honest noise bound `B = 2 t sqrt(m)`.
    pub fn b(&self) -> SquaredBound {
        SquaredBound::new(4 * self.t2 as u128 * self.m as u128, 1)
    }

    /// Inversion bound `B' = q / (8 sqrt(m))`.
    pub fn b_inv(&self) -> SquaredBound {
        SquaredBound::new(self.q as u128 * self.q as u128, 64 * self.m as u128)
    }

    /// Decryption bound `B'' = B' / 2`.
    pub fn b_dec(&self) -> SquaredBound {
        SquaredBound::new(self.q as u128 * self.q as u128, 256 * self.m as u128)
    }

    /// `B <= B''`, i.e. `1024 t^2 m^2 <= q^2`.
    pub fn noise_fits(&self) -> bool {
        1024 * self.t2 as u128 * (self.m as u128).pow(2) <= (self.q as u128).pow(2)
    }

    /// `2B <= B''`: sums of two honest ciphertexts still decrypt.
    pub fn homomorphic_margin(&self) -> bool {
        4096 * self.t2 as u128 * (self.m as u128).pow(2) <= (self.q as u128).pow(2)
    }

    pub fn t(&self) -> f64 {
        (self.t2 as f64).sqrt()
    }

    pub fn s_hk(&self) -> f64 {
        (self.s_hk2 as f64).sqrt()
    }

    /// Bytes per serialized `Z_q` entry.
    pub fn entry_bytes(&self) -> usize {
        (64 - self.q.leading_zeros() as usize).div_ceil(8)
    }

    pub fn mask_bytes(&self) -> usize {
        self.kappa / 8
    }

    /// Truncated SHA-256 over every field, prefixed to serialized vectors.
    pub fn digest(&self) -> [u8; 16] {
        let mut h = Sha256::new();
        h.update(b"GZOT-LWE-PARAMS");
        for v in [
            self.n as u64,
            self.q,
            self.m as u64,
            self.t2,
            self.s_hk2,
            self.kappa as u64,
            self.rep as u64,
            self.k_amp as u64,
        ] {
            h.update(v.to_be_bytes());
        }
        h.finalize()[..16].try_into().unwrap()
    }

    /// Named values for display, in a fixed order.
    pub fn describe(&self) -> Vec<(&'static str, String)> {
        vec![
            ("name", self.name.clone()),
            ("n", self.n.to_string()),
            ("q", self.q.to_string()),
            ("k_g", self.k_g.to_string()),
            ("m_bar", self.m_bar.to_string()),
            ("m", self.m.to_string()),
            ("sigma", format!("{:.3}", (self.sigma2 as f64).sqrt())),
            ("t", format!("{:.3}", self.t())),
            ("B", format!("{:.3}", self.b().radius())),
            ("B_prime", format!("{:.3}", self.b_inv().radius())),
            ("B_dprime", format!("{:.3}", self.b_dec().radius())),
            ("s_hk", format!("{:.3}", self.s_hk())),
            ("kappa", self.kappa.to_string()),
            ("rep", self.rep.to_string()),
            ("ell", self.ell.to_string()),
            ("k_amp", self.k_amp.to_string()),
        ]
    }
}

impl fmt::Display for LweParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .describe()
            .into_iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect();
        f.write_str(&parts.join(" "))
    }
}
