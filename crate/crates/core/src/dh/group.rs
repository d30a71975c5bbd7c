//! Prime-order subgroup of `Z_P^*`.

use std::fmt;

use num_bigint::{BigUint, RandBigInt};
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::{CryptoRng, Rng};

use crate::error::{decode_err, Error, Result};

/// Miller–Rabin bases: the first 24 primes. Deterministic (and exact below
/// 3.3e24); for larger inputs it is a fixed-base probable-prime test.
const MR_BASES: [u32; 24] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89,
];

pub fn is_probable_prime(n: &BigUint) -> bool {
    let two = BigUint::from(2u32);
    if *n < two {
        return false;
    }
    for &p in &MR_BASES {
        let p = BigUint::from(p);
        if *n == p {
            return true;
        }
        if (n % &p).is_zero() {
            return false;
        }
    }
    let n_minus_one = n - 1u32;
    let s = n_minus_one.trailing_zeros().unwrap_or(0);
    let d = &n_minus_one >> s;
    'bases: for &a in &MR_BASES {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x.is_one() || x == n_minus_one {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_one {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Element of the order-`Q` subgroup, stored as its canonical residue.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroupElement(BigUint);

impl GroupElement {
    pub fn value(&self) -> &BigUint {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_one()
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// `(P, Q, g)` with `Q | P - 1` and `g` of order `Q`.
#[derive(Clone, PartialEq, Eq)]
pub struct GroupParams {
    p: BigUint,
    q: BigUint,
    g: BigUint,
    cofactor: BigUint,
    width: usize,
}

impl fmt::Debug for GroupParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GroupParams")
            .field("p_bits", &self.p.bits())
            .field("q_bits", &self.q.bits())
            .field("g", &self.g)
            .finish()
    }
}

// Q is the smallest prime above 2^127 (resp. 2^255) with 2Q + 1 prime.
const TEST_Q: &str = "80000000000000000000000000001851";
const DEMO_Q: &str = "800000000000000000000000000000000000000000000000000000000001c197";

impl GroupParams {
    pub fn new(p: BigUint, q: BigUint, g: BigUint) -> Result<Self> {
        if p.is_even() || !is_probable_prime(&p) {
            return Err(Error::Params("modulus P is not an odd prime".into()));
        }
        if !is_probable_prime(&q) {
            return Err(Error::Params("order Q is not prime".into()));
        }
        let (cofactor, rem) = (&p - 1u32).div_rem(&q);
        if !rem.is_zero() {
            return Err(Error::Params("Q does not divide P - 1".into()));
        }
        if g.is_zero() || g >= p || g.is_one() || !g.modpow(&q, &p).is_one() {
            return Err(Error::Params("g does not generate the order-Q subgroup".into()));
        }
        let width = (p.bits() as usize).div_ceil(8);
        Ok(Self {
            p,
            q,
            g,
            cofactor,
            width,
        })
    }

    /// `toy` (P = 23, Q = 11, g = 2), `test` (Q ~ 2^127) and `demo`
    /// (Q ~ 2^255); the last two use safe primes P = 2Q + 1 and g = 4.
    pub fn preset(name: &str) -> Result<Self> {
        match name {
            "toy" => Self::new(23u32.into(), 11u32.into(), 2u32.into()),
            "test" => Self::safe_prime(TEST_Q),
            "demo" => Self::safe_prime(DEMO_Q),
            other => Err(Error::UnknownPreset(other.to_string())),
        }
    }

    fn safe_prime(q_hex: &str) -> Result<Self> {
        let q = BigUint::parse_bytes(q_hex.as_bytes(), 16).expect("valid hex constant");
        let p = &q * 2u32 + 1u32;
        Self::new(p, q, 4u32.into())
    }

    pub fn p(&self) -> &BigUint {
        &self.p
    }

    pub fn q(&self) -> &BigUint {
        &self.q
    }

    pub fn generator(&self) -> GroupElement {
        GroupElement(self.g.clone())
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement(BigUint::one())
    }

    /// Byte width of an encoded element, `ceil(bits(P) / 8)`.
    pub fn element_width(&self) -> usize {
        self.width
    }

    /// Validates subgroup membership.
    pub fn element(&self, value: BigUint) -> Result<GroupElement> {
        if value.is_zero() || value >= self.p || !value.modpow(&self.q, &self.p).is_one() {
            return Err(decode_err("value is not in the order-Q subgroup"));
        }
        Ok(GroupElement(value))
    }

    pub fn exp(&self, base: &GroupElement, e: &BigUint) -> GroupElement {
        GroupElement(base.0.modpow(&(e % &self.q), &self.p))
    }

    pub fn g_exp(&self, e: &BigUint) -> GroupElement {
        GroupElement(self.g.modpow(&(e % &self.q), &self.p))
    }

    pub fn mul(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        GroupElement((&a.0 * &b.0) % &self.p)
    }

    /// Inverse via `a^(Q-1)`, valid in the order-Q subgroup.
    pub fn inv(&self, a: &GroupElement) -> GroupElement {
        GroupElement(a.0.modpow(&(&self.q - 1u32), &self.p))
    }

    pub fn div(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        self.mul(a, &self.inv(b))
    }

    pub fn random_scalar<R: Rng + CryptoRng>(&self, rng: &mut R) -> BigUint {
        rng.gen_biguint_below(&self.q)
    }

    /// Uniform subgroup element sampled without learning its discrete log:
    /// `x^((P-1)/Q)` for uniform `x` in `[1, P-1]`.
    pub fn random_element<R: Rng + CryptoRng>(&self, rng: &mut R) -> GroupElement {
        let x = rng.gen_biguint_range(&BigUint::one(), &self.p);
        GroupElement(x.modpow(&self.cofactor, &self.p))
    }

    pub fn scalar_add(&self, a: &BigUint, b: &BigUint) -> BigUint {
        (a + b) % &self.q
    }

    pub fn scalar_sub(&self, a: &BigUint, b: &BigUint) -> BigUint {
        ((a % &self.q) + &self.q - (b % &self.q)) % &self.q
    }

    /// Fixed-width big-endian encoding.
    pub fn encode_element(&self, e: &GroupElement) -> Vec<u8> {
        let bytes = e.0.to_bytes_be();
        let mut out = vec![0u8; self.width - bytes.len()];
        out.extend_from_slice(&bytes);
        out
    }

    pub fn decode_element(&self, bytes: &[u8]) -> Result<GroupElement> {
        if bytes.len() != self.width {
            return Err(decode_err(format!(
                "group element must be {} bytes, got {}",
                self.width,
                bytes.len()
            )));
        }
        self.element(BigUint::from_bytes_be(bytes))
    }

    /// `[len][P][len][Q][len][g]`, lengths 4-byte big-endian.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::new();
        for v in [&self.p, &self.q, &self.g] {
            let bytes = v.to_bytes_be();
            out.extend_from_slice(&(bytes.len() as u32).to_be_bytes());
            out.extend_from_slice(&bytes);
        }
        out
    }

    pub fn from_bytes(mut bytes: &[u8]) -> Result<Self> {
        let mut values = Vec::with_capacity(3);
        for _ in 0..3 {
            if bytes.len() < 4 {
                return Err(decode_err("truncated group parameters"));
            }
            let len = u32::from_be_bytes(bytes[..4].try_into().unwrap()) as usize;
            bytes = &bytes[4..];
            if bytes.len() < len {
                return Err(decode_err("truncated group parameters"));
            }
            values.push(BigUint::from_bytes_be(&bytes[..len]));
            bytes = &bytes[len..];
        }
        if !bytes.is_empty() {
            return Err(decode_err("trailing bytes after group parameters"));
        }
        let g = values.pop().unwrap();
        let q = values.pop().unwrap();
        let p = values.pop().unwrap();
        Self::new(p, q, g)
    }
}
