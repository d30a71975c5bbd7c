//! [`SphfWg`] for the LWE construction.
//!
//! `L` is the set of `k_amp`-tuples of encryptions of 0; `L'` the tuples with
//! at least one component that does not decrypt to 0. Everything else is the
//! grey zone.

use rand::{CryptoRng, Rng};

use super::encryption::{check_encryption, encode_bit, lwe_decrypt, lwe_encrypt};
use super::full::{full_hash, full_hash_kg, full_proj_hash, full_proj_kg, AmpWitness, AmpWord, FullHashKey, FullProjKey};
use super::gaussian::DiscreteGaussian;
use super::params::{LweParams, SquaredBound};
use super::trapdoor::{gadget_invert, gadget_matrix, tagged_matrix, trapgen, Trapdoor};
use super::zq::{ModqMatrix, ModqVector};
use crate::error::{decode_err, Error, Result};
use crate::mask::MaskBytes;
use crate::sphf::{RhoMode, RhoTrapdoor, SigmaMode, SphfWg};

#[derive(Clone, Debug)]
pub struct LweSphf {
    params: LweParams,
    noise: DiscreteGaussian,
    key_gauss: DiscreteGaussian,
}

impl LweSphf {
    pub fn new(params: LweParams) -> Result<Self> {
        Ok(Self {
            noise: DiscreteGaussian::from_square(params.t2)?,
            key_gauss: DiscreteGaussian::from_square(params.s_hk2)?,
            params,
        })
    }

    pub fn preset(name: &str) -> Result<Self> {
        Self::new(LweParams::preset(name)?)
    }

    pub fn params(&self) -> &LweParams {
        &self.params
    }

    pub fn key_gaussian(&self) -> &DiscreteGaussian {
        &self.key_gauss
    }

    pub fn noise_gaussian(&self) -> &DiscreteGaussian {
        &self.noise
    }

    /// `k_amp` fresh encryptions of `mu`.
    pub fn encrypt_word<R: Rng + ?Sized>(&self, a: &ModqMatrix, mu: u8, rng: &mut R) -> (AmpWord, AmpWitness) {
        let (cs, ws) = (0..self.params.k_amp)
            .map(|_| lwe_encrypt(&self.params, a, &self.noise, mu, rng))
            .unzip();
        (AmpWord(cs), AmpWitness(ws))
    }

    /// Per-component decryption.
    pub fn decrypt_word(&self, a: &ModqMatrix, td: &Trapdoor, word: &AmpWord) -> Vec<Option<u8>> {
        word.0.iter().map(|c| lwe_decrypt(&self.params, td, a, c)).collect()
    }

    /// Whether `v` (or `v - Encode(1)`) lies within `2 B''` of the lattice
    /// `A Z_q^n`, i.e. could be the sum of two ciphertexts that decrypt.
    pub fn component_decomposable(&self, a: &ModqMatrix, td: &Trapdoor, v: &ModqVector) -> bool {
        let p = &self.params;
        let radius = self.decomposition_bound();
        gadget_invert(p, td, a, v, &radius).is_some()
            || gadget_invert(p, td, a, &v.sub(&encode_bit(p, 1), p.q), &radius).is_some()
    }

    pub fn decomposition_bound(&self) -> SquaredBound {
        self.params.b_dec().scaled(2)
    }

    fn encode_vectors(&self, vs: &[ModqVector]) -> Vec<u8> {
        let mut out = self.params.digest().to_vec();
        for v in vs {
            v.write_le(self.params.entry_bytes(), &mut out);
        }
        out
    }
}

impl SphfWg for LweSphf {
    const TAG: u8 = 2;
    const NAME: &'static str = "lwe";

    type Sigma = ModqMatrix;
    type Rho = AmpWord;
    type SigmaTrapdoor = Trapdoor;
    type Word = AmpWord;
    type Witness = AmpWitness;
    type HashKey = FullHashKey;
    type ProjKey = FullProjKey;
    type HashValue = MaskBytes;

    fn params_digest(&self) -> [u8; 16] {
        self.params.digest()
    }

    fn sample_sigma<R: Rng + CryptoRng>(&self, mode: SigmaMode, rng: &mut R) -> (ModqMatrix, Option<Trapdoor>) {
        let p = &self.params;
        match mode {
            SigmaMode::S0 => (ModqMatrix::uniform(p.m, p.n, p.q, rng), None),
            SigmaMode::S1 => {
                let (td, a0) = trapgen(p, rng);
                (tagged_matrix(p, &a0), Some(td))
            }
        }
    }

    fn sample_rho<R: Rng + CryptoRng>(
        &self,
        a: &ModqMatrix,
        mode: RhoMode,
        rng: &mut R,
    ) -> (AmpWord, Option<RhoTrapdoor<AmpWord, AmpWitness>>) {
        let p = &self.params;
        let sum = |x: &AmpWord, y: &AmpWord| AmpWord(x.0.iter().zip(&y.0).map(|(u, v)| u.add(v, p.q)).collect());
        match mode {
            RhoMode::R0 => (
                AmpWord((0..p.k_amp).map(|_| ModqVector::uniform(p.m, p.q, rng)).collect()),
                None,
            ),
            RhoMode::R1 => {
                let (x, w) = self.encrypt_word(a, 0, rng);
                let (x_prime, w_prime) = self.encrypt_word(a, 0, rng);
                (sum(&x, &x_prime), Some(RhoTrapdoor::Witnessed { x, x_prime, w, w_prime }))
            }
            RhoMode::R1Prime => {
                let (x, _) = self.encrypt_word(a, 1, rng);
                let (x_prime, _) = self.encrypt_word(a, 1, rng);
                (sum(&x, &x_prime), Some(RhoTrapdoor::Unwitnessed { x, x_prime }))
            }
        }
    }

    fn hash_kg<R: Rng + CryptoRng>(&self, rng: &mut R) -> FullHashKey {
        full_hash_kg(&self.params, rng)
    }

    fn proj_kg<R: Rng + CryptoRng>(&self, a: &ModqMatrix, hk: &FullHashKey, word: &AmpWord, rng: &mut R) -> FullProjKey {
        full_proj_kg(&self.params, a, &self.key_gauss, hk, word, rng)
    }

    fn hash<R: Rng + CryptoRng>(&self, hk: &FullHashKey, word: &AmpWord, _rng: &mut R) -> MaskBytes {
        full_hash(hk, word)
    }

    fn proj_hash<R: Rng + CryptoRng>(&self, hp: &FullProjKey, _word: &AmpWord, w: &AmpWitness, rng: &mut R) -> MaskBytes {
        full_proj_hash(&self.params, hp, w, rng)
    }

    fn wordgen_l<R: Rng + CryptoRng>(&self, a: &ModqMatrix, rng: &mut R) -> (AmpWord, AmpWitness) {
        self.encrypt_word(a, 0, rng)
    }

    fn wordgen_x<R: Rng + CryptoRng>(&self, rng: &mut R) -> AmpWord {
        let p = &self.params;
        AmpWord((0..p.k_amp).map(|_| ModqVector::uniform(p.m, p.q, rng)).collect())
    }

    fn wordtest(&self, a: &ModqMatrix, td: &Trapdoor, word: &AmpWord) -> bool {
        word.0
            .iter()
            .any(|c| lwe_decrypt(&self.params, td, a, c) != Some(0))
    }

    fn complement(&self, rho: &AmpWord, word: &AmpWord) -> AmpWord {
        AmpWord(rho.0.iter().zip(&word.0).map(|(r, c)| r.sub(c, self.params.q)).collect())
    }

    fn check_witness(&self, a: &ModqMatrix, word: &AmpWord, w: &AmpWitness) -> bool {
        word.0.len() == self.params.k_amp
            && w.0.len() == word.0.len()
            && word.0.iter().zip(&w.0).all(|(c, wj)| check_encryption(&self.params, a, c, 0, wj))
    }

    fn check_sigma_trapdoor(&self, a: &ModqMatrix, td: &Trapdoor) -> bool {
        td.shape() == (self.params.n * self.params.width, self.params.m_bar)
            && td.apply_matrix(a, self.params.q) == gadget_matrix(&self.params)
    }

    fn to_mask(&self, value: &MaskBytes, len: usize) -> Result<MaskBytes> {
        if value.len() != len {
            return Err(Error::LengthMismatch { left: len, right: value.len() });
        }
        Ok(value.clone())
    }

    fn fixed_mask_len(&self) -> Option<usize> {
        Some(self.params.mask_bytes())
    }

    fn encode_sigma(&self, a: &ModqMatrix) -> Vec<u8> {
        let mut out = self.params.digest().to_vec();
        a.write_le(self.params.entry_bytes(), &mut out);
        out
    }

    fn encode_rho(&self, rho: &AmpWord) -> Vec<u8> {
        self.encode_vectors(&rho.0)
    }

    fn encode_word(&self, word: &AmpWord) -> Vec<u8> {
        self.encode_vectors(&word.0)
    }

    fn decode_word(&self, bytes: &[u8]) -> Result<AmpWord> {
        let p = &self.params;
        let chunk = p.m * p.entry_bytes();
        if bytes.len() != 16 + p.k_amp * chunk {
            return Err(decode_err(format!(
                "lwe word must be {} bytes, got {}",
                16 + p.k_amp * chunk,
                bytes.len()
            )));
        }
        if bytes[..16] != p.digest() {
            return Err(decode_err("parameter digest mismatch"));
        }
        bytes[16..]
            .chunks(chunk)
            .map(|c| ModqVector::read_le(c, p.m, p.entry_bytes(), p.q))
            .collect::<Result<Vec<_>>>()
            .map(AmpWord)
    }

    fn encode_proj_key(&self, hp: &FullProjKey) -> Vec<u8> {
        hp.encode(&self.params)
    }

    fn decode_proj_key(&self, bytes: &[u8]) -> Result<FullProjKey> {
        FullProjKey::decode(&self.params, bytes)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sphf::{check_crs_consistency, Crs};
    use rand::SeedableRng;
    use rand_chacha::ChaCha20Rng;

    fn crs(inst: &LweSphf, sm: SigmaMode, rm: RhoMode, rng: &mut ChaCha20Rng) -> Crs<LweSphf> {
        let (sigma, td_sigma) = inst.sample_sigma(sm, rng);
        let (rho, td_rho) = inst.sample_rho(&sigma, rm, rng);
        Crs { sigma, rho, sigma_mode: sm, rho_mode: rm, td_sigma, td_rho }
    }

    #[test]
    fn crs_modes_are_consistent() {
        let inst = LweSphf::preset("test").unwrap();
        let mut rng = ChaCha20Rng::seed_from_u64(1);
        for sm in [SigmaMode::S0, SigmaMode::S1] {
            for rm in [RhoMode::R0, RhoMode::R1, RhoMode::R1Prime] {
                let c = crs(&inst, sm, rm, &mut rng);
                assert!(check_crs_consistency(&inst, &c), "{sm:?} {rm:?}");
            }
        }
    }

    #[test]
    fn r1_components_split_exactly() {
        let inst = LweSphf::preset("toy").unwrap();
        let mut rng = ChaCha20Rng::seed_from_u64(2);
        let c = crs(&inst, SigmaMode::S1, RhoMode::R1, &mut rng);
        let Some(RhoTrapdoor::Witnessed { x, x_prime, w, w_prime }) = &c.td_rho else {
            panic!("R1 carries witnesses")
        };
        let q = inst.params().q;
        for j in 0..inst.params().k_amp {
            let rest = c.rho.0[j].sub(&x.0[j], q).sub(&x_prime.0[j], q);
            assert!(rest.0.iter().all(|&v| v == 0));
        }
        let b = inst.params().b().max_norm2();
        for wit in w.0.iter().chain(&w_prime.0) {
            assert!(super::super::zq::norm2(&wit.e) <= b);
        }
    }

    #[test]
    fn r0_and_r1_moments_match() {
        let inst = LweSphf::preset("test").unwrap();
        let mut rng = ChaCha20Rng::seed_from_u64(3);
        let (a, _) = inst.sample_sigma(SigmaMode::S1, &mut rng);
        let q = inst.params().q as f64;
        let stats = |v: &[u64]| {
            let xs: Vec<f64> = v.iter().map(|&x| x as f64 / q).collect();
            let mean = xs.iter().sum::<f64>() / xs.len() as f64;
            let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / xs.len() as f64;
            (mean, var)
        };
        let (r0, _) = inst.sample_rho(&a, RhoMode::R0, &mut rng);
        let (r1, _) = inst.sample_rho(&a, RhoMode::R1, &mut rng);
        let all = |w: &AmpWord| w.0.iter().flat_map(|v| v.0.clone()).collect::<Vec<_>>();
        let (m0, v0) = stats(&all(&r0));
        let (m1, v1) = stats(&all(&r1));
        // Uniform on [0, 1): mean 1/2, variance 1/12; n = 1984 samples each.
        for (m, v) in [(m0, v0), (m1, v1)] {
            assert!((m - 0.5).abs() < 0.03, "mean {m}");
            assert!((v - 1.0 / 12.0).abs() < 0.01, "variance {v}");
        }
    }

    #[test]
    fn wordtest_and_complement() {
        let inst = LweSphf::preset("test").unwrap();
        let mut rng = ChaCha20Rng::seed_from_u64(4);
        let c = crs(&inst, SigmaMode::S1, RhoMode::R0, &mut rng);
        let td = c.td_sigma.as_ref().unwrap();
        let mut complement_in_l_prime = 0;
        for _ in 0..1000 {
            let (x, w) = inst.wordgen_l(&c.sigma, &mut rng);
            assert!(inst.check_witness(&c.sigma, &x, &w));
            assert!(!inst.wordtest(&c.sigma, td, &x));
            let x_prime = inst.complement(&c.rho, &x);
            assert_eq!(inst.complement(&c.rho, &x_prime), x);
            complement_in_l_prime += inst.wordtest(&c.sigma, td, &x_prime) as usize;
        }
        assert!(complement_in_l_prime >= 999);
    }

    #[test]
    fn contract_on_honest_words() {
        let inst = LweSphf::preset("toy").unwrap();
        let mut rng = ChaCha20Rng::seed_from_u64(5);
        let (a, _) = inst.sample_sigma(SigmaMode::S0, &mut rng);
        let mut ok = 0;
        for _ in 0..50 {
            let (x, w) = inst.wordgen_l(&a, &mut rng);
            let hk = inst.hash_kg(&mut rng);
            let hp = inst.proj_kg(&a, &hk, &x, &mut rng);
            ok += (inst.hash(&hk, &x, &mut rng) == inst.proj_hash(&hp, &x, &w, &mut rng)) as usize;
        }
        // Toy repetition factor 31: per-run failure about 2%.
        assert!(ok >= 45, "{ok}/50");
    }

    #[test]
    fn mask_length_is_fixed() {
        let inst = LweSphf::preset("test").unwrap();
        assert_eq!(inst.fixed_mask_len(), Some(2));
        let k = MaskBytes::new(vec![1, 2]);
        assert_eq!(inst.to_mask(&k, 2).unwrap(), k);
        assert!(inst.to_mask(&k, 3).is_err());
    }

    #[test]
    fn word_encoding() {
        let inst = LweSphf::preset("toy").unwrap();
        let mut rng = ChaCha20Rng::seed_from_u64(6);
        let x = inst.wordgen_x(&mut rng);
        let bytes = inst.encode_word(&x);
        assert_eq!(bytes.len(), 16 + 2 * 224 * 2);
        assert_eq!(inst.decode_word(&bytes).unwrap(), x);
        let other = LweSphf::preset("test").unwrap();
        assert!(other.decode_word(&bytes).is_err());
        let mut bad = bytes.clone();
        bad[16] = 0xFF;
        bad[17] = 0xFF;
        assert!(inst.decode_word(&bad).is_err());
    }

    #[test]
    fn random_components_are_rarely_decomposable() {
        let inst = LweSphf::preset("test").unwrap();
        let mut rng = ChaCha20Rng::seed_from_u64(7);
        let (a, td) = inst.sample_sigma(SigmaMode::S1, &mut rng);
        let td = td.unwrap();
        let hits = (0..200)
            .filter(|_| inst.component_decomposable(&a, &td, &ModqVector::uniform(inst.params().m, inst.params().q, &mut rng)))
            .count();
        assert_eq!(hits, 0);
        let (r1, _) = inst.sample_rho(&a, RhoMode::R1, &mut rng);
        assert!(r1.0.iter().all(|v| inst.component_decomposable(&a, &td, v)));
    }
}
