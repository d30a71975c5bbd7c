//! The SPHF contract checked generically over both instantiations.

use gzot_core::dh::DhSphf;
use gzot_core::lwe::LweSphf;
use gzot_core::{RhoMode, SigmaMode, SphfWg};
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

/// Hash/ProjHash agreement on language words and the rate at which
/// uniform words land outside `L'`.
fn contract<S: SphfWg>(inst: &S, runs: usize, seed: u64) -> (usize, usize) {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let (sigma, td) = inst.sample_sigma(SigmaMode::S1, &mut rng);
    let td = td.unwrap();
    let mut agree = 0;
    let mut not_in_l_prime = 0;
    for _ in 0..runs {
        let (x, w) = inst.wordgen_l(&sigma, &mut rng);
        assert!(inst.check_witness(&sigma, &x, &w));
        assert!(!inst.wordtest(&sigma, &td, &x));
        let hk = inst.hash_kg(&mut rng);
        let hp = inst.proj_kg(&sigma, &hk, &x, &mut rng);
        let hp = inst.decode_proj_key(&inst.encode_proj_key(&hp)).unwrap();
        let h = inst.hash(&hk, &x, &mut rng);
        agree += (h == inst.proj_hash(&hp, &x, &w, &mut rng)) as usize;
        not_in_l_prime += !inst.wordtest(&sigma, &td, &inst.wordgen_x(&mut rng)) as usize;
    }
    (agree, not_in_l_prime)
}

#[test]
fn dh_contract() {
    let (agree, outside) = contract(&DhSphf::preset("test").unwrap(), 200, 1);
    assert_eq!(agree, 200);
    // A uniform pair encrypts the identity with probability 1/Q ~ 2^-127.
    assert_eq!(outside, 0);
}

#[test]
fn lwe_contract() {
    let (agree, outside) = contract(&LweSphf::preset("test").unwrap(), 40, 2);
    assert!(agree >= 39, "{agree}/40");
    assert_eq!(outside, 0);
}

#[test]
fn complement_pairs_with_rho() {
    let dh = DhSphf::preset("toy").unwrap();
    let lwe = LweSphf::preset("toy").unwrap();
    let mut rng = ChaCha20Rng::seed_from_u64(3);
    let (s, _) = dh.sample_sigma(SigmaMode::S0, &mut rng);
    let (r, _) = dh.sample_rho(&s, RhoMode::R0, &mut rng);
    let (s2, _) = lwe.sample_sigma(SigmaMode::S0, &mut rng);
    let (r2, _) = lwe.sample_rho(&s2, RhoMode::R0, &mut rng);
    for _ in 0..100 {
        let x = dh.wordgen_x(&mut rng);
        assert_eq!(dh.complement(&r, &dh.complement(&r, &x)), x);
        let y = lwe.wordgen_x(&mut rng);
        assert_eq!(lwe.complement(&r2, &lwe.complement(&r2, &y)), y);
    }
}
