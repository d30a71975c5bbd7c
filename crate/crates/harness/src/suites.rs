//! Monte Carlo estimators. Every trial draws from its own ChaCha20 stream
//! `(seed, index)`; trials fan out over rayon and results are reduced in
//! index order, so a report depends on the seed alone.

use std::time::Instant;

use gzot_core::dh::{eg_decrypt, DhSphf};
use gzot_core::lwe::bit_sphf::{bit_hash, bit_hash_kg, bit_proj_hash, bit_proj_kg};
use gzot_core::lwe::encryption::{encode_bit, lwe_encrypt, sample_noise};
use gzot_core::lwe::trapdoor::{gadget_invert, gadget_matrix, tagged_matrix, trapgen};
use gzot_core::lwe::zq::ModqVector;
use gzot_core::lwe::{LweParams, LweSphf};
use gzot_core::ot::{
    derive_crs, extract_choice, extract_messages, receiver_init, sender_respond, simulate_honest_transcript,
    trapdoor_flow1, ChoiceOutcome, Flow1, IdealMsg, IdealOt, OtContext, SessionId,
};
use gzot_core::{Crs, MaskBytes, RhoMode, SigmaMode, SphfWg};
use rand::Rng;
use rand_chacha::ChaCha20Rng;
use rayon::prelude::*;
use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::config::{RunConfig, WordSource};
use crate::error::{HarnessError, Result};
use crate::report::TrialReport;
use crate::runner::{message_len, AnyInst};
use crate::with_inst;

pub const SUITES: &[&str] = &[
    "bit-correctness",
    "full-correctness",
    "smoothness-bias",
    "dh-smoothness-identity",
    "dh-decomposition",
    "lwe-half-decomposition",
    "kfold",
    "extraction",
    "message-extraction",
    "ideal-vs-real",
    "transcript-histogram",
    "algebraic-invariants",
];

pub fn trial_rng(seed: u64, index: usize) -> ChaCha20Rng {
    let mut rng = crate::runner::party_rng(seed, 0);
    rng.set_stream(1 << 32 | index as u64);
    rng
}

/// Runs `f` for each trial index and returns the results in index order.
pub fn par_trials<T, F>(trials: usize, seed: u64, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize, &mut ChaCha20Rng) -> T + Sync + Send,
{
    (0..trials)
        .into_par_iter()
        .map(|i| f(i, &mut trial_rng(seed, i)))
        .collect()
}

fn count(xs: &[bool]) -> u64 {
    xs.iter().filter(|&&x| x).count() as u64
}

fn only<'a, T>(what: &str, inst: Option<&'a T>) -> Result<&'a T> {
    inst.ok_or_else(|| HarnessError::Config(format!("suite needs the {what} instantiation")))
}

/// Runs suite `name` under `cfg` and stamps the wall time.
pub fn estimate(name: &str, cfg: &RunConfig) -> Result<TrialReport> {
    let start = Instant::now();
    let any = AnyInst::load(cfg.inst, &cfg.preset)?;
    let (dh, lwe) = match &any {
        AnyInst::Dh(d) => (Some(d), None),
        AnyInst::Lwe(l) => (None, Some(l)),
    };
    let mut report = match name {
        "bit-correctness" => bit_correctness(only("lwe", lwe)?, cfg),
        "full-correctness" => with_inst!(&any, i => full_correctness(i, cfg))?,
        "smoothness-bias" => with_inst!(&any, i => smoothness_bias(i, cfg))?,
        "dh-smoothness-identity" => dh_smoothness_identity(only("dh", dh)?, cfg),
        "dh-decomposition" => dh_decomposition(only("dh", dh)?, cfg),
        "lwe-half-decomposition" => lwe_half_decomposition(only("lwe", lwe)?, cfg),
        "kfold" => kfold(only("lwe", lwe)?, cfg),
        "extraction" => with_inst!(&any, i => extraction(i, cfg)),
        "message-extraction" => with_inst!(&any, i => message_extraction(i, cfg))?,
        "ideal-vs-real" => with_inst!(&any, i => ideal_vs_real(i, cfg))?,
        "transcript-histogram" => with_inst!(&any, i => transcript_histogram(i, cfg))?,
        "algebraic-invariants" => algebraic_invariants(cfg)?,
        other => {
            return Err(HarnessError::Config(format!(
                "unknown suite {other:?}; expected one of {}",
                SUITES.join(", ")
            )))
        }
    };
    report.wall_time_ms = start.elapsed().as_millis();
    Ok(report)
}

fn new_report<S: SphfWg>(suite: &str, cfg: &RunConfig, successes: u64, trials: u64) -> TrialReport {
    TrialReport::new(suite, S::NAME, &cfg.preset, cfg.seed, successes, trials)
}

/// Agreement of the bit hash and its projection on honest encryptions of 0.
pub fn bit_correctness(lwe: &LweSphf, cfg: &RunConfig) -> TrialReport {
    let p = lwe.params();
    let crs = derive_crs(lwe, cfg.sid, SigmaMode::S0, RhoMode::R0);
    let a = &crs.sigma;
    let hits = par_trials(cfg.trials, cfg.seed, |_, rng| {
        let (c, w) = lwe_encrypt(p, a, lwe.noise_gaussian(), 0, rng);
        let h = bit_hash_kg(p.m, lwe.key_gaussian(), rng);
        let hp = bit_proj_kg(a, &h, p.q);
        bit_hash(&h, &c, p.q, rng) == bit_proj_hash(&hp, &w.s, p.q, rng)
    });
    new_report::<LweSphf>("bit-correctness", cfg, count(&hits), cfg.trials as u64)
}

struct HonestRun {
    b: u8,
    m: [MaskBytes; 2],
    out: Option<MaskBytes>,
}

/// One honest execution on a fresh session id and CRS.
fn honest_run<S: SphfWg>(inst: &S, len: usize, rng: &mut ChaCha20Rng) -> HonestRun {
    let sid = SessionId(rng.gen());
    let crs = derive_crs(inst, sid, SigmaMode::S0, RhoMode::R0);
    let ctx = OtContext::new(inst, &crs, sid);
    let b = rng.gen_range(0..2u8);
    let m = [MaskBytes::random(len, rng), MaskBytes::random(len, rng)];
    let out = (|| {
        let (mut st, f1) = receiver_init(ctx, b, rng)?;
        let f2 = sender_respond(ctx, &m[0], &m[1], &f1, rng)?;
        st.finish(&f2, rng)
    })()
    .ok();
    HonestRun { b, m, out }
}

pub fn full_correctness<S: SphfWg + Sync>(inst: &S, cfg: &RunConfig) -> Result<TrialReport> {
    let len = message_len(inst, cfg)?;
    let runs = par_trials(cfg.trials, cfg.seed, |_, rng| honest_run(inst, len, rng));
    let hits: Vec<bool> = runs.iter().map(|r| r.out.as_ref() == Some(&r.m[r.b as usize])).collect();
    let aborted = runs.iter().filter(|r| r.out.is_none()).count();
    Ok(new_report::<S>("full-correctness", cfg, count(&hits), cfg.trials as u64).with("aborted", aborted))
}

/// Real protocol against the ideal functionality on matched inputs.
pub fn ideal_vs_real<S: SphfWg + Sync>(inst: &S, cfg: &RunConfig) -> Result<TrialReport> {
    let len = message_len(inst, cfg)?;
    let hits = par_trials(cfg.trials, cfg.seed, |i, rng| {
        let run = honest_run(inst, len, rng);
        let sid = SessionId::from_u64(i as u64);
        let mut ideal = IdealOt::new();
        ideal.step(IdealMsg::Sender { sid, m0: run.m[0].clone(), m1: run.m[1].clone() });
        ideal.step(IdealMsg::Receiver { sid, b: run.b });
        let expected = ideal.step(IdealMsg::Answer { sid });
        expected.is_some() && run.out == expected
    });
    Ok(new_report::<S>("ideal-vs-real", cfg, count(&hits), cfg.trials as u64))
}

/// Monobit frequency of the mask on words outside `L` (the unchosen word
/// of an honest receiver with choice `cfg.b`, or uniform words). Words
/// that the sigma trapdoor does not place in `L'` are counted, not hashed.
/// The mask depends only on `hk` and the word, so no projection key is built.
pub fn smoothness_bias<S: SphfWg + Sync>(inst: &S, cfg: &RunConfig) -> Result<TrialReport>
where
    S::Sigma: Sync,
    S::Rho: Sync,
    S::SigmaTrapdoor: Sync,
    S::Word: Sync,
    S::Witness: Sync,
{
    let len = message_len(inst, cfg)?;
    let crs = derive_crs(inst, cfg.sid, SigmaMode::S1, RhoMode::R0);
    let td = crs.td_sigma.as_ref().expect("S1 carries a trapdoor");
    let ctx = OtContext::new(inst, &crs, cfg.sid);
    let per_run = par_trials(cfg.trials, cfg.seed, |_, rng| {
        let x = match cfg.words {
            WordSource::Unchosen => {
                let (_, f1) = receiver_init(ctx, cfg.b, rng).expect("honest first flow");
                let x0 = inst.decode_word(&f1.x0).expect("honest encoding");
                let x1 = inst.complement(&crs.rho, &x0);
                if cfg.b == 0 { x1 } else { x0 }
            }
            WordSource::Uniform => inst.wordgen_x(rng),
        };
        if !inst.wordtest(&crs.sigma, td, &x) {
            return None;
        }
        let hk = inst.hash_kg(rng);
        let mask = inst.to_mask(&inst.hash(&hk, &x, rng), len).expect("valid length");
        Some(mask.bits().filter(|&b| b).count() as u64)
    });
    let grey = per_run.iter().filter(|r| r.is_none()).count();
    let hashed = per_run.len() - grey;
    let ones: u64 = per_run.iter().flatten().sum();
    let bits = (hashed * len * 8) as u64;
    let r = new_report::<S>("smoothness-bias", cfg, ones, bits);
    let bias = (r.rate - 0.5).abs();
    Ok(r.with("runs", cfg.trials)
        .with("outside_l_prime", grey)
        .with("bias", bias)
        .with("words", format!("{:?}", cfg.words).to_lowercase()))
}

/// `Hash(hk, x) = ProjHash(hp, x, r') * g^(r'' beta)` for the unchosen word
/// `x = (g^r', h^r' g^r'')`, with the CRS exponents known to the harness.
pub fn dh_smoothness_identity(dh: &DhSphf, cfg: &RunConfig) -> TrialReport {
    let grp = dh.group();
    let hits = par_trials(cfg.trials, cfg.seed, |_, rng| {
        let (h, sk) = dh.sample_sigma(SigmaMode::S1, rng);
        let sk = sk.expect("S1 carries a trapdoor");
        let (a, c) = (grp.random_scalar(rng), grp.random_scalar(rng));
        let rho = gzot_core::dh::DhCiphertext { c0: grp.g_exp(&a), c1: grp.g_exp(&c) };
        let (xb, r) = dh.wordgen_l(&h, rng);
        let x = dh.complement(&rho, &xb);
        let r1 = grp.scalar_sub(&a, &r);
        let r2 = grp.scalar_sub(&c, &((&sk * &a) % grp.q()));
        let hk = dh.hash_kg(rng);
        let hp = dh.proj_kg(&h, &hk, &x, rng);
        let lhs = dh.hash(&hk, &x, rng);
        let projected = dh.proj_hash(&hp, &x, &r1, rng);
        let factor = grp.g_exp(&((&r2 * &hk.beta) % grp.q()));
        dh.check_witness(&h, &xb, &r) && lhs == grp.mul(&projected, &factor)
    });
    new_report::<DhSphf>("dh-smoothness-identity", cfg, count(&hits), cfg.trials as u64)
}

/// Rate at which an honestly sampled rho decrypts to the identity, i.e.
/// splits into two words of `L`.
pub fn dh_decomposition(dh: &DhSphf, cfg: &RunConfig) -> TrialReport {
    let grp = dh.group();
    let crs = derive_crs(dh, cfg.sid, SigmaMode::S1, RhoMode::R0);
    let sk = crs.td_sigma.as_ref().expect("S1 carries a trapdoor");
    let hits = par_trials(cfg.trials, cfg.seed, |_, rng| {
        let (rho, _) = dh.sample_rho(&crs.sigma, RhoMode::R0, rng);
        eg_decrypt(grp, sk, &rho).is_identity()
    });
    let q: f64 = grp.q().to_string().parse().expect("decimal");
    new_report::<DhSphf>("dh-decomposition", cfg, count(&hits), cfg.trials as u64)
        .with("bound", 2.0 / q)
        .with("oracle", 1.0 / q)
}

/// Uniform component vectors within `2 B''` of a decryptable point.
pub fn lwe_half_decomposition(lwe: &LweSphf, cfg: &RunConfig) -> TrialReport {
    let p = lwe.params();
    let crs = derive_crs(lwe, cfg.sid, SigmaMode::S1, RhoMode::R0);
    let td = crs.td_sigma.as_ref().expect("S1 carries a trapdoor");
    let hits = par_trials(cfg.trials, cfg.seed, |_, rng| {
        let v = ModqVector::uniform(p.m, p.q, rng);
        lwe.component_decomposable(&crs.sigma, td, &v)
    });
    new_report::<LweSphf>("lwe-half-decomposition", cfg, count(&hits), cfg.trials as u64).with("bound", 0.5)
}

/// k-fold decomposition against the per-slot rate. Each slot is, with
/// probability `cfg.mix`, a sum of two honest encryptions (decomposable by
/// construction) and otherwise uniform; decomposability is always decided
/// by trapdoor inversion.
pub fn kfold(lwe: &LweSphf, cfg: &RunConfig) -> TrialReport {
    let p = lwe.params();
    let k = p.k_amp;
    let crs = derive_crs(lwe, cfg.sid, SigmaMode::S1, RhoMode::R0);
    let (a, td) = (&crs.sigma, crs.td_sigma.as_ref().expect("S1 carries a trapdoor"));
    let slots = par_trials(cfg.trials, cfg.seed, |_, rng| {
        (0..k)
            .map(|_| {
                let v = if rng.gen_bool(cfg.mix) {
                    let (c1, _) = lwe_encrypt(p, a, lwe.noise_gaussian(), rng.gen_range(0..2), rng);
                    let (c2, _) = lwe_encrypt(p, a, lwe.noise_gaussian(), rng.gen_range(0..2), rng);
                    c1.add(&c2, p.q)
                } else {
                    ModqVector::uniform(p.m, p.q, rng)
                };
                lwe.component_decomposable(a, td, &v)
            })
            .collect::<Vec<bool>>()
    });
    let n = cfg.trials as f64;
    let per_slot = slots.iter().flatten().filter(|&&x| x).count() as f64 / (n * k as f64);
    let all: Vec<bool> = slots.iter().map(|s| s.iter().all(|&x| x)).collect();
    let report = new_report::<LweSphf>("kfold", cfg, count(&all), cfg.trials as u64);
    let predicted = per_slot.powi(k as i32);
    // Sampling error of the k-fold rate plus the delta-method error of p^k.
    let var = predicted * (1.0 - predicted) / n
        + (k as f64 * per_slot.powi(k as i32 - 1)).powi(2) * per_slot * (1.0 - per_slot) / (n * k as f64);
    let tolerance = 3.0 * var.sqrt() + 1.0 / n;
    let consistent = (report.rate - predicted).abs() <= tolerance;
    report
        .with("k", k)
        .with("mix", cfg.mix)
        .with("per_slot_rate", per_slot)
        .with("predicted", predicted)
        .with("tolerance", tolerance)
        .with("consistent", consistent)
}

/// Choice extraction on honest first flows; the abort rate on uniform
/// first flows is recorded alongside.
pub fn extraction<S: SphfWg + Sync>(inst: &S, cfg: &RunConfig) -> TrialReport
where
    S::Sigma: Sync,
    S::Rho: Sync,
    S::SigmaTrapdoor: Sync,
    S::Word: Sync,
    S::Witness: Sync,
{
    let crs = derive_crs(inst, cfg.sid, SigmaMode::S1, RhoMode::R0);
    let ctx = OtContext::new(inst, &crs, cfg.sid);
    let outcomes = par_trials(cfg.trials, cfg.seed, |_, rng| {
        let b = rng.gen_range(0..2u8);
        let (_, f1) = receiver_init(ctx, b, rng).expect("honest first flow");
        let honest = extract_choice(inst, &crs, &f1).expect("trapdoor present");
        let uniform = Flow1 { sid: cfg.sid, tag: S::TAG, x0: inst.encode_word(&inst.wordgen_x(rng)) };
        let adversarial = extract_choice(inst, &crs, &uniform).expect("trapdoor present");
        (b, honest, adversarial)
    });
    let hits: Vec<bool> = outcomes.iter().map(|(b, o, _)| o.bit() == Some(*b)).collect();
    let tally = |f: &dyn Fn(&ChoiceOutcome) -> bool| outcomes.iter().filter(|(_, o, _)| f(o)).count();
    let uniform_aborts = outcomes.iter().filter(|(_, _, u)| *u == ChoiceOutcome::Abort).count();
    new_report::<S>("extraction", cfg, count(&hits), cfg.trials as u64)
        .with("ambiguous", tally(&|o| *o == ChoiceOutcome::Ambiguous))
        .with("aborted", tally(&|o| *o == ChoiceOutcome::Abort))
        .with("uniform_abort_rate", uniform_aborts as f64 / cfg.trials.max(1) as f64)
}

/// Both messages opened through a witnessed rho trapdoor.
pub fn message_extraction<S: SphfWg + Sync>(inst: &S, cfg: &RunConfig) -> Result<TrialReport> {
    let len = message_len(inst, cfg)?;
    let hits = par_trials(cfg.trials, cfg.seed, |_, rng| {
        let sid = SessionId(rng.gen());
        let crs = derive_crs(inst, sid, SigmaMode::S0, RhoMode::R1);
        let m0 = MaskBytes::random(len, rng);
        let m1 = MaskBytes::random(len, rng);
        (|| {
            let f1 = trapdoor_flow1(inst, &crs, sid)?;
            let f2 = sender_respond(OtContext::new(inst, &crs, sid), &m0, &m1, &f1, rng)?;
            extract_messages(inst, &crs, &f1, &f2, rng)
        })()
        .is_ok_and(|got| got == (m0, m1))
    });
    Ok(new_report::<S>("message-extraction", cfg, count(&hits), cfg.trials as u64))
}

fn histogram(bytes: &[u8], into: &mut [u64; 256]) {
    for &b in bytes {
        into[b as usize] += 1;
    }
}

/// Two-sample chi-square homogeneity statistic over the nonempty bins.
pub fn chi_square_homogeneity(a: &[u64; 256], b: &[u64; 256]) -> (f64, usize, f64) {
    let (na, nb) = (a.iter().sum::<u64>() as f64, b.iter().sum::<u64>() as f64);
    let total = na + nb;
    let mut stat = 0.0;
    let mut bins = 0usize;
    for (&x, &y) in a.iter().zip(b) {
        let col = (x + y) as f64;
        if col == 0.0 {
            continue;
        }
        bins += 1;
        let (ea, eb) = (na * col / total, nb * col / total);
        stat += (x as f64 - ea).powi(2) / ea + (y as f64 - eb).powi(2) / eb;
    }
    let dof = bins.saturating_sub(1).max(1);
    let p = 1.0 - ChiSquared::new(dof as f64).expect("positive dof").cdf(stat);
    (stat, dof, p)
}

/// Byte histograms and lengths of simulated versus real transcripts.
/// Successes count trials whose simulated flows parse and match the real
/// flows in length.
pub fn transcript_histogram<S: SphfWg + Sync>(inst: &S, cfg: &RunConfig) -> Result<TrialReport> {
    let len = message_len(inst, cfg)?;
    let pairs = par_trials(cfg.trials, cfg.seed, |_, rng| {
        let sid = SessionId(rng.gen());
        let sim_crs: Crs<S> = derive_crs(inst, sid, SigmaMode::S0, RhoMode::R1Prime);
        let (s1, s2) = simulate_honest_transcript(inst, &sim_crs, sid, len, rng).expect("R1' trapdoor");
        let crs = derive_crs(inst, sid, SigmaMode::S0, RhoMode::R0);
        let ctx = OtContext::new(inst, &crs, sid);
        let (m0, m1) = (MaskBytes::random(len, rng), MaskBytes::random(len, rng));
        let (_, r1) = receiver_init(ctx, rng.gen_range(0..2), rng).expect("honest first flow");
        let r2 = sender_respond(ctx, &m0, &m1, &r1, rng).expect("honest second flow");
        let sim = [s1.encode(), s2.encode()].concat();
        let real = [r1.encode(), r2.encode()].concat();
        let parses = gzot_core::ot::Flow1::decode(&s1.encode()).is_ok()
            && gzot_core::ot::Flow2::decode(&s2.encode()).is_ok()
            && inst.decode_word(&s1.x0).is_ok()
            && s2.c.iter().all(|c| inst.decode_proj_key(&c.hp).is_ok());
        let same_len = s1.encode().len() == r1.encode().len() && s2.encode().len() == r2.encode().len();
        (parses && same_len, sim, real)
    });
    let (mut hs, mut hr) = ([0u64; 256], [0u64; 256]);
    for (_, s, r) in &pairs {
        histogram(s, &mut hs);
        histogram(r, &mut hr);
    }
    let (stat, dof, p_value) = chi_square_homogeneity(&hs, &hr);
    let ok: Vec<bool> = pairs.iter().map(|(ok, _, _)| *ok).collect();
    Ok(new_report::<S>("transcript-histogram", cfg, count(&ok), cfg.trials as u64)
        .with("chi_square", stat)
        .with("dof", dof)
        .with("p_value", p_value))
}

/// Exact identities; successes count checks that held.
pub fn algebraic_invariants(cfg: &RunConfig) -> Result<TrialReport> {
    let lwe = LweSphf::preset(&cfg.preset)?;
    let dh = DhSphf::preset(&cfg.preset)?;
    let p: &LweParams = lwe.params();
    let mut checks: Vec<(&str, bool)> = Vec::new();

    let trapgens = cfg.trials.clamp(1, 10);
    for ok in par_trials(trapgens, cfg.seed, |_, rng| {
        let (t, a0) = trapgen(p, rng);
        let zero = t.apply_matrix(&a0, p.q).entries().iter().all(|&x| x == 0);
        let gadget = t.apply_matrix(&tagged_matrix(p, &a0), p.q) == gadget_matrix(p);
        zero && gadget
    }) {
        checks.push(("trapgen", ok));
    }

    let lwe_crs = derive_crs(&lwe, cfg.sid, SigmaMode::S1, RhoMode::R0);
    let td = lwe_crs.td_sigma.as_ref().expect("S1 carries a trapdoor");
    let dh_crs = derive_crs(&dh, cfg.sid, SigmaMode::S0, RhoMode::R0);
    let per_trial = par_trials(cfg.trials, cfg.seed ^ 1, |_, rng| {
        let x = dh.wordgen_x(rng);
        let (rho, _) = dh.sample_rho(&dh_crs.sigma, RhoMode::R0, rng);
        let dh_inv = dh.complement(&rho, &dh.complement(&rho, &x)) == x;

        let x = lwe.wordgen_x(rng);
        let (rho, _) = lwe.sample_rho(&lwe_crs.sigma, RhoMode::R0, rng);
        let lwe_inv = lwe.complement(&rho, &lwe.complement(&rho, &x)) == x;

        let s = ModqVector::uniform(p.n, p.q, rng);
        let e = sample_noise(p, lwe.noise_gaussian(), rng);
        let y = lwe_crs.sigma.mul_vec(&s, p.q).add(&ModqVector::from_signed(&e, p.q), p.q);
        let round_trip = gadget_invert(p, td, &lwe_crs.sigma, &y, &p.b_inv()) == Some((s, e));
        [("dh-complement", dh_inv), ("lwe-complement", lwe_inv), ("gadget-round-trip", round_trip)]
    });
    checks.extend(per_trial.into_iter().flatten());

    for mu in [0u8, 1] {
        let e = encode_bit(p, mu);
        let d = e.add(&e, p.q);
        let ok = d.0[..p.m - 1].iter().all(|&x| x == 0) && d.0[p.m - 1] == mu as u64;
        checks.push(("encode-doubling", ok));
    }

    let ok: Vec<bool> = checks.iter().map(|(_, ok)| *ok).collect();
    let mut report = TrialReport::new("algebraic-invariants", "dh+lwe", &cfg.preset, cfg.seed, count(&ok), ok.len() as u64);
    for name in ["trapgen", "dh-complement", "lwe-complement", "gadget-round-trip", "encode-doubling"] {
        let (pass, total) = checks
            .iter()
            .filter(|(n, _)| *n == name)
            .fold((0, 0), |(p, t), (_, ok)| (p + *ok as u64, t + 1));
        report = report.with(&format!("{name}_failures"), total - pass).with(&format!("{name}_checks"), total);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(text: &str) -> RunConfig {
        let mut c = RunConfig::default();
        c.apply_text(text).unwrap();
        c
    }

    #[test]
    fn trials_are_deterministic_and_ordered() {
        let a = par_trials(50, 7, |i, rng| (i, rng.gen::<u64>()));
        let b = par_trials(50, 7, |i, rng| (i, rng.gen::<u64>()));
        assert_eq!(a, b);
        assert!(a.iter().enumerate().all(|(i, (j, _))| i == *j));
        assert_ne!(a[0].1, a[1].1);
        assert_ne!(par_trials(1, 8, |_, rng| rng.gen::<u64>()), par_trials(1, 7, |_, rng| rng.gen::<u64>()));
    }

    #[test]
    fn chi_square_oracle() {
        let mut a = [0u64; 256];
        let mut b = [0u64; 256];
        a[0] = 10;
        a[1] = 30;
        b[0] = 30;
        b[1] = 10;
        // 2x2 table: expected 20 everywhere, statistic 4 * 100 / 20 = 20.
        let (stat, dof, p) = chi_square_homogeneity(&a, &b);
        assert!((stat - 20.0).abs() < 1e-9);
        assert_eq!(dof, 1);
        assert!(p < 1e-4);
        let (stat, _, p) = chi_square_homogeneity(&a, &a);
        assert_eq!(stat, 0.0);
        assert!((p - 1.0).abs() < 1e-12);
    }

    #[test]
    fn small_suites_run() {
        let dh = cfg("inst = dh\npreset = toy\ntrials = 200\nseed = 3");
        assert_eq!(estimate("full-correctness", &dh).unwrap().rate, 1.0);
        assert_eq!(estimate("extraction", &dh).unwrap().rate, 1.0);
        assert_eq!(estimate("ideal-vs-real", &dh).unwrap().rate, 1.0);
        assert_eq!(estimate("dh-smoothness-identity", &dh).unwrap().rate, 1.0);
        assert_eq!(estimate("message-extraction", &dh).unwrap().rate, 1.0);
        let d = estimate("dh-decomposition", &dh).unwrap();
        assert!(d.rate <= 2.0 / 11.0, "{}", d.rate);
        assert!(estimate("bit-correctness", &dh).is_err());
        assert!(estimate("no-such-suite", &dh).is_err());

        let lwe = cfg("inst = lwe\npreset = toy\ntrials = 20\nseed = 3");
        let r = estimate("algebraic-invariants", &lwe).unwrap();
        assert_eq!(r.successes, r.trials);
        assert!(estimate("dh-decomposition", &lwe).is_err());
        let r = estimate("kfold", &lwe).unwrap();
        assert!(r.extra["consistent"].as_bool().unwrap(), "{r:?}");
    }
}
