//! Trapdoor extractors and the transcript simulator used by the
//! simulation-based security argument.
//!
//! * [`extract_choice`] reads `b` off a first flow with the sigma trapdoor.
//! * [`trapdoor_flow1`] and [`extract_messages`] let a simulator that owns
//!   a witnessed rho trapdoor open both `c_0` and `c_1`.
//! * [`simulate_honest_transcript`] produces flows from an `R1'` rho, where
//!   neither word is in `L`, on random inputs.

use rand::{CryptoRng, Rng};

use super::protocol::{Flow1, Flow2, OtContext, SenderState};
use super::SessionId;
use crate::error::{Error, Result};
use crate::mask::MaskBytes;
use crate::sphf::{Crs, RhoTrapdoor, SphfWg};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ChoiceOutcome {
    /// Exactly one word is outside `L'`; that index is the choice.
    Clean(u8),
    /// Both words test into `L'`; the extractor settles on `b = 0`.
    Ambiguous,
    /// Neither word is in `L'`: a decomposition of rho was exhibited.
    Abort,
}

impl ChoiceOutcome {
    pub fn bit(self) -> Option<u8> {
        match self {
            ChoiceOutcome::Clean(b) => Some(b),
            ChoiceOutcome::Ambiguous => Some(0),
            ChoiceOutcome::Abort => None,
        }
    }
}

/// `t_i = wordtest(x_i)`; the choice is the index with `t_b = 0`.
pub fn extract_choice<S: SphfWg>(inst: &S, crs: &Crs<S>, flow1: &Flow1) -> Result<ChoiceOutcome> {
    let td = crs.td_sigma.as_ref().ok_or(Error::MissingTrapdoor("sigma"))?;
    let x0 = inst.decode_word(&flow1.x0)?;
    let x1 = inst.complement(&crs.rho, &x0);
    let t0 = inst.wordtest(&crs.sigma, td, &x0);
    let t1 = inst.wordtest(&crs.sigma, td, &x1);
    Ok(match (t0, t1) {
        (false, false) => ChoiceOutcome::Abort,
        (true, true) => ChoiceOutcome::Ambiguous,
        (false, true) => ChoiceOutcome::Clean(0),
        (true, false) => ChoiceOutcome::Clean(1),
    })
}

type WitnessedPair<'a, S> = (
    &'a <S as SphfWg>::Word,
    &'a <S as SphfWg>::Word,
    &'a <S as SphfWg>::Witness,
    &'a <S as SphfWg>::Witness,
);

fn witnessed<S: SphfWg>(crs: &Crs<S>) -> Result<WitnessedPair<'_, S>> {
    match &crs.td_rho {
        Some(RhoTrapdoor::Witnessed { x, x_prime, w, w_prime }) => Ok((x, x_prime, w, w_prime)),
        Some(RhoTrapdoor::Unwitnessed { .. }) => Err(Error::Mode("rho trapdoor carries no witnesses")),
        None => Err(Error::MissingTrapdoor("rho")),
    }
}

/// First flow sent by a simulator holding a witnessed rho trapdoor:
/// `x_0 = x`, so both `x_0` and `x_1 = x'` have known witnesses.
pub fn trapdoor_flow1<S: SphfWg>(inst: &S, crs: &Crs<S>, sid: SessionId) -> Result<Flow1> {
    let (x, _, _, _) = witnessed(crs)?;
    Ok(Flow1 {
        sid,
        tag: S::TAG,
        x0: inst.encode_word(x),
    })
}

/// Opens both pairs of `flow2`. `flow1` must be the trapdoor flow.
pub fn extract_messages<S: SphfWg, R: Rng + CryptoRng>(
    inst: &S,
    crs: &Crs<S>,
    flow1: &Flow1,
    flow2: &Flow2,
    rng: &mut R,
) -> Result<(MaskBytes, MaskBytes)> {
    let (x, x_prime, w, w_prime) = witnessed(crs)?;
    if inst.decode_word(&flow1.x0)? != *x {
        return Err(Error::TrapdoorMismatch);
    }
    let mut open = |i: usize, word: &S::Word, wit: &S::Witness| -> Result<MaskBytes> {
        let c = &flow2.c[i];
        let hp = inst.decode_proj_key(&c.hp)?;
        let h = inst.proj_hash(&hp, word, wit, rng);
        inst.to_mask(&h, c.masked.len())?.xor(&c.masked)
    };
    let m0 = open(0, x, w)?;
    let m1 = open(1, x_prime, w_prime)?;
    Ok((m0, m1))
}

/// Flows on random `b`, `m_0`, `m_1` from an `R1'` CRS. `msg_len` is
/// ignored when the instantiation fixes the mask length.
pub fn simulate_honest_transcript<S: SphfWg, R: Rng + CryptoRng>(
    inst: &S,
    crs: &Crs<S>,
    sid: SessionId,
    msg_len: usize,
    rng: &mut R,
) -> Result<(Flow1, Flow2)> {
    let (x, x_prime) = match &crs.td_rho {
        Some(RhoTrapdoor::Unwitnessed { x, x_prime }) => (x, x_prime),
        Some(RhoTrapdoor::Witnessed { .. }) => return Err(Error::Mode("simulation needs an R1' rho")),
        None => return Err(Error::MissingTrapdoor("rho")),
    };
    let b: bool = rng.gen();
    // complement is an involution, so either word can stand in as x_0.
    let x0 = if b { x_prime } else { x };
    let flow1 = Flow1 {
        sid,
        tag: S::TAG,
        x0: inst.encode_word(x0),
    };
    let len = inst.fixed_mask_len().unwrap_or(msg_len);
    let m0 = MaskBytes::random(len, rng);
    let m1 = MaskBytes::random(len, rng);
    let flow2 = SenderState::new(OtContext::new(inst, crs, sid), m0, m1)?.respond(&flow1, rng)?;
    Ok((flow1, flow2))
}
