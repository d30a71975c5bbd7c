//! Receiver and sender state machines and the flow codecs.

use rand::{CryptoRng, Rng};

use super::wire::{put_field, take_field, Frame, MsgType};
use super::{Phase, SessionId};
use crate::error::{decode_err, Error, Result};
use crate::mask::MaskBytes;
use crate::sphf::{Crs, SphfWg};

/// Everything both parties agree on before the first flow.
pub struct OtContext<'a, S: SphfWg> {
    pub inst: &'a S,
    pub crs: &'a Crs<S>,
    pub sid: SessionId,
}

impl<'a, S: SphfWg> OtContext<'a, S> {
    pub fn new(inst: &'a S, crs: &'a Crs<S>, sid: SessionId) -> Self {
        Self { inst, crs, sid }
    }

    fn check_frame(&self, sid: SessionId, tag: u8) -> Result<()> {
        if tag != S::TAG {
            return Err(decode_err(format!("instantiation tag {tag}, expected {}", S::TAG)));
        }
        if sid != self.sid {
            return Err(Error::SessionMismatch);
        }
        Ok(())
    }
}

impl<S: SphfWg> Clone for OtContext<'_, S> {
    fn clone(&self) -> Self {
        *self
    }
}

impl<S: SphfWg> Copy for OtContext<'_, S> {}

/// First flow: the serialized word `x_0`, whatever the choice bit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Flow1 {
    pub sid: SessionId,
    pub tag: u8,
    pub x0: Vec<u8>,
}

/// One half of the second flow: `(H_i xor m_i, hp_i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaskedMessage {
    pub masked: MaskBytes,
    pub hp: Vec<u8>,
}

/// Second flow; `c[i]` belongs to word `x_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Flow2 {
    pub sid: SessionId,
    pub tag: u8,
    pub c: [MaskedMessage; 2],
}

impl Flow1 {
    pub fn to_frame(&self) -> Frame {
        Frame {
            msg_type: MsgType::Flow1,
            sid: self.sid,
            tag: self.tag,
            payload: self.x0.clone(),
        }
    }

    pub fn from_frame(f: Frame) -> Result<Self> {
        if f.msg_type != MsgType::Flow1 {
            return Err(decode_err("expected a Flow1 frame"));
        }
        Ok(Self {
            sid: f.sid,
            tag: f.tag,
            x0: f.payload,
        })
    }

    pub fn encode(&self) -> Vec<u8> {
        self.to_frame().encode()
    }

    pub fn decode(bytes: &[u8]) -> Result<Self> {
        Self::from_frame(Frame::decode(bytes)?)
    }
}

impl Flow2 {
    pub fn to_frame(&self) -> Frame {
        let mut payload = Vec::new();
        for c in &self.c {
            put_field(&mut payload, c.masked.as_bytes());
            put_field(&mut payload, &c.hp);
        }
        Frame {
            msg_type: MsgType::Flow2,
            sid: self.sid,
            tag: self.tag,
            payload,
        }
    }

    pub fn from_frame(f: Frame) -> Result<Self> {
        if f.msg_type != MsgType::Flow2 {
            return Err(decode_err("expected a Flow2 frame"));
        }
        let mut cur = f.payload.as_slice();
        let mut take = || -> Result<MaskedMessage> {
            let masked = MaskBytes::new(take_field(&mut cur)?.to_vec());
            let hp = take_field(&mut cur)?.to_vec();
            Ok(MaskedMessage { masked, hp })
        };
        let c = [take()?, take()?];
        if !cur.is_empty() {
            return Err(decode_err("trailing bytes after Flow2"));
        }
        Ok(Self {
            sid: f.sid,
            tag: f.tag,
            c,
        })
    }

    pub fn encode(&self) -> Vec<u8> {
        self.to_frame().encode()
    }

    pub fn decode(bytes: &[u8]) -> Result<Self> {
        Self::from_frame(Frame::decode(bytes)?)
    }
}

fn expect_phase(found: Phase, expected: Phase) -> Result<()> {
    if found == expected {
        Ok(())
    } else {
        Err(Error::Phase { expected, found })
    }
}

/// Checks that the two messages can be masked by this instantiation.
pub(crate) fn check_message_lengths<S: SphfWg>(inst: &S, m0: &MaskBytes, m1: &MaskBytes) -> Result<()> {
    if m0.len() != m1.len() {
        return Err(Error::LengthMismatch {
            left: m0.len(),
            right: m1.len(),
        });
    }
    match inst.fixed_mask_len() {
        Some(l) if l != m0.len() => Err(Error::LengthMismatch {
            left: m0.len(),
            right: l,
        }),
        _ => Ok(()),
    }
}

pub struct ReceiverState<'a, S: SphfWg> {
    ctx: OtContext<'a, S>,
    b: u8,
    word: Option<(S::Word, S::Witness)>,
    phase: Phase,
}

impl<'a, S: SphfWg> ReceiverState<'a, S> {
    pub fn new(ctx: OtContext<'a, S>, b: u8) -> Result<Self> {
        if b > 1 {
            return Err(Error::Params(format!("choice bit {b} is not 0 or 1")));
        }
        Ok(Self {
            ctx,
            b,
            word: None,
            phase: Phase::Init,
        })
    }

    pub fn choice(&self) -> u8 {
        self.b
    }

    pub fn phase(&self) -> Phase {
        self.phase
    }

    /// Samples `(x_b, w)` and emits `x_0`.
    pub fn start<R: Rng + CryptoRng>(&mut self, rng: &mut R) -> Result<Flow1> {
        expect_phase(self.phase, Phase::Init)?;
        let OtContext { inst, crs, sid } = self.ctx;
        let (xb, w) = inst.wordgen_l(&crs.sigma, rng);
        let x0 = if self.b == 0 {
            xb.clone()
        } else {
            inst.complement(&crs.rho, &xb)
        };
        self.word = Some((xb, w));
        self.phase = Phase::Sent;
        Ok(Flow1 {
            sid,
            tag: S::TAG,
            x0: inst.encode_word(&x0),
        })
    }

    /// Unmasks `c_b`. Any failure past the phase check is terminal.
    pub fn finish<R: Rng + CryptoRng>(&mut self, flow2: &Flow2, rng: &mut R) -> Result<MaskBytes> {
        expect_phase(self.phase, Phase::Sent)?;
        self.phase = Phase::Done;
        let (xb, w) = self.word.take().expect("word is set in phase Sent");
        self.ctx.check_frame(flow2.sid, flow2.tag)?;
        let inst = self.ctx.inst;
        let c = &flow2.c[self.b as usize];
        if let Some(l) = inst.fixed_mask_len() {
            if c.masked.len() != l {
                return Err(Error::LengthMismatch {
                    left: c.masked.len(),
                    right: l,
                });
            }
        }
        let hp = inst.decode_proj_key(&c.hp)?;
        let h = inst.proj_hash(&hp, &xb, &w, rng);
        inst.to_mask(&h, c.masked.len())?.xor(&c.masked)
    }
}

pub struct SenderState<'a, S: SphfWg> {
    ctx: OtContext<'a, S>,
    m: [MaskBytes; 2],
    phase: Phase,
}

impl<'a, S: SphfWg> SenderState<'a, S> {
    pub fn new(ctx: OtContext<'a, S>, m0: MaskBytes, m1: MaskBytes) -> Result<Self> {
        check_message_lengths(ctx.inst, &m0, &m1)?;
        Ok(Self {
            ctx,
            m: [m0, m1],
            phase: Phase::Init,
        })
    }

    pub fn phase(&self) -> Phase {
        self.phase
    }

    /// Answers one first flow; the sender holds no state afterwards.
    pub fn respond<R: Rng + CryptoRng>(&mut self, flow1: &Flow1, rng: &mut R) -> Result<Flow2> {
        expect_phase(self.phase, Phase::Init)?;
        self.phase = Phase::Sent;
        self.ctx.check_frame(flow1.sid, flow1.tag)?;
        let OtContext { inst, crs, sid } = self.ctx;
        let x0 = inst.decode_word(&flow1.x0)?;
        let x1 = inst.complement(&crs.rho, &x0);
        let mut mask_one = |x: &S::Word, m: &MaskBytes| -> Result<MaskedMessage> {
            let hk = inst.hash_kg(rng);
            let hp = inst.proj_kg(&crs.sigma, &hk, x, rng);
            let h = inst.hash(&hk, x, rng);
            Ok(MaskedMessage {
                masked: inst.to_mask(&h, m.len())?.xor(m)?,
                hp: inst.encode_proj_key(&hp),
            })
        };
        let c0 = mask_one(&x0, &self.m[0])?;
        let c1 = mask_one(&x1, &self.m[1])?;
        Ok(Flow2 {
            sid,
            tag: S::TAG,
            c: [c0, c1],
        })
    }
}

pub fn receiver_init<'a, S: SphfWg, R: Rng + CryptoRng>(
    ctx: OtContext<'a, S>,
    b: u8,
    rng: &mut R,
) -> Result<(ReceiverState<'a, S>, Flow1)> {
    let mut st = ReceiverState::new(ctx, b)?;
    let flow1 = st.start(rng)?;
    Ok((st, flow1))
}

pub fn sender_respond<S: SphfWg, R: Rng + CryptoRng>(
    ctx: OtContext<'_, S>,
    m0: &MaskBytes,
    m1: &MaskBytes,
    flow1: &Flow1,
    rng: &mut R,
) -> Result<Flow2> {
    SenderState::new(ctx, m0.clone(), m1.clone())?.respond(flow1, rng)
}

pub fn receiver_finish<S: SphfWg, R: Rng + CryptoRng>(
    state: &mut ReceiverState<'_, S>,
    flow2: &Flow2,
    rng: &mut R,
) -> Result<MaskBytes> {
    state.finish(flow2, rng)
}
