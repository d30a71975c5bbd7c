//! Two-flow oblivious transfer over any [`SphfWg`](crate::sphf::SphfWg).
//!
//! ```text
//! receiver(b)                                  sender(m0, m1)
//!   (x_b, w) <- wordgen_L
//!   x_{1-b} = complement(rho, x_b)
//!                     ---- x0 ---->
//!                                    x1 = complement(rho, x0)
//!                                    hk_i, hp_i = proj_kg(hk_i, x_i)
//!                                    c_i = (mask(hash(hk_i, x_i)) ^ m_i, hp_i)
//!                     <--- c0, c1 --
//!   m_b = mask(proj_hash(hp_b, x_b, w)) ^ c_{b,0}
//! ```
//!
//! The CRS is derived from the session id; [`ideal`] holds the reference
//! functionality and [`extract`] the trapdoor extractors and simulator.

pub mod crs;
pub mod extract;
pub mod ideal;
pub mod protocol;
pub mod wire;

use std::fmt;

use crate::error::{decode_err, Result};

pub use crs::{derive_crs, Instantiation};
pub use extract::{extract_choice, extract_messages, simulate_honest_transcript, trapdoor_flow1, ChoiceOutcome};
pub use ideal::{IdealMsg, IdealOt};
pub use protocol::{receiver_finish, receiver_init, sender_respond, Flow1, Flow2, MaskedMessage, OtContext, ReceiverState, SenderState};
pub use wire::{Frame, MsgType};

/// Protocol phase; advances strictly `Init -> Sent -> Done`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Phase {
    Init,
    Sent,
    Done,
}

/// 8-byte session identifier.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct SessionId(pub [u8; 8]);

impl SessionId {
    pub fn from_u64(v: u64) -> Self {
        Self(v.to_be_bytes())
    }

    pub fn as_bytes(&self) -> &[u8; 8] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }

    /// Sixteen hex digits, or a decimal integer.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.len() == 16 && s.bytes().all(|c| c.is_ascii_hexdigit()) {
            let mut out = [0u8; 8];
            for (i, o) in out.iter_mut().enumerate() {
                *o = u8::from_str_radix(&s[2 * i..2 * i + 2], 16).expect("checked hex digits");
            }
            return Ok(Self(out));
        }
        s.parse::<u64>()
            .map(Self::from_u64)
            .map_err(|_| decode_err(format!("session id {s:?} is neither 16 hex digits nor an integer")))
    }
}

impl fmt::Debug for SessionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SessionId({})", self.to_hex())
    }
}

impl fmt::Display for SessionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}
