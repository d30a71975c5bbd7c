//! Executable ideal OT functionality.
//!
//! Records are stored once per role (later writes are ignored). An `Answer`
//! releases `m_b` to the receiver only when both records exist for that
//! session, after which the functionality halts. Anything else produces no
//! output and the functionality keeps running.

use super::SessionId;
use crate::mask::MaskBytes;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IdealMsg {
    Sender { sid: SessionId, m0: MaskBytes, m1: MaskBytes },
    Receiver { sid: SessionId, b: u8 },
    /// The adversary's go-ahead for delivery.
    Answer { sid: SessionId },
}

#[derive(Clone, Debug, Default)]
pub struct IdealOt {
    sender: Option<(SessionId, MaskBytes, MaskBytes)>,
    receiver: Option<(SessionId, u8)>,
    answered: bool,
}

impl IdealOt {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn answered(&self) -> bool {
        self.answered
    }

    /// Processes one message; returns the receiver's output, if any.
    pub fn step(&mut self, msg: IdealMsg) -> Option<MaskBytes> {
        if self.answered {
            return None;
        }
        match msg {
            IdealMsg::Sender { sid, m0, m1 } => {
                self.sender.get_or_insert((sid, m0, m1));
                None
            }
            IdealMsg::Receiver { sid, b } => {
                if b <= 1 {
                    self.receiver.get_or_insert((sid, b));
                }
                None
            }
            IdealMsg::Answer { sid } => match (&self.sender, &self.receiver) {
                (Some((s_sid, m0, m1)), Some((r_sid, b))) if *s_sid == sid && *r_sid == sid => {
                    self.answered = true;
                    Some(if *b == 0 { m0.clone() } else { m1.clone() })
                }
                _ => None,
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn msgs() -> (SessionId, MaskBytes, MaskBytes) {
        (SessionId::from_u64(1), MaskBytes::new(vec![0xA]), MaskBytes::new(vec![0xB]))
    }

    #[test]
    fn answer_before_records_is_silent() {
        let (sid, a, b) = msgs();
        let mut f = IdealOt::new();
        assert_eq!(f.step(IdealMsg::Answer { sid }), None);
        assert_eq!(f.step(IdealMsg::Sender { sid, m0: a, m1: b.clone() }), None);
        assert_eq!(f.step(IdealMsg::Answer { sid }), None);
        assert_eq!(f.step(IdealMsg::Receiver { sid, b: 1 }), None);
        assert_eq!(f.step(IdealMsg::Answer { sid }), Some(b));
        assert!(f.answered());
        assert_eq!(f.step(IdealMsg::Answer { sid }), None, "halted");
    }

    #[test]
    fn first_write_wins() {
        let (sid, a, b) = msgs();
        let mut f = IdealOt::new();
        f.step(IdealMsg::Receiver { sid, b: 0 });
        f.step(IdealMsg::Receiver { sid, b: 1 });
        f.step(IdealMsg::Sender { sid, m0: a.clone(), m1: b.clone() });
        f.step(IdealMsg::Sender { sid, m0: b, m1: a.clone() });
        assert_eq!(f.step(IdealMsg::Answer { sid }), Some(a));
    }

    #[test]
    fn session_ids_must_match() {
        let (sid, a, b) = msgs();
        let other = SessionId::from_u64(2);
        let mut f = IdealOt::new();
        f.step(IdealMsg::Sender { sid, m0: a, m1: b });
        f.step(IdealMsg::Receiver { sid: other, b: 0 });
        assert_eq!(f.step(IdealMsg::Answer { sid }), None);
        assert_eq!(f.step(IdealMsg::Answer { sid: other }), None);
    }
}
