//! Frame layout, big-endian throughout:
//!
//! ```text
//! "GZOT" | version (1) | type (1) | sid (8) | tag (1) | len (4) | payload (len)
//! ```
//!
//! No authentication and no channel encryption.

use super::SessionId;
use crate::error::{decode_err, Result};

pub const MAGIC: [u8; 4] = *b"GZOT";
pub const VERSION: u8 = 1;
pub const HEADER_LEN: usize = 19;
/// Upper bound on accepted payloads; larger lengths are treated as corrupt.
pub const MAX_PAYLOAD: usize = 1 << 28;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MsgType {
    Flow1 = 1,
    Flow2 = 2,
}

impl MsgType {
    fn from_byte(b: u8) -> Result<Self> {
        match b {
            1 => Ok(MsgType::Flow1),
            2 => Ok(MsgType::Flow2),
            other => Err(decode_err(format!("unknown message type {other}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Frame {
    pub msg_type: MsgType,
    pub sid: SessionId,
    pub tag: u8,
    pub payload: Vec<u8>,
}

/// Parsed fixed-size header; `len` is the payload length still to read.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Header {
    pub msg_type: MsgType,
    pub sid: SessionId,
    pub tag: u8,
    pub len: usize,
}

impl Header {
    pub fn parse(h: &[u8; HEADER_LEN]) -> Result<Self> {
        if h[..4] != MAGIC {
            return Err(decode_err("bad magic"));
        }
        if h[4] != VERSION {
            return Err(decode_err(format!("unsupported version {}", h[4])));
        }
        let msg_type = MsgType::from_byte(h[5])?;
        let sid = SessionId(h[6..14].try_into().expect("8 bytes"));
        let tag = h[14];
        let len = u32::from_be_bytes(h[15..19].try_into().expect("4 bytes")) as usize;
        if len > MAX_PAYLOAD {
            return Err(decode_err(format!("payload length {len} exceeds limit")));
        }
        Ok(Self { msg_type, sid, tag, len })
    }
}

impl Frame {
    pub fn encode(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(HEADER_LEN + self.payload.len());
        out.extend_from_slice(&MAGIC);
        out.push(VERSION);
        out.push(self.msg_type as u8);
        out.extend_from_slice(self.sid.as_bytes());
        out.push(self.tag);
        out.extend_from_slice(&(self.payload.len() as u32).to_be_bytes());
        out.extend_from_slice(&self.payload);
        out
    }

    /// Parses exactly one frame; trailing bytes are an error.
    pub fn decode(bytes: &[u8]) -> Result<Self> {
        let head: &[u8; HEADER_LEN] = bytes
            .get(..HEADER_LEN)
            .and_then(|h| h.try_into().ok())
            .ok_or_else(|| decode_err("truncated frame header"))?;
        let h = Header::parse(head)?;
        let payload = &bytes[HEADER_LEN..];
        if payload.len() != h.len {
            return Err(decode_err(format!(
                "payload length {} does not match header {}",
                payload.len(),
                h.len
            )));
        }
        Ok(Self::from_parts(h, payload.to_vec()))
    }

    pub fn from_parts(h: Header, payload: Vec<u8>) -> Self {
        Self {
            msg_type: h.msg_type,
            sid: h.sid,
            tag: h.tag,
            payload,
        }
    }

    /// Reads one frame from a byte stream.
    pub fn read_from<R: std::io::Read>(r: &mut R) -> std::result::Result<Self, ReadError> {
        let mut head = [0u8; HEADER_LEN];
        r.read_exact(&mut head)?;
        let h = Header::parse(&head)?;
        let mut payload = vec![0u8; h.len];
        r.read_exact(&mut payload)?;
        Ok(Self::from_parts(h, payload))
    }
}

/// Failure while reading a frame from a stream.
#[derive(Debug, thiserror::Error)]
pub enum ReadError {
    #[error("transport: {0}")]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Protocol(#[from] crate::Error),
}

/// Length-prefixed field helpers for payloads.
pub(crate) fn put_field(out: &mut Vec<u8>, field: &[u8]) {
    out.extend_from_slice(&(field.len() as u32).to_be_bytes());
    out.extend_from_slice(field);
}

pub(crate) fn take_field<'a>(bytes: &mut &'a [u8]) -> Result<&'a [u8]> {
    if bytes.len() < 4 {
        return Err(decode_err("truncated field length"));
    }
    let len = u32::from_be_bytes(bytes[..4].try_into().expect("4 bytes")) as usize;
    let rest = &bytes[4..];
    if rest.len() < len {
        return Err(decode_err("truncated field"));
    }
    let (field, tail) = rest.split_at(len);
    *bytes = tail;
    Ok(field)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Frame {
        Frame {
            msg_type: MsgType::Flow2,
            sid: SessionId::from_u64(0x0102030405060708),
            tag: 2,
            payload: vec![0xAA, 0xBB, 0xCC],
        }
    }

    #[test]
    fn layout_is_bit_exact() {
        let bytes = sample().encode();
        let expected: Vec<u8> = [
            b"GZOT".as_slice(),
            &[1, 2],
            &[1, 2, 3, 4, 5, 6, 7, 8],
            &[2],
            &[0, 0, 0, 3],
            &[0xAA, 0xBB, 0xCC],
        ]
        .concat();
        assert_eq!(bytes, expected);
        assert_eq!(Frame::decode(&bytes).unwrap(), sample());
    }

    #[test]
    fn rejects_corruption() {
        let good = sample().encode();
        let mut v = good.clone();
        v[4] = 2;
        assert!(Frame::decode(&v).is_err(), "version");
        let mut v = good.clone();
        v[0] = b'X';
        assert!(Frame::decode(&v).is_err(), "magic");
        let mut v = good.clone();
        v[5] = 7;
        assert!(Frame::decode(&v).is_err(), "type");
        assert!(Frame::decode(&good[..good.len() - 1]).is_err(), "truncated payload");
        assert!(Frame::decode(&good[..10]).is_err(), "truncated header");
        let mut v = good.clone();
        v.push(0);
        assert!(Frame::decode(&v).is_err(), "trailing byte");
    }

    #[test]
    fn stream_reading() {
        let bytes = [sample().encode(), sample().encode()].concat();
        let mut cur = std::io::Cursor::new(bytes);
        assert_eq!(Frame::read_from(&mut cur).unwrap(), sample());
        assert_eq!(Frame::read_from(&mut cur).unwrap(), sample());
        assert!(matches!(Frame::read_from(&mut cur), Err(ReadError::Io(_))));
    }

    #[test]
    fn fields() {
        let mut out = Vec::new();
        put_field(&mut out, b"ab");
        put_field(&mut out, b"");
        let mut cur = out.as_slice();
        assert_eq!(take_field(&mut cur).unwrap(), b"ab");
        assert_eq!(take_field(&mut cur).unwrap(), b"");
        assert!(cur.is_empty());
        assert!(take_field(&mut &out[..5]).is_err());
    }
}
