use crate::ot::Phase;

#[derive(Debug, thiserror::Error)]
#[non_exhaustive]
pub enum Error {
    #[error("length mismatch: {left} bytes vs {right} bytes")]
    LengthMismatch { left: usize, right: usize },
    #[error("malformed encoding: {0}")]
    Decode(String),
    #[error("invalid parameters: {0}")]
    Params(String),
    #[error("protocol phase violation: expected {expected:?}, found {found:?}")]
    Phase { expected: Phase, found: Phase },
    #[error("session id mismatch")]
    SessionMismatch,
    #[error("crs does not carry the {0} trapdoor")]
    MissingTrapdoor(&'static str),
    #[error("first flow does not match the rho trapdoor words")]
    TrapdoorMismatch,
    #[error("unknown instantiation tag {0}")]
    UnknownInstantiation(u8),
    #[error("unknown parameter preset {0:?}")]
    UnknownPreset(String),
    #[error("wrong crs mode: {0}")]
    Mode(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn decode_err(msg: impl Into<String>) -> Error {
    Error::Decode(msg.into())
}
