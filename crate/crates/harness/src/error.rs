use gzot_core::Error as CoreError;

/// Harness failures, each mapped to a process exit code.
#[derive(Debug, thiserror::Error)]
pub enum HarnessError {
    #[error("configuration: {0}")]
    Config(String),
    #[error("protocol abort: {0}")]
    Protocol(CoreError),
    #[error("decode error: {0}")]
    Decode(String),
    #[error("transport: {0}")]
    Io(#[from] std::io::Error),
}

impl HarnessError {
    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::Protocol(_) | HarnessError::Io(_) => 2,
            HarnessError::Decode(_) => 3,
            HarnessError::Config(_) => 4,
        }
    }
}

impl From<CoreError> for HarnessError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::Decode(msg) => HarnessError::Decode(msg),
            CoreError::Params(_) | CoreError::UnknownPreset(_) | CoreError::UnknownInstantiation(_) => {
                HarnessError::Config(e.to_string())
            }
            other => HarnessError::Protocol(other),
        }
    }
}

impl From<gzot_core::ot::wire::ReadError> for HarnessError {
    fn from(e: gzot_core::ot::wire::ReadError) -> Self {
        match e {
            gzot_core::ot::wire::ReadError::Io(io) if io.kind() == std::io::ErrorKind::UnexpectedEof => {
                HarnessError::Decode("stream ended inside a frame".into())
            }
            gzot_core::ot::wire::ReadError::Io(io) => HarnessError::Io(io),
            gzot_core::ot::wire::ReadError::Protocol(p) => p.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, HarnessError>;
