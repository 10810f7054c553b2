use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The binary container is malformed. `offset` is the byte position where
    /// decoding stopped.
    #[error("malformed compressed data at byte {offset}: {reason}")]
    Format { offset: usize, reason: String },

    #[error("compressed data truncated: element {index} of {count} is missing (byte {offset})")]
    Truncated {
        index: usize,
        count: usize,
        offset: usize,
    },

    #[error("element {index} has reference {reference}, which is out of range")]
    BadReference { index: usize, reference: u64 },

    #[error("element index {index} out of range (0..={max})")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("regex syntax error at offset {offset}: {reason}")]
    Syntax { offset: usize, reason: String },

    #[error("unsupported configuration: {0}")]
    Unsupported(String),
}

impl Error {
    pub(crate) fn format(offset: usize, reason: impl Into<String>) -> Self {
        Error::Format {
            offset,
            reason: reason.into(),
        }
    }

    pub(crate) fn parameter(reason: impl Into<String>) -> Self {
        Error::Parameter(reason.into())
    }
}
