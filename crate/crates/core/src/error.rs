use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A position or ordinal outside the valid range of a query.
    #[error("{what} {value} out of range (limit {limit})")]
    Range {
        what: &'static str,
        value: usize,
        limit: usize,
    },
    /// Caller-supplied arguments that violate an operation's precondition.
    #[error("invalid argument: {0}")]
    Argument(String),
    /// Bad magic or unsupported version in a serialized archive.
    #[error("format error: {0}")]
    Format(String),
    /// Structurally invalid archive data. `offset` is a byte offset when the
    /// archive came from a byte stream.
    #[error("corrupt archive{}: {message}", offset.map(|o| format!(" at byte {o}")).unwrap_or_default())]
    Corruption {
        offset: Option<usize>,
        message: String,
    },
    /// Local-edit result and reference plaintext disagree.
    #[error("consistency check failed: {0}")]
    Consistency(String),
    #[error("configuration error: {0}")]
    Configuration(String),
    /// Filesystem failure, with the offending path in the message.
    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn corrupt(message: impl Into<String>) -> Self {
        Error::Corruption {
            offset: None,
            message: message.into(),
        }
    }

    pub(crate) fn corrupt_at(offset: usize, message: impl Into<String>) -> Self {
        Error::Corruption {
            offset: Some(offset),
            message: message.into(),
        }
    }

    pub(crate) fn io(path: &std::path::Path, err: std::io::Error) -> Self {
        Error::Io(format!("{}: {err}", path.display()))
    }

    pub(crate) fn range(what: &'static str, value: usize, limit: usize) -> Self {
        Error::Range { what, value, limit }
    }
}
