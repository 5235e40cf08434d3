use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid encoding: input is not valid UTF-8 at byte offset {offset}")]
    InvalidEncoding { offset: usize },

    #[error("no chapters found; override the heading pattern if this text uses another convention")]
    NoChapters,

    #[error("invalid heading pattern: {0}")]
    InvalidPattern(String),

    #[error("invalid quote style {0:?}: expected exactly two characters (opener and closer)")]
    InvalidQuoteStyle(String),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{}:{line}: malformed row: {message}", path.display())]
    MalformedRow {
        path: PathBuf,
        line: u64,
        message: String,
    },

    #[error("lexicon line {line}: {message}")]
    LexiconParse { line: usize, message: String },

    #[error("lexicon line {line}: score out of range for {term:?}: {value}")]
    ScoreOutOfRange {
        line: usize,
        term: String,
        value: f64,
    },

    #[error("no scored chapters")]
    NoScoredChapters,

    #[error("canvas too small")]
    CanvasTooSmall,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
