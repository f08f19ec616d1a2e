use std::io;
use std::path::PathBuf;

/// Errors surfaced by every stage of the pipeline.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("io error: {0}")]
    Io(#[from] io::Error),

    #[error("{path}: {source}")]
    File {
        path: PathBuf,
        #[source]
        source: io::Error,
    },

    #[error("xml error at byte {offset}: {message}")]
    Xml { offset: u64, message: String },

    #[error("truncated dump after {pages} complete pages (byte {offset})")]
    TruncatedDump { pages: usize, offset: u64 },

    #[error("{file}:{line}: {message}")]
    Parse {
        file: String,
        line: usize,
        message: String,
    },

    #[error("invalid index file: {0}")]
    IndexFormat(String),

    #[error("empty corpus: no concepts to index")]
    EmptyCorpus,

    #[error("empty corpus counts")]
    EmptyCounts,

    #[error("collocation undefined: #({0}) + #({1}) = 0")]
    UndefinedCollocation(String, String),

    #[error("statistics error: {0}")]
    Stats(String),

    #[error("invalid argument: {0}")]
    Invalid(String),

    #[error("unknown config key `{0}`")]
    UnknownKey(String),

    #[error("config/index mismatch: index built with {index}, config hashes to {config}")]
    HashMismatch { index: String, config: String },

    #[error("scoring failed for pair ({w1}, {w2}): {message}")]
    Scoring {
        w1: String,
        w2: String,
        message: String,
    },
}

impl Error {
    pub(crate) fn file(path: impl Into<PathBuf>, source: io::Error) -> Self {
        Error::File {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn parse(file: impl Into<String>, line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            file: file.into(),
            line,
            message: message.into(),
        }
    }

    /// Short stable tag for machine-parsable CLI error lines.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Io(_) | Error::File { .. } => "io",
            Error::Xml { .. } => "xml",
            Error::TruncatedDump { .. } => "truncated-dump",
            Error::Parse { .. } => "parse",
            Error::IndexFormat(_) => "index-format",
            Error::EmptyCorpus => "empty-corpus",
            Error::EmptyCounts => "empty-counts",
            Error::UndefinedCollocation(..) => "undefined-collocation",
            Error::Stats(_) => "stats",
            Error::Invalid(_) => "invalid",
            Error::UnknownKey(_) => "unknown-key",
            Error::HashMismatch { .. } => "hash-mismatch",
            Error::Scoring { .. } => "scoring",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
