use std::path::PathBuf;

use crate::corpus::Label;

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// All error conditions surfaced by the library.
///
/// Data errors carry enough context (file, line, identifier) for the CLI to
/// print an actionable message.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("file not found: {0}")]
    MissingFile(PathBuf),

    #[error("{path}:{line}: malformed row: {reason}")]
    MalformedRow {
        path: PathBuf,
        line: usize,
        reason: String,
    },

    #[error("{path}:{line}: duplicate tweet id `{id}`")]
    DuplicateId {
        path: PathBuf,
        line: usize,
        id: String,
    },

    #[error("missing lexicon file `{0}`")]
    MissingLexicon(String),

    #[error("{name}:{line}: malformed lexicon row")]
    MalformedLexiconRow { name: String, line: usize },

    #[error("fetch failed for {url}: {cause}")]
    FetchFailed { url: String, cause: String },

    #[error("corpus is empty")]
    EmptyCorpus,

    #[error("training set is empty")]
    EmptyTrainingSet,

    #[error("feature {index} is negative ({value})")]
    NegativeFeature { index: usize, value: f64 },

    #[error("non-finite feature value at index {0}")]
    NonFiniteFeature(usize),

    #[error("class `{0}` has no training examples but its prior is non-zero")]
    MissingClass(Label),

    #[error("class `{0}` missing from the training side of a fold")]
    ClassMissingInFold(Label),

    #[error("fold too small: class `{0}` absent from a fold")]
    FoldTooSmall(Label),

    #[error("feature vector has {got} entries, model expects {expected}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("prediction and gold label lists differ in length ({preds} vs {gold})")]
    LengthMismatch { preds: usize, gold: usize },

    #[error("unsupported model format version {0}")]
    UnsupportedModelVersion(u32),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("{context}: {source}")]
    Io {
        context: String,
        #[source]
        source: std::io::Error,
    },

    #[error("{context}: {source}")]
    Json {
        context: String,
        #[source]
        source: serde_json::Error,
    },
}

impl Error {
    pub(crate) fn io(context: impl Into<String>, source: std::io::Error) -> Self {
        Error::Io {
            context: context.into(),
            source,
        }
    }

    pub(crate) fn json(context: impl Into<String>, source: serde_json::Error) -> Self {
        Error::Json {
            context: context.into(),
            source,
        }
    }
}
