use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("database root {0} does not exist")]
    MissingRoot(PathBuf),

    #[error("database root {0} contains no table files")]
    EmptyDatabase(PathBuf),

    #[error("duplicate table name `{0}`")]
    DuplicateTable(String),

    #[error("malformed header in {path}: {reason}")]
    MalformedHeader { path: PathBuf, reason: String },

    #[error("unknown column `{column}` in database `{database}`")]
    UnknownColumn { database: String, column: String },

    #[error("column `{0}` has no embeddable values")]
    EmptyColumn(String),

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("cosine similarity is undefined for a zero vector")]
    ZeroVector,

    #[error("embedding provider error: {0}")]
    Provider(String),

    #[error("provider mismatch: store holds `{store}`, payload is `{payload}`")]
    ProviderMismatch { store: String, payload: String },

    #[error("no stored embedding for `{0}`")]
    NotFound(String),

    #[error("corrupted record {path}: {reason}")]
    Corrupted { path: PathBuf, reason: String },

    #[error("missing embeddings for: {}", .0.join(", "))]
    MissingEmbeddings(Vec<String>),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("ground truth: {0}")]
    GroundTruth(String),

    #[error("csv error in {path}: {source}")]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Errors caused by the embedding backend rather than by the caller's input.
    pub fn is_provider_error(&self) -> bool {
        matches!(self, Error::Provider(_) | Error::DimensionMismatch { .. })
    }
}
