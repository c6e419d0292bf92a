//! Ranking candidate columns for each reference column.
//!
//! Three modes share one candidate pool:
//!
//! * values only: cosine of mean value embeddings, top-k;
//! * metadata re-rank: keep candidates whose value score clears a threshold,
//!   then order them by the mean cosine of name, type and table-list
//!   embeddings;
//! * names only: cosine of column-name embeddings, the naive baseline.

mod cosine;
mod pipeline;
mod rank;
mod report;

pub use cosine::cosine_similarity;
pub use pipeline::{match_columns, match_embedded, match_one, EmbeddedColumn};
pub use rank::{
    metadata_rerank, name_only_match, threshold_filter, value_match_topk, MetaField,
    RerankInput, ThresholdOutcome,
};
pub use report::{
    ColumnMatch, MatchCandidate, MatchConfig, MatchMode, MatchReport, SkippedColumn,
    DEFAULT_K, DEFAULT_THRESHOLD,
};
