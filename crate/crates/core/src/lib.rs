//! Embedding-based column matching across relational databases.
//!
//! Given a *reference* database whose layout is known and one or more
//! *unknown* databases, `colmatch` finds for every reference column the
//! columns in the unknown databases whose values look most alike. Each
//! column is reduced to the mean embedding of its unique text-cast values;
//! candidates are ranked by cosine similarity and can optionally be
//! re-ranked by embeddings of their metadata (column name, data type and
//! the tables the column appears in).
//!
//! The pipeline is split into four modules:
//!
//! * [`ingest`] loads CSV-directory databases and profiles columns.
//! * [`embedding`] turns text into vectors, aggregates column means and
//!   persists them in an on-disk [`embedding::EmbeddingStore`].
//! * [`matcher`] ranks candidates and assembles a [`matcher::MatchReport`].
//! * [`evaluation`] scores reports against ground truth (accuracy@k) and
//!   runs the distractor-scaling experiment.
//!
//! Data-parallel loops go through [`par`], which uses rayon when the
//! `parallel` feature is enabled (the default) and plain iterators otherwise.

pub mod embedding;
pub mod error;
pub mod evaluation;
pub mod ingest;
pub mod matcher;
pub mod par;

pub use error::{Error, Result};
