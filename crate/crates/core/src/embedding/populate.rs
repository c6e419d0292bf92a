use tracing::{debug, info};

use super::aggregate::{embed_column, embed_metadata, ColumnEmbedding, MetadataEmbeddings};
use super::provider::EmbeddingProvider;
use super::store::EmbeddingStore;
use crate::error::{Error, Result};
use crate::ingest::{list_column_refs, profile_column, ColumnRef, DatabaseHandle};
use crate::par;

pub const EMPTY_COLUMN_REASON: &str = "no embeddable values (all cells null or empty)";
pub const ZERO_MEAN_REASON: &str = "mean embedding is the zero vector";

/// Where embeddings for a column come from.
#[derive(Clone, Copy)]
pub struct EmbeddingSource<'a> {
    pub store: &'a EmbeddingStore,
    /// When set, missing records are computed and written to the store.
    pub provider: Option<&'a dyn EmbeddingProvider>,
    pub chunk_size: usize,
}

/// Outcome of looking up one column.
#[derive(Debug, Clone, PartialEq)]
pub enum Lookup {
    Ready(ColumnEmbedding, MetadataEmbeddings),
    /// The column cannot be embedded; the string says why.
    Skipped(String),
    /// Not in the store and no provider to compute it.
    Missing,
}

fn compute<P: EmbeddingProvider + ?Sized>(
    db: &DatabaseHandle,
    column: &ColumnRef,
    provider: &P,
    chunk_size: usize,
) -> Result<Result<(ColumnEmbedding, MetadataEmbeddings), String>> {
    let profile = profile_column(db, &column.column_name)?;
    let col = match embed_column(&profile, provider, chunk_size) {
        Ok(c) => c,
        Err(Error::EmptyColumn(_)) => return Ok(Err(EMPTY_COLUMN_REASON.into())),
        Err(Error::ZeroVector) => return Ok(Err(ZERO_MEAN_REASON.into())),
        Err(e) => return Err(e),
    };
    let meta = embed_metadata(&profile.column, profile.dtype, provider)?;
    Ok(Ok((col, meta)))
}

impl EmbeddingSource<'_> {
    pub fn lookup(&self, db: &DatabaseHandle, column: &ColumnRef) -> Result<Lookup> {
        if self.store.contains(column) {
            let (col, meta) = self.store.get(column)?;
            return Ok(Lookup::Ready(col, meta));
        }
        match self.provider {
            Some(provider) => match compute(db, column, provider, self.chunk_size)? {
                Ok((col, meta)) => {
                    self.store.put(column, &col, &meta)?;
                    Ok(Lookup::Ready(col, meta))
                }
                Err(reason) => Ok(Lookup::Skipped(reason)),
            },
            None => {
                let profile = profile_column(db, &column.column_name)?;
                if profile.unique_values.is_empty() {
                    Ok(Lookup::Skipped(EMPTY_COLUMN_REASON.into()))
                } else {
                    Ok(Lookup::Missing)
                }
            }
        }
    }
}

/// What [`embed_database`] did.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EmbedSummary {
    pub written: Vec<String>,
    pub up_to_date: Vec<String>,
    /// `(column label, reason)` for columns that could not be embedded.
    pub skipped: Vec<(String, String)>,
}

enum ColumnOutcome {
    Written,
    UpToDate,
    Skipped(String),
}

/// Embeds every column of `db` into `store`.
///
/// A column whose record already exists with the same unique-value count is
/// left alone unless `force` is set.
pub fn embed_database<P: EmbeddingProvider + ?Sized>(
    db: &DatabaseHandle,
    store: &EmbeddingStore,
    provider: &P,
    chunk_size: usize,
    force: bool,
) -> Result<EmbedSummary> {
    if provider.id() != store.provider_id() {
        return Err(Error::ProviderMismatch {
            store: store.provider_id(),
            payload: provider.id().to_string(),
        });
    }
    let refs = list_column_refs(db);
    let outcomes = par::try_map(&refs, |column| -> Result<ColumnOutcome> {
        if !force && store.contains(column) {
            let profile = profile_column(db, &column.column_name)?;
            if store.stored_value_count(column) == Some(profile.unique_values.len()) {
                debug!(column = %column.label(), "up to date");
                return Ok(ColumnOutcome::UpToDate);
            }
        }
        match compute(db, column, provider, chunk_size)? {
            Ok((col, meta)) => {
                store.put(column, &col, &meta)?;
                Ok(ColumnOutcome::Written)
            }
            Err(reason) => Ok(ColumnOutcome::Skipped(reason)),
        }
    })?;

    let mut summary = EmbedSummary::default();
    for (column, outcome) in refs.iter().zip(outcomes) {
        match outcome {
            ColumnOutcome::Written => summary.written.push(column.label()),
            ColumnOutcome::UpToDate => summary.up_to_date.push(column.label()),
            ColumnOutcome::Skipped(reason) => summary.skipped.push((column.label(), reason)),
        }
    }
    info!(
        db = %db.name,
        written = summary.written.len(),
        up_to_date = summary.up_to_date.len(),
        skipped = summary.skipped.len(),
        "embedded database"
    );
    Ok(summary)
}
