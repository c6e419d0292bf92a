use std::collections::HashMap;

use tracing::info;

use super::rank::{
    metadata_rerank, name_only_match, rank_all_by_value, threshold_filter, RerankInput,
};
use super::report::{ColumnMatch, MatchConfig, MatchMode, MatchReport, SkippedColumn};
use crate::embedding::{ColumnEmbedding, EmbeddingSource, Lookup, MetadataEmbeddings};
use crate::error::{Error, Result};
use crate::ingest::{list_column_refs, ColumnRef, DatabaseHandle};
use crate::par;

/// A column with both its value and metadata embeddings.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddedColumn {
    pub values: ColumnEmbedding,
    pub meta: MetadataEmbeddings,
}

impl EmbeddedColumn {
    pub fn new(values: ColumnEmbedding, meta: MetadataEmbeddings) -> Self {
        EmbeddedColumn { values, meta }
    }

    pub fn column(&self) -> &ColumnRef {
        &self.values.column
    }
}

/// Ranks `pool` for one reference column under `config`.
pub fn match_one(
    query: &EmbeddedColumn,
    pool: &[EmbeddedColumn],
    config: &MatchConfig,
) -> Result<ColumnMatch> {
    if pool.is_empty() {
        return Err(Error::Invalid("candidate pool is empty".into()));
    }
    let values: Vec<&ColumnEmbedding> = pool.iter().map(|c| &c.values).collect();
    let ranked = rank_all_by_value(&query.values.mean, &values)?;

    let by_key: HashMap<(&str, &str), &MetadataEmbeddings> = pool
        .iter()
        .map(|c| ((c.column().database.as_str(), c.column().column_name.as_str()), &c.meta))
        .collect();
    let meta_of = |target: &ColumnRef| {
        *by_key
            .get(&(target.database.as_str(), target.column_name.as_str()))
            .expect("ranked candidates come from the pool")
    };

    let (candidates, fallback_used) = match config.mode {
        MatchMode::ValuesOnly => {
            let mut top = ranked;
            top.truncate(config.k);
            (top, false)
        }
        MatchMode::MetadataRerank => {
            let outcome = threshold_filter(ranked, config.threshold);
            let inputs: Vec<RerankInput<'_>> = outcome
                .kept
                .iter()
                .map(|c| RerankInput {
                    meta: meta_of(&c.target),
                    value_score: c.value_score,
                })
                .collect();
            (
                metadata_rerank(&query.meta, &inputs, config.k)?,
                outcome.fallback_used,
            )
        }
        MatchMode::NameOnly => {
            let inputs: Vec<RerankInput<'_>> = ranked
                .iter()
                .map(|c| RerankInput {
                    meta: meta_of(&c.target),
                    value_score: c.value_score,
                })
                .collect();
            (name_only_match(&query.meta, &inputs, config.k)?, false)
        }
    };

    Ok(ColumnMatch {
        reference: query.column().clone(),
        candidates,
        fallback_used,
    })
}

/// [`match_one`] for every reference column, in input order.
pub fn match_embedded(
    references: &[EmbeddedColumn],
    pool: &[EmbeddedColumn],
    config: &MatchConfig,
) -> Result<Vec<ColumnMatch>> {
    config.validate()?;
    par::try_map(references, |q| match_one(q, pool, config))
}

/// Matches the reference columns `columns` of `reference` against every
/// column of `unknowns`.
///
/// Embeddings come from `source`; with no provider configured, any column
/// absent from the store fails the whole run with
/// [`Error::MissingEmbeddings`]. Reference columns that cannot be embedded
/// are listed in the report's `skipped` section.
pub fn match_columns(
    reference: &DatabaseHandle,
    columns: &[String],
    unknowns: &[DatabaseHandle],
    source: &EmbeddingSource<'_>,
    config: &MatchConfig,
) -> Result<MatchReport> {
    config.validate()?;
    if columns.is_empty() {
        return Err(Error::Invalid("no columns of interest given".into()));
    }
    if unknowns.is_empty() {
        return Err(Error::Invalid("no unknown databases given".into()));
    }

    let reference_refs = list_column_refs(reference);
    let mut wanted = Vec::with_capacity(columns.len());
    for name in columns {
        let column = reference_refs
            .iter()
            .find(|r| &r.column_name == name)
            .ok_or_else(|| Error::UnknownColumn {
                database: reference.name.clone(),
                column: name.clone(),
            })?;
        if !wanted.contains(&column) {
            wanted.push(column);
        }
    }

    let mut missing = Vec::new();
    let mut skipped = Vec::new();
    let mut queries = Vec::new();
    for column in wanted {
        match source.lookup(reference, column)? {
            Lookup::Ready(values, meta) => queries.push(EmbeddedColumn::new(values, meta)),
            Lookup::Skipped(reason) => skipped.push(SkippedColumn {
                column: column.clone(),
                reason,
            }),
            Lookup::Missing => missing.push(column.label()),
        }
    }

    let mut pool = Vec::new();
    for db in unknowns {
        for column in list_column_refs(db) {
            match source.lookup(db, &column)? {
                Lookup::Ready(values, meta) => pool.push(EmbeddedColumn::new(values, meta)),
                Lookup::Skipped(_) => {}
                Lookup::Missing => missing.push(column.label()),
            }
        }
    }
    if !missing.is_empty() {
        return Err(Error::MissingEmbeddings(missing));
    }
    if pool.is_empty() {
        return Err(Error::Invalid("unknown databases have no embeddable columns".into()));
    }

    let matches = match_embedded(&queries, &pool, config)?;
    info!(
        reference = %reference.name,
        queries = queries.len(),
        pool = pool.len(),
        skipped = skipped.len(),
        mode = %config.mode,
        "matched columns"
    );
    Ok(MatchReport {
        reference_db: reference.name.clone(),
        unknown_dbs: unknowns.iter().map(|d| d.name.clone()).collect(),
        config: *config,
        matches,
        skipped,
    })
}
