use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tracing::debug;

use super::accuracy::{accuracy_at_k, EvalResult};
use super::truth::GroundTruth;
use crate::error::{Error, Result};
use crate::ingest::ColumnRef;
use crate::matcher::{match_embedded, EmbeddedColumn, MatchConfig, MatchReport, SkippedColumn};
use crate::par;

/// Inputs of the distractor-scaling experiment.
pub struct ScalingSetup<'a> {
    pub reference_db: &'a str,
    pub unknown_dbs: &'a [String],
    /// Embedded reference columns; truth references absent here count as skipped.
    pub references: &'a [EmbeddedColumn],
    /// Columns that are some reference's true match; always in the pool.
    pub true_matches: &'a [EmbeddedColumn],
    /// Columns sampled into the pool.
    pub distractors: &'a [EmbeddedColumn],
    pub truth: &'a GroundTruth,
    pub config: MatchConfig,
}

/// The first `max` indices of a seeded shuffle of `0..pool_len`.
///
/// Taking a prefix of this order for each count makes smaller samples
/// subsets of larger ones.
pub fn nested_sample(pool_len: usize, max: usize, seed: u64) -> Result<Vec<usize>> {
    if max > pool_len {
        return Err(Error::Invalid(format!(
            "requested {max} distractors but the pool has {pool_len}"
        )));
    }
    let mut order: Vec<usize> = (0..pool_len).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    order.truncate(max);
    Ok(order)
}

/// Runs matching with `true_matches` plus `N` sampled distractors for each
/// `N` in `counts`, scoring accuracy@k for every k in `1..=config.k`.
///
/// Results are ordered by count, then k.
pub fn scaling_experiment(setup: &ScalingSetup<'_>, counts: &[usize], seed: u64) -> Result<Vec<EvalResult>> {
    setup.config.validate()?;
    if counts.is_empty() {
        return Err(Error::Invalid("no distractor counts given".into()));
    }
    if counts.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::Invalid("distractor counts must be non-decreasing".into()));
    }
    let overlap = setup.distractors.iter().find(|d| {
        setup
            .true_matches
            .iter()
            .any(|t| t.column().cmp_key(d.column()).is_eq())
    });
    if let Some(d) = overlap {
        return Err(Error::Invalid(format!(
            "distractor {} is also a true match",
            d.column().label()
        )));
    }
    let max = *counts.last().expect("non-empty");
    let order = nested_sample(setup.distractors.len(), max, seed)?;

    let skipped: Vec<SkippedColumn> = setup
        .truth
        .entries
        .iter()
        .filter(|e| e.reference.db == setup.reference_db)
        .filter(|e| !setup.references.iter().any(|r| e.reference.matches(r.column())))
        .map(|e| SkippedColumn {
            column: ColumnRef {
                database: e.reference.db.clone(),
                column_name: e.reference.column.clone(),
                tables: Vec::new(),
            },
            reason: "not embedded".into(),
        })
        .collect();

    let per_count = par::try_map(counts, |&n| -> Result<Vec<EvalResult>> {
        let mut pool: Vec<EmbeddedColumn> = setup.true_matches.to_vec();
        pool.extend(order[..n].iter().map(|&i| setup.distractors[i].clone()));
        debug!(distractors = n, pool = pool.len(), "scaling run");
        let report = MatchReport {
            reference_db: setup.reference_db.to_string(),
            unknown_dbs: setup.unknown_dbs.to_vec(),
            config: setup.config,
            matches: match_embedded(setup.references, &pool, &setup.config)?,
            skipped: skipped.clone(),
        };
        (1..=setup.config.k)
            .map(|k| {
                let mut r = accuracy_at_k(&report, setup.truth, k)?;
                r.distractor_count = Some(n);
                Ok(r)
            })
            .collect()
    })?;
    Ok(per_count.into_iter().flatten().collect())
}
