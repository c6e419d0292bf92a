use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::cosine::cosine_similarity;
use super::report::MatchCandidate;
use crate::embedding::{ColumnEmbedding, MetadataEmbeddings, Vector};
use crate::error::{Error, Result};
use crate::par;

/// Metadata field that can contribute to a re-ranked match.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum MetaField {
    /// Column name.
    #[serde(rename = "CN")]
    Cn,
    /// Column data type.
    #[serde(rename = "DT")]
    Dt,
    /// Table name(s).
    #[serde(rename = "TN")]
    Tn,
}

/// A candidate's metadata embeddings together with its value score.
#[derive(Debug, Clone, Copy)]
pub struct RerankInput<'a> {
    pub meta: &'a MetadataEmbeddings,
    pub value_score: f64,
}

/// Result of [`threshold_filter`].
#[derive(Debug, Clone, PartialEq)]
pub struct ThresholdOutcome {
    pub kept: Vec<MatchCandidate>,
    /// No candidate reached the threshold; `kept` holds the top scorers instead.
    pub fallback_used: bool,
}

/// Slack when comparing a field cosine with the mean, absorbing `f32` rounding
/// in otherwise identical fields.
const FIELD_EPSILON: f64 = 1e-6;

fn desc(a: f64, b: f64) -> Ordering {
    b.total_cmp(&a)
}

fn assign_ranks(mut candidates: Vec<MatchCandidate>, k: usize) -> Vec<MatchCandidate> {
    candidates.truncate(k);
    for (i, c) in candidates.iter_mut().enumerate() {
        c.rank = i + 1;
    }
    candidates
}

/// Every candidate scored against `query`, best first, ties by `(db, column)`.
pub(crate) fn rank_all_by_value(
    query: &Vector,
    candidates: &[&ColumnEmbedding],
) -> Result<Vec<MatchCandidate>> {
    let scores = par::try_map(candidates, |c| cosine_similarity(query, &c.mean))?;
    let mut ranked: Vec<MatchCandidate> = candidates
        .iter()
        .zip(scores)
        .map(|(c, value_score)| MatchCandidate {
            target: c.column.clone(),
            value_score,
            metadata_score: None,
            contributing_fields: Vec::new(),
            rank: 0,
        })
        .collect();
    ranked.sort_by(|a, b| {
        desc(a.value_score, b.value_score).then_with(|| a.target.cmp_key(&b.target))
    });
    let n = ranked.len();
    Ok(assign_ranks(ranked, n))
}

/// Top-`k` candidates by cosine of mean value embeddings.
pub fn value_match_topk(
    query: &ColumnEmbedding,
    candidates: &[ColumnEmbedding],
    k: usize,
) -> Result<Vec<MatchCandidate>> {
    if candidates.is_empty() {
        return Err(Error::Invalid("candidate pool is empty".into()));
    }
    let refs: Vec<&ColumnEmbedding> = candidates.iter().collect();
    Ok(assign_ranks(rank_all_by_value(&query.mean, &refs)?, k))
}

/// Keeps candidates with `value_score >= threshold`.
///
/// When none qualify, keeps every candidate tied for the best score and
/// reports the fallback. Input must be sorted by value score, best first.
pub fn threshold_filter(ranked: Vec<MatchCandidate>, threshold: f64) -> ThresholdOutcome {
    let passing = ranked
        .iter()
        .take_while(|c| c.value_score >= threshold)
        .count();
    if passing > 0 || ranked.is_empty() {
        let mut kept = ranked;
        kept.truncate(passing);
        return ThresholdOutcome {
            kept,
            fallback_used: false,
        };
    }
    let best = ranked[0].value_score;
    ThresholdOutcome {
        kept: ranked.into_iter().filter(|c| c.value_score == best).collect(),
        fallback_used: true,
    }
}

// A zero metadata vector carries no signal; score it as unrelated instead of failing.
fn field_similarity(a: &Vector, b: &Vector) -> Result<f64> {
    match cosine_similarity(a, b) {
        Err(Error::ZeroVector) => Ok(0.0),
        other => other,
    }
}

fn metadata_candidate(
    query: &MetadataEmbeddings,
    input: &RerankInput<'_>,
) -> Result<MatchCandidate> {
    let sims = [
        (MetaField::Cn, field_similarity(&query.name_vec, &input.meta.name_vec)?),
        (MetaField::Dt, field_similarity(&query.dtype_vec, &input.meta.dtype_vec)?),
        (MetaField::Tn, field_similarity(&query.tables_vec, &input.meta.tables_vec)?),
    ];
    let mean = sims.iter().map(|(_, s)| s).sum::<f64>() / sims.len() as f64;
    Ok(MatchCandidate {
        target: input.meta.column.clone(),
        value_score: input.value_score,
        metadata_score: Some(mean),
        contributing_fields: sims
            .iter()
            .filter(|(_, s)| *s >= mean - FIELD_EPSILON)
            .map(|(f, _)| *f)
            .collect(),
        rank: 0,
    })
}

fn cmp_metadata(a: &MatchCandidate, b: &MatchCandidate) -> Ordering {
    desc(a.metadata_score.unwrap_or(f64::NEG_INFINITY), b.metadata_score.unwrap_or(f64::NEG_INFINITY))
        .then_with(|| desc(a.value_score, b.value_score))
        .then_with(|| a.target.cmp_key(&b.target))
}

/// Re-orders threshold survivors by the mean of their name, type and
/// table-list cosines against the query, returning the top `k`.
///
/// `contributing_fields` lists the fields whose cosine is at least that mean.
pub fn metadata_rerank(
    query: &MetadataEmbeddings,
    filtered: &[RerankInput<'_>],
    k: usize,
) -> Result<Vec<MatchCandidate>> {
    let mut scored = par::try_map(filtered, |input| metadata_candidate(query, input))?;
    scored.sort_by(cmp_metadata);
    Ok(assign_ranks(scored, k))
}

/// Baseline ranking by column-name embeddings alone.
///
/// The name cosine is reported as `metadata_score` with `CN` as the only
/// contributing field; `value_score` is passed through from the input.
pub fn name_only_match(
    query: &MetadataEmbeddings,
    candidates: &[RerankInput<'_>],
    k: usize,
) -> Result<Vec<MatchCandidate>> {
    if candidates.is_empty() {
        return Err(Error::Invalid("candidate pool is empty".into()));
    }
    let scores = par::try_map(candidates, |c| field_similarity(&query.name_vec, &c.meta.name_vec))?;
    let mut scored: Vec<MatchCandidate> = candidates
        .iter()
        .zip(scores)
        .map(|(c, name_score)| MatchCandidate {
            target: c.meta.column.clone(),
            value_score: c.value_score,
            metadata_score: Some(name_score),
            contributing_fields: vec![MetaField::Cn],
            rank: 0,
        })
        .collect();
    scored.sort_by(|a, b| {
        desc(a.metadata_score.unwrap_or(0.0), b.metadata_score.unwrap_or(0.0))
            .then_with(|| a.target.cmp_key(&b.target))
    });
    Ok(assign_ranks(scored, k))
}
