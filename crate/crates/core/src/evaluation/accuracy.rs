use serde::{Deserialize, Serialize};

use super::truth::{ColumnKey, GroundTruth};
use crate::error::{Error, Result};
use crate::matcher::{MatchMode, MatchReport};

/// Accuracy@k over the evaluable entries of a ground truth.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalResult {
    pub mode: MatchMode,
    pub k: usize,
    pub distractor_count: Option<usize>,
    pub correct: usize,
    pub evaluable: usize,
    pub accuracy: f64,
}

impl EvalResult {
    pub fn new(mode: MatchMode, k: usize, correct: usize, evaluable: usize) -> Result<Self> {
        if evaluable == 0 {
            return Err(Error::GroundTruth("no entries with a true match".into()));
        }
        if correct > evaluable {
            return Err(Error::Invalid(format!("{correct} correct of {evaluable}")));
        }
        Ok(EvalResult {
            mode,
            k,
            distractor_count: None,
            correct,
            evaluable,
            accuracy: correct as f64 / evaluable as f64,
        })
    }

    /// `correct/evaluable`, e.g. `12/13`.
    pub fn ratio(&self) -> String {
        format!("{}/{}", self.correct, self.evaluable)
    }
}

/// Where one reference column's true match landed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColumnOutcome {
    pub reference: ColumnKey,
    pub truth: Option<ColumnKey>,
    /// 1-based rank of the true match among the report's candidates.
    pub truth_rank: Option<usize>,
    pub skipped: bool,
}

/// Per-column outcomes, in ground-truth order.
pub fn column_outcomes(report: &MatchReport, truth: &GroundTruth) -> Result<Vec<ColumnOutcome>> {
    truth
        .entries
        .iter()
        .map(|entry| {
            let reference = &entry.reference;
            let in_reference_db = reference.db == report.reference_db;
            let found = report
                .matches
                .iter()
                .find(|m| in_reference_db && m.reference.column_name == reference.column);
            let skipped = in_reference_db && report.is_skipped(&reference.column);
            if found.is_none() && !skipped {
                return Err(Error::GroundTruth(format!(
                    "reference {reference} is missing from the report"
                )));
            }
            let truth_rank = match (&entry.truth, found) {
                (Some(t), Some(m)) => m.rank_of(&t.db, &t.column),
                _ => None,
            };
            Ok(ColumnOutcome {
                reference: reference.clone(),
                truth: entry.truth.clone(),
                truth_rank,
                skipped,
            })
        })
        .collect()
}

/// Scores 1 for each evaluable entry whose true match is among the first `k`
/// candidates. Entries without a true match are left out entirely.
pub fn accuracy_at_k(report: &MatchReport, truth: &GroundTruth, k: usize) -> Result<EvalResult> {
    if k == 0 || k > report.config.k {
        return Err(Error::Invalid(format!(
            "k={k} must be between 1 and the report's k={}",
            report.config.k
        )));
    }
    let outcomes = column_outcomes(report, truth)?;
    let evaluable = outcomes.iter().filter(|o| o.truth.is_some()).count();
    let correct = outcomes
        .iter()
        .filter(|o| o.truth.is_some() && o.truth_rank.is_some_and(|r| r <= k))
        .count();
    EvalResult::new(report.config.mode, k, correct, evaluable)
}
