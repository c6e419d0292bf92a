use std::fmt;
use std::str::FromStr;

use serde::de::Deserializer;
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};
use serde_json::value::RawValue;

use super::rank::MetaField;
use crate::error::{Error, Result};
use crate::ingest::ColumnRef;

pub const DEFAULT_K: usize = 3;
pub const DEFAULT_THRESHOLD: f64 = 0.4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MatchMode {
    ValuesOnly,
    MetadataRerank,
    NameOnly,
}

impl MatchMode {
    pub fn as_str(self) -> &'static str {
        match self {
            MatchMode::ValuesOnly => "values_only",
            MatchMode::MetadataRerank => "metadata_rerank",
            MatchMode::NameOnly => "name_only",
        }
    }
}

impl fmt::Display for MatchMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for MatchMode {
    type Err = Error;

    /// Accepts both the report spelling and the short CLI words.
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "values" | "values_only" => Ok(MatchMode::ValuesOnly),
            "metadata" | "metadata_rerank" => Ok(MatchMode::MetadataRerank),
            "names" | "name_only" => Ok(MatchMode::NameOnly),
            other => Err(Error::Invalid(format!("unknown match mode `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MatchConfig {
    pub k: usize,
    pub threshold: f64,
    pub mode: MatchMode,
}

impl MatchConfig {
    pub fn new(k: usize, threshold: f64, mode: MatchMode) -> Result<Self> {
        let config = MatchConfig { k, threshold, mode };
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        if self.k == 0 {
            return Err(Error::Invalid("k must be >= 1".into()));
        }
        if !(-1.0..=1.0).contains(&self.threshold) {
            return Err(Error::Invalid(format!(
                "threshold {} outside [-1, 1]",
                self.threshold
            )));
        }
        Ok(())
    }
}

impl Default for MatchConfig {
    fn default() -> Self {
        MatchConfig {
            k: DEFAULT_K,
            threshold: DEFAULT_THRESHOLD,
            mode: MatchMode::ValuesOnly,
        }
    }
}

/// One ranked candidate for a reference column.
#[derive(Debug, Clone, PartialEq)]
pub struct MatchCandidate {
    pub target: ColumnRef,
    pub value_score: f64,
    /// Set in metadata and name-only modes.
    pub metadata_score: Option<f64>,
    pub contributing_fields: Vec<MetaField>,
    /// 1-based.
    pub rank: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ColumnMatch {
    pub reference: ColumnRef,
    pub candidates: Vec<MatchCandidate>,
    /// Nothing cleared the threshold and the best-scoring candidates were kept instead.
    pub fallback_used: bool,
}

impl ColumnMatch {
    /// 1-based rank of `(database, column)` among the candidates, if present.
    pub fn rank_of(&self, database: &str, column: &str) -> Option<usize> {
        self.candidates
            .iter()
            .find(|c| c.target.same_column(database, column))
            .map(|c| c.rank)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkippedColumn {
    pub column: ColumnRef,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MatchReport {
    pub reference_db: String,
    pub unknown_dbs: Vec<String>,
    pub config: MatchConfig,
    pub matches: Vec<ColumnMatch>,
    pub skipped: Vec<SkippedColumn>,
}

impl MatchReport {
    pub fn find(&self, column: &str) -> Option<&ColumnMatch> {
        self.matches
            .iter()
            .find(|m| m.reference.column_name == column)
    }

    pub fn is_skipped(&self, column: &str) -> bool {
        self.skipped.iter().any(|s| s.column.column_name == column)
    }

    /// Pretty JSON with fixed key order and scores at six decimals.
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&ReportWire::from(self))?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let wire: ReportWire = serde_json::from_str(text)?;
        wire.try_into()
    }
}

/// Score rendered with exactly six decimals.
#[derive(Debug, Clone, Copy, PartialEq)]
struct Score(f64);

impl Serialize for Score {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let raw = RawValue::from_string(format!("{:.6}", self.0)).map_err(serde::ser::Error::custom)?;
        raw.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Score {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        f64::deserialize(deserializer).map(Score)
    }
}

#[derive(Serialize, Deserialize)]
struct ConfigWire {
    k: usize,
    threshold: Score,
    mode: MatchMode,
}

#[derive(Serialize, Deserialize)]
struct CandidateWire {
    db: String,
    column: String,
    value_score: Score,
    metadata_score: Option<Score>,
    contributing_fields: Vec<MetaField>,
    rank: usize,
}

#[derive(Serialize, Deserialize)]
struct MatchWire {
    reference: ColumnRef,
    candidates: Vec<CandidateWire>,
    fallback_used: bool,
}

#[derive(Serialize, Deserialize)]
struct SkippedWire {
    column: String,
    reason: String,
}

#[derive(Serialize, Deserialize)]
struct ReportWire {
    reference_db: String,
    unknown_dbs: Vec<String>,
    config: ConfigWire,
    matches: Vec<MatchWire>,
    skipped: Vec<SkippedWire>,
}

impl From<&MatchReport> for ReportWire {
    fn from(r: &MatchReport) -> Self {
        ReportWire {
            reference_db: r.reference_db.clone(),
            unknown_dbs: r.unknown_dbs.clone(),
            config: ConfigWire {
                k: r.config.k,
                threshold: Score(r.config.threshold),
                mode: r.config.mode,
            },
            matches: r
                .matches
                .iter()
                .map(|m| MatchWire {
                    reference: m.reference.clone(),
                    candidates: m
                        .candidates
                        .iter()
                        .map(|c| CandidateWire {
                            db: c.target.database.clone(),
                            column: c.target.column_name.clone(),
                            value_score: Score(c.value_score),
                            metadata_score: c.metadata_score.map(Score),
                            contributing_fields: c.contributing_fields.clone(),
                            rank: c.rank,
                        })
                        .collect(),
                    fallback_used: m.fallback_used,
                })
                .collect(),
            skipped: r
                .skipped
                .iter()
                .map(|s| SkippedWire {
                    column: s.column.column_name.clone(),
                    reason: s.reason.clone(),
                })
                .collect(),
        }
    }
}

impl TryFrom<ReportWire> for MatchReport {
    type Error = Error;

    fn try_from(w: ReportWire) -> Result<Self> {
        let config = MatchConfig::new(w.config.k, w.config.threshold.0, w.config.mode)?;
        let reference_db = w.reference_db;
        let matches = w
            .matches
            .into_iter()
            .map(|m| {
                if m.candidates.len() > config.k {
                    return Err(Error::Invalid(format!(
                        "`{}` has {} candidates, more than k={}",
                        m.reference.column_name,
                        m.candidates.len(),
                        config.k
                    )));
                }
                Ok(ColumnMatch {
                    reference: m.reference,
                    candidates: m
                        .candidates
                        .into_iter()
                        .map(|c| MatchCandidate {
                            target: ColumnRef {
                                database: c.db,
                                column_name: c.column,
                                tables: Vec::new(),
                            },
                            value_score: c.value_score.0,
                            metadata_score: c.metadata_score.map(|s| s.0),
                            contributing_fields: c.contributing_fields,
                            rank: c.rank,
                        })
                        .collect(),
                    fallback_used: m.fallback_used,
                })
            })
            .collect::<Result<_>>()?;
        let skipped = w
            .skipped
            .into_iter()
            .map(|s| SkippedColumn {
                column: ColumnRef {
                    database: reference_db.clone(),
                    column_name: s.column,
                    tables: Vec::new(),
                },
                reason: s.reason,
            })
            .collect();
        Ok(MatchReport {
            reference_db,
            unknown_dbs: w.unknown_dbs,
            config,
            matches,
            skipped,
        })
    }
}
