use std::collections::HashSet;
use std::fmt;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ingest::{ColumnRef, DatabaseHandle};

/// `(database, column)` pair as written in ground-truth files.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ColumnKey {
    pub db: String,
    pub column: String,
}

impl ColumnKey {
    pub fn new(db: impl Into<String>, column: impl Into<String>) -> Self {
        ColumnKey {
            db: db.into(),
            column: column.into(),
        }
    }

    pub fn matches(&self, column: &ColumnRef) -> bool {
        column.same_column(&self.db, &self.column)
    }
}

impl fmt::Display for ColumnKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}", self.db, self.column)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TruthEntry {
    pub reference: ColumnKey,
    /// `None` when the unknown database has no counterpart.
    pub truth: Option<ColumnKey>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroundTruth {
    pub entries: Vec<TruthEntry>,
}

impl GroundTruth {
    /// Checks the entry list is non-empty and has unique references.
    pub fn new(entries: Vec<TruthEntry>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::GroundTruth("no entries".into()));
        }
        let mut seen = HashSet::new();
        for e in &entries {
            if !seen.insert(&e.reference) {
                return Err(Error::GroundTruth(format!(
                    "duplicate reference {}",
                    e.reference
                )));
            }
        }
        Ok(GroundTruth { entries })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: GroundTruth = serde_json::from_str(text)
            .map_err(|e| Error::GroundTruth(format!("parse failure: {e}")))?;
        GroundTruth::new(raw.entries)
    }

    /// Entries that have a true match.
    pub fn evaluable(&self) -> usize {
        self.entries.iter().filter(|e| e.truth.is_some()).count()
    }

    pub fn truth_for(&self, reference: &ColumnKey) -> Option<&TruthEntry> {
        self.entries.iter().find(|e| &e.reference == reference)
    }

    /// Distinct true-match columns.
    pub fn truth_columns(&self) -> Vec<&ColumnKey> {
        let mut out: Vec<&ColumnKey> = self.entries.iter().filter_map(|e| e.truth.as_ref()).collect();
        out.sort();
        out.dedup();
        out
    }

    /// Fails on any entry naming a database or column not present in `handles`.
    pub fn validate_against(&self, handles: &[&DatabaseHandle]) -> Result<()> {
        let exists = |key: &ColumnKey| {
            handles
                .iter()
                .any(|h| h.name == key.db && h.tables_with_column(&key.column).next().is_some())
        };
        for e in &self.entries {
            for key in std::iter::once(&e.reference).chain(e.truth.as_ref()) {
                if !exists(key) {
                    return Err(Error::GroundTruth(format!("dangling column {key}")));
                }
            }
        }
        Ok(())
    }
}

pub fn load_ground_truth(path: impl AsRef<Path>) -> Result<GroundTruth> {
    let path = path.as_ref();
    let text = fs::read_to_string(path)
        .map_err(|e| Error::GroundTruth(format!("{}: {e}", path.display())))?;
    GroundTruth::from_json(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_counts() {
        let gt = GroundTruth::from_json(
            r#"{"entries":[
                {"reference":{"db":"mimic","column":"gender"},"truth":{"db":"eicu","column":"gender"}},
                {"reference":{"db":"mimic","column":"insurance"},"truth":null}
            ]}"#,
        )
        .unwrap();
        assert_eq!(gt.entries.len(), 2);
        assert_eq!(gt.evaluable(), 1);
        assert_eq!(gt.truth_columns(), [&ColumnKey::new("eicu", "gender")]);
    }

    #[test]
    fn rejects_duplicates_and_empty() {
        let dup = r#"{"entries":[
            {"reference":{"db":"m","column":"a"},"truth":null},
            {"reference":{"db":"m","column":"a"},"truth":null}]}"#;
        assert!(GroundTruth::from_json(dup).unwrap_err().to_string().contains("duplicate"));
        let empty = r#"{"entries":[]}"#;
        assert!(GroundTruth::from_json(empty).unwrap_err().to_string().contains("no entries"));
        assert!(GroundTruth::from_json("{").is_err());
    }
}
