use std::cmp::Ordering;
use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};

use super::database::{csv_reader, DatabaseHandle};
use super::value::{cast_value_to_text, infer_data_type, is_null_cell, DataType, RawValue};
use crate::error::{Error, Result};

/// A column name within a database, plus every table that has a column of that name.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ColumnRef {
    #[serde(rename = "db")]
    pub database: String,
    #[serde(rename = "column")]
    pub column_name: String,
    /// Sorted ascending, never empty.
    pub tables: Vec<String>,
}

impl ColumnRef {
    pub fn new(
        database: impl Into<String>,
        column_name: impl Into<String>,
        tables: impl IntoIterator<Item = impl Into<String>>,
    ) -> Self {
        let mut tables: Vec<String> = tables.into_iter().map(Into::into).collect();
        tables.sort();
        tables.dedup();
        ColumnRef {
            database: database.into(),
            column_name: column_name.into(),
            tables,
        }
    }

    /// `db.column`, used in logs and error messages.
    pub fn label(&self) -> String {
        format!("{}.{}", self.database, self.column_name)
    }

    /// Ordering by `(database, column_name)`, the tie-break used everywhere.
    pub fn cmp_key(&self, other: &Self) -> Ordering {
        self.database
            .cmp(&other.database)
            .then_with(|| self.column_name.cmp(&other.column_name))
    }

    pub fn same_column(&self, database: &str, column_name: &str) -> bool {
        self.database == database && self.column_name == column_name
    }
}

/// Deduplicated, text-cast values of one column plus counts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColumnProfile {
    #[serde(rename = "ref")]
    pub column: ColumnRef,
    pub dtype: DataType,
    /// First-seen order, no duplicates, no nulls.
    pub unique_values: Vec<String>,
    pub total_count: u64,
    pub null_count: u64,
}

/// One ref per distinct column name, sorted by name.
pub fn list_column_refs(db: &DatabaseHandle) -> Vec<ColumnRef> {
    let mut by_name: BTreeMap<&str, Vec<&str>> = BTreeMap::new();
    for table in &db.tables {
        for column in &table.columns {
            by_name.entry(column).or_default().push(&table.name);
        }
    }
    by_name
        .into_iter()
        .map(|(column, tables)| ColumnRef::new(&db.name, column, tables))
        .collect()
}

/// Reads, null-filters, casts and deduplicates every value of `column_name`,
/// pooling all tables that contain it (visited in table-name order).
pub fn profile_column(db: &DatabaseHandle, column_name: &str) -> Result<ColumnProfile> {
    let tables: Vec<_> = db.tables_with_column(column_name).collect();
    if tables.is_empty() {
        return Err(Error::UnknownColumn {
            database: db.name.clone(),
            column: column_name.to_string(),
        });
    }

    let mut seen = HashSet::new();
    let mut unique_values = Vec::new();
    let mut total_count = 0u64;
    let mut null_count = 0u64;

    for table in &tables {
        let idx = table
            .column_index(column_name)
            .expect("filtered by tables_with_column");
        let mut reader = csv_reader(&table.path)?;
        for record in reader.records() {
            let record = record.map_err(|source| Error::Csv {
                path: table.path.clone(),
                source,
            })?;
            total_count += 1;
            let cell = record.get(idx).unwrap_or("");
            if is_null_cell(cell) {
                null_count += 1;
                continue;
            }
            let text = cast_value_to_text(&RawValue::parse_cell(cell));
            if seen.insert(text.clone()) {
                unique_values.push(text);
            }
        }
    }

    Ok(ColumnProfile {
        column: ColumnRef::new(&db.name, column_name, tables.iter().map(|t| t.name.as_str())),
        dtype: infer_data_type(&unique_values),
        unique_values,
        total_count,
        null_count,
    })
}
