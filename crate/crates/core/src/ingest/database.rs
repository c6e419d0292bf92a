use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};

use tracing::debug;

use super::value::{is_null_cell, RawValue};
use crate::error::{Error, Result};

/// One `<table>.csv` file and its header-derived column list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableDescriptor {
    pub name: String,
    pub path: PathBuf,
    pub columns: Vec<String>,
}

impl TableDescriptor {
    pub fn column_index(&self, column: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == column)
    }
}

/// A loaded database: its name, root directory and table headers.
///
/// Immutable once loaded; cell values are only read when a column is profiled.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DatabaseHandle {
    pub name: String,
    pub root: PathBuf,
    /// Sorted by table name.
    pub tables: Vec<TableDescriptor>,
}

impl DatabaseHandle {
    pub fn table(&self, name: &str) -> Option<&TableDescriptor> {
        self.tables.iter().find(|t| t.name == name)
    }

    /// Tables containing a column called `column`, in table-name order.
    pub fn tables_with_column<'a>(
        &'a self,
        column: &'a str,
    ) -> impl Iterator<Item = &'a TableDescriptor> + 'a {
        self.tables
            .iter()
            .filter(move |t| t.column_index(column).is_some())
    }
}

pub(crate) fn csv_reader(path: &Path) -> Result<csv::Reader<fs::File>> {
    csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(false)
        .from_path(path)
        .map_err(|source| Error::Csv {
            path: path.to_path_buf(),
            source,
        })
}

fn malformed(path: &Path, reason: impl Into<String>) -> Error {
    Error::MalformedHeader {
        path: path.to_path_buf(),
        reason: reason.into(),
    }
}

fn read_header(path: &Path) -> Result<Vec<String>> {
    let mut reader = csv_reader(path)?;
    let header = reader.headers().map_err(|source| Error::Csv {
        path: path.to_path_buf(),
        source,
    })?;
    if header.is_empty() {
        return Err(malformed(path, "file has no header row"));
    }
    let mut seen = BTreeSet::new();
    let mut columns = Vec::with_capacity(header.len());
    for cell in header.iter() {
        let name = cell.trim();
        if is_null_cell(name) {
            return Err(malformed(path, "empty column name"));
        }
        // A header made of data-looking cells means the header row is missing.
        if !matches!(RawValue::parse_cell(name), RawValue::Text(_)) || name.parse::<f64>().is_ok_and(f64::is_finite)
        {
            return Err(malformed(
                path,
                format!("`{name}` looks like a value, not a column name"),
            ));
        }
        if !seen.insert(name.to_string()) {
            return Err(malformed(path, format!("duplicate column `{name}`")));
        }
        columns.push(name.to_string());
    }
    Ok(columns)
}

/// Loads the table layout of the CSV database rooted at `root`.
pub fn load_database(root: impl AsRef<Path>, name: &str) -> Result<DatabaseHandle> {
    let root = root.as_ref();
    if !root.is_dir() {
        return Err(Error::MissingRoot(root.to_path_buf()));
    }
    if name.trim().is_empty() {
        return Err(Error::Invalid("database name must not be empty".into()));
    }

    let mut files: Vec<(String, PathBuf)> = Vec::new();
    for entry in fs::read_dir(root)? {
        let path = entry?.path();
        if !path.is_file() {
            continue;
        }
        let is_csv = path
            .extension()
            .and_then(|e| e.to_str())
            .is_some_and(|e| e.eq_ignore_ascii_case("csv"));
        if !is_csv {
            continue;
        }
        let Some(stem) = path.file_stem().and_then(|s| s.to_str()) else {
            continue;
        };
        files.push((stem.to_string(), path));
    }
    if files.is_empty() {
        return Err(Error::EmptyDatabase(root.to_path_buf()));
    }
    files.sort();

    let mut tables = Vec::with_capacity(files.len());
    for (table, path) in files {
        if tables.iter().any(|t: &TableDescriptor| t.name == table) {
            return Err(Error::DuplicateTable(table));
        }
        let columns = read_header(&path)?;
        debug!(table = %table, columns = columns.len(), "loaded table header");
        tables.push(TableDescriptor {
            name: table,
            path,
            columns,
        });
    }

    Ok(DatabaseHandle {
        name: name.to_string(),
        root: root.to_path_buf(),
        tables,
    })
}
