use std::fmt;
use std::str::FromStr;

use chrono::{NaiveDate, NaiveDateTime};
use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Coarse column data type inferred from text-cast values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DataType {
    Integer,
    Float,
    Timestamp,
    Text,
    Mixed,
}

impl DataType {
    /// Lowercase enum word, also the text that gets embedded as metadata.
    pub fn as_str(self) -> &'static str {
        match self {
            DataType::Integer => "integer",
            DataType::Float => "float",
            DataType::Timestamp => "timestamp",
            DataType::Text => "text",
            DataType::Mixed => "mixed",
        }
    }
}

impl fmt::Display for DataType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for DataType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "integer" => Ok(DataType::Integer),
            "float" => Ok(DataType::Float),
            "timestamp" => Ok(DataType::Timestamp),
            "text" => Ok(DataType::Text),
            "mixed" => Ok(DataType::Mixed),
            other => Err(Error::Invalid(format!("unknown data type `{other}`"))),
        }
    }
}

/// A typed, non-null cell value.
#[derive(Debug, Clone, PartialEq)]
pub enum RawValue {
    Integer(i64),
    Float(f64),
    Date(NaiveDate),
    DateTime(NaiveDateTime),
    Text(String),
}

const DATETIME_FORMATS: &[&str] = &["%Y-%m-%dT%H:%M:%S%.f", "%Y-%m-%d %H:%M:%S%.f"];

fn parse_timestamp(s: &str) -> Option<RawValue> {
    for fmt in DATETIME_FORMATS {
        if let Ok(ts) = NaiveDateTime::parse_from_str(s, fmt) {
            return Some(RawValue::DateTime(ts));
        }
    }
    NaiveDate::parse_from_str(s, "%Y-%m-%d")
        .ok()
        .map(RawValue::Date)
}

fn is_canonical_integer(s: &str) -> bool {
    let digits = s.strip_prefix('-').unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return false;
    }
    if digits == "0" {
        return !s.starts_with('-');
    }
    !digits.starts_with('0')
}

impl RawValue {
    /// Types a CSV cell without losing information.
    ///
    /// A cell only becomes a number when casting it back to text reproduces
    /// the trimmed cell exactly, so codes such as `0389` or `410.70` stay text.
    /// Timestamps are the one normalizing case: they are re-rendered in
    /// ISO-8601 form.
    pub fn parse_cell(cell: &str) -> RawValue {
        let s = cell.trim();
        if is_canonical_integer(s) {
            if let Ok(i) = s.parse::<i64>() {
                return RawValue::Integer(i);
            }
        }
        if s.contains('.') {
            if let Ok(f) = s.parse::<f64>() {
                if f.is_finite() && format_float(f) == s {
                    return RawValue::Float(f);
                }
            }
        }
        if let Some(ts) = parse_timestamp(s) {
            return ts;
        }
        RawValue::Text(s.to_string())
    }
}

fn format_float(f: f64) -> String {
    // `Display` for f64 emits the shortest string that round-trips.
    format!("{f}")
}

/// Canonical text form of a non-null cell value.
pub fn cast_value_to_text(raw: &RawValue) -> String {
    match raw {
        RawValue::Integer(i) => i.to_string(),
        RawValue::Float(f) => format_float(*f),
        RawValue::Date(d) => d.format("%Y-%m-%d").to_string(),
        RawValue::DateTime(ts) => ts.format("%Y-%m-%dT%H:%M:%S%.f").to_string(),
        RawValue::Text(s) => s.trim().to_string(),
    }
}

/// Empty cells and a literal `NULL` (any case) are nulls.
pub fn is_null_cell(cell: &str) -> bool {
    let s = cell.trim();
    s.is_empty() || s.eq_ignore_ascii_case("null")
}

fn is_number(s: &str) -> bool {
    s.parse::<f64>().map(f64::is_finite).unwrap_or(false)
}

/// Infers a column type from its text-cast values.
///
/// All integers → integer; all numbers → float; all ISO-8601 timestamps →
/// timestamp; numbers mixed with anything else → mixed; otherwise text.
/// An empty column is text.
pub fn infer_data_type<S: AsRef<str>>(values: &[S]) -> DataType {
    if values.is_empty() {
        return DataType::Text;
    }
    let mut all_int = true;
    let mut all_num = true;
    let mut all_ts = true;
    let mut any_num = false;
    for v in values {
        let v = v.as_ref();
        let num = is_number(v);
        any_num |= num;
        all_num &= num;
        all_int &= num && v.parse::<i64>().is_ok();
        all_ts &= parse_timestamp(v).is_some();
    }
    if all_int {
        DataType::Integer
    } else if all_num {
        DataType::Float
    } else if all_ts {
        DataType::Timestamp
    } else if any_num {
        DataType::Mixed
    } else {
        DataType::Text
    }
}
