use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::accuracy::EvalResult;
use crate::error::{Error, Result};
use crate::matcher::MatchMode;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ResultFormat {
    Json,
    Csv,
    Table,
}

impl FromStr for ResultFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(ResultFormat::Json),
            "csv" => Ok(ResultFormat::Csv),
            "table" => Ok(ResultFormat::Table),
            other => Err(Error::Invalid(format!("unknown format `{other}`"))),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct ResultRow {
    mode: MatchMode,
    k: usize,
    distractor_count: Option<usize>,
    correct: usize,
    evaluable: usize,
    accuracy: f64,
    ratio: String,
}

/// Serializes results; csv columns are `mode,k,distractor_count,correct,evaluable,accuracy`.
pub fn render_results(results: &[EvalResult], format: ResultFormat) -> Result<String> {
    if results.is_empty() {
        return Err(Error::Invalid("no results to render".into()));
    }
    match format {
        ResultFormat::Json => {
            let rows: Vec<ResultRow> = results
                .iter()
                .map(|r| ResultRow {
                    mode: r.mode,
                    k: r.k,
                    distractor_count: r.distractor_count,
                    correct: r.correct,
                    evaluable: r.evaluable,
                    accuracy: r.accuracy,
                    ratio: r.ratio(),
                })
                .collect();
            let mut out = serde_json::to_string_pretty(&rows)?;
            out.push('\n');
            Ok(out)
        }
        ResultFormat::Csv => {
            let mut out = String::from("mode,k,distractor_count,correct,evaluable,accuracy\n");
            for r in results {
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{:.6}",
                    r.mode,
                    r.k,
                    r.distractor_count.map(|n| n.to_string()).unwrap_or_default(),
                    r.correct,
                    r.evaluable,
                    r.accuracy
                );
            }
            Ok(out)
        }
        ResultFormat::Table => Ok(render_table(results)),
    }
}

fn render_table(results: &[EvalResult]) -> String {
    let mut sorted: Vec<&EvalResult> = results.iter().collect();
    sorted.sort_by(|a, b| {
        a.mode
            .cmp(&b.mode)
            .then(a.distractor_count.cmp(&b.distractor_count))
            .then(a.k.cmp(&b.k))
    });
    let header = ["mode", "distractors", "k", "correct", "accuracy"];
    let rows: Vec<[String; 5]> = sorted
        .iter()
        .map(|r| {
            [
                r.mode.to_string(),
                r.distractor_count.map(|n| n.to_string()).unwrap_or_else(|| "-".into()),
                r.k.to_string(),
                r.ratio(),
                format!("{:.3}", r.accuracy),
            ]
        })
        .collect();
    let mut widths = header.map(str::len);
    for row in &rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let mut out = String::new();
    let line = |out: &mut String, cells: &[&str]| {
        let parts: Vec<String> = cells
            .iter()
            .zip(widths)
            .enumerate()
            .map(|(i, (c, w))| if i == 0 { format!("{c:<w$}") } else { format!("{c:>w$}") })
            .collect();
        out.push_str(parts.join("  ").trim_end());
        out.push('\n');
    };
    line(&mut out, &header);
    for row in &rows {
        let cells: Vec<&str> = row.iter().map(String::as_str).collect();
        line(&mut out, &cells);
    }
    out
}

/// Parses the JSON produced by [`render_results`].
pub fn load_results(json: &str) -> Result<Vec<EvalResult>> {
    let rows: Vec<ResultRow> = serde_json::from_str(json)?;
    rows.into_iter()
        .map(|row| {
            let mut r = EvalResult::new(row.mode, row.k, row.correct, row.evaluable)?;
            if r.accuracy != row.accuracy {
                return Err(Error::Invalid(format!(
                    "accuracy {} does not equal {}",
                    row.accuracy,
                    r.ratio()
                )));
            }
            r.distractor_count = row.distractor_count;
            Ok(r)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn result(mode: MatchMode, k: usize, n: Option<usize>, correct: usize) -> EvalResult {
        let mut r = EvalResult::new(mode, k, correct, 13).unwrap();
        r.distractor_count = n;
        r
    }

    #[test]
    fn csv_one_row() {
        let out = render_results(&[result(MatchMode::ValuesOnly, 3, Some(20), 7)], ResultFormat::Csv).unwrap();
        assert_eq!(
            out,
            "mode,k,distractor_count,correct,evaluable,accuracy\nvalues_only,3,20,7,13,0.538462\n"
        );
        let out = render_results(&[result(MatchMode::ValuesOnly, 1, None, 7)], ResultFormat::Csv).unwrap();
        assert!(out.ends_with("values_only,1,,7,13,0.538462\n"));
    }

    #[test]
    fn json_round_trip() {
        let results = vec![
            result(MatchMode::ValuesOnly, 3, Some(20), 7),
            result(MatchMode::MetadataRerank, 3, None, 12),
        ];
        let json = render_results(&results, ResultFormat::Json).unwrap();
        assert!(json.contains("\"ratio\": \"12/13\""));
        assert_eq!(load_results(&json).unwrap(), results);
    }

    #[test]
    fn table_sorted_and_aligned() {
        let results = vec![
            result(MatchMode::MetadataRerank, 1, Some(0), 10),
            result(MatchMode::ValuesOnly, 2, Some(50), 6),
            result(MatchMode::ValuesOnly, 1, Some(50), 5),
            result(MatchMode::ValuesOnly, 1, Some(0), 6),
        ];
        let table = render_results(&results, ResultFormat::Table).unwrap();
        let lines: Vec<&str> = table.lines().collect();
        assert_eq!(lines.len(), 5);
        assert!(lines[1].starts_with("values_only") && lines[1].contains(" 0 "));
        assert!(lines[2].contains("5/13"));
        assert!(lines[3].contains("6/13"));
        assert!(lines[4].starts_with("metadata_rerank"));
        let width = lines[0].len();
        assert!(lines.iter().all(|l| l.len() == width), "{table}");
    }

    #[test]
    fn empty_is_error() {
        assert!(render_results(&[], ResultFormat::Csv).is_err());
    }
}
