use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use colmatch::embedding::{
    embed_database, EmbeddingProvider, EmbeddingSource, EmbeddingStore, HashProvider, Lookup,
    RemoteConfig, RemoteProvider,
};
use colmatch::evaluation::{
    accuracy_at_k, load_ground_truth, render_results, ResultFormat, ScalingSetup,
};
use colmatch::ingest::{list_column_refs, load_database, profile_column, DatabaseHandle};
use colmatch::matcher::{match_columns, EmbeddedColumn, MatchReport};
use colmatch::{par, Error};
use serde::Serialize;
use tracing::info;

use crate::config::{DbEntry, ProviderKind, RunConfig};
use crate::SharedArgs;

fn emit(text: &str) -> Result<()> {
    let mut out = std::io::stdout().lock();
    out.write_all(text.as_bytes())?;
    if !text.ends_with('\n') {
        out.write_all(b"\n")?;
    }
    out.flush()?;
    Ok(())
}

fn load(entry: &DbEntry) -> Result<DatabaseHandle> {
    Ok(load_database(&entry.path, &entry.name)?)
}

fn build_provider(cfg: &RunConfig) -> Result<Box<dyn EmbeddingProvider>> {
    match cfg.provider.kind {
        ProviderKind::Hash => Ok(Box::new(HashProvider::new(cfg.provider.dim)?)),
        ProviderKind::Remote => {
            let endpoint = cfg.provider.endpoint.clone().context("remote provider needs an endpoint")?;
            let remote = RemoteProvider::new(RemoteConfig::new(endpoint, cfg.provider.dim))?;
            let health = remote.health()?;
            info!(model = %health.model, dim = health.dim, "remote provider healthy");
            Ok(Box::new(remote))
        }
    }
}

/// Opens the store read-only; a store that was never created means every
/// column in `dbs` lacks an embedding.
fn open_store(path: &Path, dbs: &[&DatabaseHandle]) -> Result<EmbeddingStore> {
    match EmbeddingStore::open(path) {
        Ok(s) => Ok(s),
        Err(Error::NotFound(_)) => {
            let missing = dbs
                .iter()
                .flat_map(|db| list_column_refs(db))
                .map(|c| c.label())
                .collect();
            Err(Error::MissingEmbeddings(missing).into())
        }
        Err(e) => Err(e.into()),
    }
}

#[derive(Serialize)]
struct ProfileRow {
    column: String,
    dtype: String,
    tables: Vec<String>,
    unique_count: usize,
    total_count: u64,
    null_count: u64,
}

pub fn profile(path: &Path, name: Option<&str>, shared: &SharedArgs) -> Result<()> {
    let name = match name {
        Some(n) => n.to_string(),
        None => path
            .canonicalize()
            .ok()
            .and_then(|p| p.file_name().map(|s| s.to_string_lossy().into_owned()))
            .unwrap_or_else(|| "db".into()),
    };
    let db = load_database(path, &name)?;
    let refs = list_column_refs(&db);
    let profiles = par::try_map(&refs, |r| profile_column(&db, &r.column_name))?;
    let rows: Vec<ProfileRow> = profiles
        .into_iter()
        .map(|p| ProfileRow {
            column: p.column.column_name,
            dtype: p.dtype.as_str().to_string(),
            tables: p.column.tables,
            unique_count: p.unique_values.len(),
            total_count: p.total_count,
            null_count: p.null_count,
        })
        .collect();

    let text = match shared.format.unwrap_or(ResultFormat::Table) {
        ResultFormat::Json => serde_json::to_string_pretty(&rows)?,
        ResultFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["column", "dtype", "tables", "unique_count", "total_count", "null_count"])?;
            for r in &rows {
                w.write_record([
                    r.column.clone(),
                    r.dtype.clone(),
                    r.tables.join(";"),
                    r.unique_count.to_string(),
                    r.total_count.to_string(),
                    r.null_count.to_string(),
                ])?;
            }
            String::from_utf8(w.into_inner()?)?
        }
        ResultFormat::Table => {
            let mut s = format!("{} ({} tables, {} columns)\n", db.name, db.tables.len(), rows.len());
            for r in &rows {
                s += &format!(
                    "{}: {}, uniques {}, total {}, nulls {} [{}]\n",
                    r.column,
                    r.dtype,
                    r.unique_count,
                    r.total_count,
                    r.null_count,
                    r.tables.join(", ")
                );
            }
            s
        }
    };
    emit(&text)
}

pub fn embed(shared: &SharedArgs) -> Result<()> {
    let cfg = RunConfig::load(shared.config.as_deref(), shared)?;
    let mut entries = vec![cfg.reference()?.clone()];
    entries.extend(cfg.unknowns()?.iter().cloned());
    let dbs = entries.iter().map(load).collect::<Result<Vec<_>>>()?;

    let provider = build_provider(&cfg)?;
    let store = EmbeddingStore::open_or_create(&cfg.store, provider.id(), provider.dim())?;

    let mut out = String::new();
    for db in &dbs {
        let summary = embed_database(db, &store, provider.as_ref(), cfg.provider.chunk_size, shared.force)?;
        for key in &summary.written {
            out += &format!("wrote {key}\n");
        }
        for key in &summary.up_to_date {
            out += &format!("skipped {key} (up to date)\n");
        }
        for (key, reason) in &summary.skipped {
            out += &format!("skipped {key} ({reason})\n");
        }
        out += &format!(
            "{}: {} written, {} up to date, {} not embeddable\n",
            db.name,
            summary.written.len(),
            summary.up_to_date.len(),
            summary.skipped.len()
        );
    }
    emit(&out)
}

pub fn run_match(shared: &SharedArgs, output: Option<&Path>) -> Result<()> {
    let cfg = RunConfig::load(shared.config.as_deref(), shared)?;
    let reference = load(cfg.reference()?)?;
    let unknowns = cfg.unknowns()?.iter().map(load).collect::<Result<Vec<_>>>()?;

    let columns = if cfg.columns.is_empty() {
        list_column_refs(&reference).into_iter().map(|c| c.column_name).collect()
    } else {
        cfg.columns.clone()
    };
    let mut all = vec![&reference];
    all.extend(unknowns.iter());
    let store = open_store(&cfg.store, &all)?;
    let source = EmbeddingSource {
        store: &store,
        provider: None,
        chunk_size: cfg.provider.chunk_size,
    };
    let report = match_columns(&reference, &columns, &unknowns, &source, &cfg.matching)?;
    let json = report.to_json()?;
    match output {
        Some(p) => {
            fs::write(p, format!("{json}\n")).with_context(|| format!("writing {}", p.display()))?;
            Ok(())
        }
        None => emit(&json),
    }
}

pub fn eval(report: &Path, truth: &Path, ks: Option<Vec<usize>>, shared: &SharedArgs) -> Result<()> {
    let text = fs::read_to_string(report).with_context(|| format!("reading {}", report.display()))?;
    let report = MatchReport::from_json(&text)?;
    let truth = load_ground_truth(truth)?;
    let ks = ks.unwrap_or_else(|| (1..=report.config.k).collect());
    if ks.is_empty() {
        bail!("no k values given");
    }
    let results = ks
        .iter()
        .map(|&k| accuracy_at_k(&report, &truth, k))
        .collect::<colmatch::Result<Vec<_>>>()?;
    emit(&render_results(&results, shared.format.unwrap_or(ResultFormat::Csv))?)
}

fn parse_counts(raw: &[String], pool: usize) -> Result<Vec<usize>> {
    raw.iter()
        .map(|s| match s.trim() {
            "all" => Ok(pool),
            n => n
                .parse::<usize>()
                .with_context(|| format!("bad distractor count `{n}`")),
        })
        .collect()
}

pub fn scale(raw_counts: &[String], truth: Option<PathBuf>, shared: &SharedArgs) -> Result<()> {
    let cfg = RunConfig::load(shared.config.as_deref(), shared)?;
    let truth_path = truth
        .or_else(|| cfg.truth.clone())
        .context("scale needs a ground-truth file (--truth or `truth` in the config)")?;
    let truth = load_ground_truth(&truth_path)?;
    let reference = load(cfg.reference()?)?;
    let unknowns = cfg.unknowns()?.iter().map(load).collect::<Result<Vec<_>>>()?;
    let mut all = vec![&reference];
    all.extend(unknowns.iter());
    truth.validate_against(&all)?;

    let store = open_store(&cfg.store, &all)?;
    let source = EmbeddingSource {
        store: &store,
        provider: None,
        chunk_size: cfg.provider.chunk_size,
    };

    let mut missing = Vec::new();
    let mut references = Vec::new();
    for column in list_column_refs(&reference) {
        let wanted = truth
            .entries
            .iter()
            .any(|e| e.reference.matches(&column));
        if !wanted {
            continue;
        }
        match source.lookup(&reference, &column)? {
            Lookup::Ready(v, m) => references.push(EmbeddedColumn::new(v, m)),
            Lookup::Skipped(_) => {}
            Lookup::Missing => missing.push(column.label()),
        }
    }

    let truth_columns = truth.truth_columns();
    let mut true_matches = Vec::new();
    let mut distractors = Vec::new();
    for db in &unknowns {
        for column in list_column_refs(db) {
            match source.lookup(db, &column)? {
                Lookup::Ready(v, m) => {
                    let col = EmbeddedColumn::new(v, m);
                    if truth_columns.iter().any(|t| t.matches(&column)) {
                        true_matches.push(col);
                    } else {
                        distractors.push(col);
                    }
                }
                Lookup::Skipped(_) => {}
                Lookup::Missing => missing.push(column.label()),
            }
        }
    }
    if !missing.is_empty() {
        return Err(Error::MissingEmbeddings(missing).into());
    }

    let counts = parse_counts(raw_counts, distractors.len())?;
    let unknown_names: Vec<String> = unknowns.iter().map(|d| d.name.clone()).collect();
    let setup = ScalingSetup {
        reference_db: &reference.name,
        unknown_dbs: &unknown_names,
        references: &references,
        true_matches: &true_matches,
        distractors: &distractors,
        truth: &truth,
        config: cfg.matching,
    };
    let results = colmatch::evaluation::scaling_experiment(&setup, &counts, cfg.seed)?;
    emit(&render_results(&results, shared.format.unwrap_or(ResultFormat::Csv))?)
}
