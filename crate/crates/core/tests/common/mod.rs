#![allow(dead_code)]

pub mod criteria;

use std::cmp::Ordering;
use std::path::{Path, PathBuf};

use colmatch::embedding::{
    embed_column, embed_metadata, hash_embed, ColumnEmbedding, HashProvider, DEFAULT_CHUNK_SIZE,
};
use colmatch::ingest::{
    infer_data_type, list_column_refs, load_database, profile_column, ColumnProfile, ColumnRef,
    DatabaseHandle,
};
use colmatch::matcher::EmbeddedColumn;
use rand::seq::SliceRandom;
use rand::Rng;

pub fn fixtures_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

pub fn mimic() -> DatabaseHandle {
    load_database(fixtures_dir().join("mini-mimic"), "mimic").unwrap()
}

pub fn eicu() -> DatabaseHandle {
    load_database(fixtures_dir().join("mini-eicu"), "eicu").unwrap()
}

/// Every embeddable column of `db`, embedded with hash-v1 at dim 384.
pub fn embed_db(db: &DatabaseHandle) -> Vec<EmbeddedColumn> {
    let provider = HashProvider::default();
    list_column_refs(db)
        .iter()
        .filter_map(|r| {
            let profile = profile_column(db, &r.column_name).unwrap();
            let values = embed_column(&profile, &provider, DEFAULT_CHUNK_SIZE).ok()?;
            let meta = embed_metadata(&profile.column, profile.dtype, &provider).unwrap();
            Some(EmbeddedColumn::new(values, meta))
        })
        .collect()
}

fn random_token<R: Rng>(rng: &mut R, alphabet: &[u8]) -> String {
    let len = rng.gen_range(1..=12);
    (0..len).map(|_| *alphabet.choose(rng).unwrap() as char).collect()
}

/// Profiles with random unique values; roughly one column in eight is a
/// renamed copy of an earlier one so exact score ties occur.
pub fn random_profiles<R: Rng>(rng: &mut R, db: &str, columns: usize, max_values: usize) -> Vec<ColumnProfile> {
    let alphabets: [&[u8]; 3] = [b"abcdefgh", b"0123456789", b"xyz01-. "];
    let mut out: Vec<ColumnProfile> = Vec::with_capacity(columns);
    for i in 0..columns {
        let column = ColumnRef::new(db, format!("c{i:03}"), [format!("t{}", i % 5)]);
        if i > 0 && rng.gen_ratio(1, 8) {
            let src = out[rng.gen_range(0..i)].clone();
            out.push(ColumnProfile { column, ..src });
            continue;
        }
        let alphabet = alphabets[rng.gen_range(0..alphabets.len())];
        let n = rng.gen_range(1..=max_values);
        let mut values: Vec<String> = Vec::with_capacity(n);
        for _ in 0..n {
            let v = random_token(rng, alphabet);
            if !v.trim().is_empty() && !values.contains(&v) {
                values.push(v);
            }
        }
        if values.is_empty() {
            values.push("a".into());
        }
        let dtype = infer_data_type(&values);
        out.push(ColumnProfile {
            column,
            dtype,
            total_count: values.len() as u64,
            null_count: 0,
            unique_values: values,
        });
    }
    out
}

pub fn embed_profiles(profiles: &[ColumnProfile]) -> Vec<ColumnEmbedding> {
    let provider = HashProvider::default();
    profiles
        .iter()
        .map(|p| embed_column(p, &provider, DEFAULT_CHUNK_SIZE).unwrap())
        .collect()
}

/// Reference scorer: recomputes every mean from scratch and scores all
/// pairs with a plain loop, no shared code with the engine beyond the
/// hash embedding itself.
pub mod brute {
    use super::*;

    pub fn mean(values: &[String], dim: usize) -> Vec<f32> {
        let mut sum = vec![0.0f64; dim];
        for v in values {
            let e = hash_embed(v, dim);
            for d in 0..dim {
                sum[d] += e[d] as f64;
            }
        }
        let n = values.len() as f64;
        sum.iter().map(|s| (s / n) as f32).collect()
    }

    pub fn cosine(x: &[f32], y: &[f32]) -> f64 {
        let mut dot = 0.0f64;
        let mut xx = 0.0f64;
        let mut yy = 0.0f64;
        for i in 0..x.len() {
            let a = x[i] as f64;
            let b = y[i] as f64;
            dot += a * b;
            xx += a * a;
            yy += b * b;
        }
        let c = dot / (xx.sqrt() * yy.sqrt());
        c.max(-1.0).min(1.0)
    }

    pub type Scored = (String, String, f64);

    pub fn means(pool: &[ColumnProfile], dim: usize) -> Vec<(String, String, Vec<f32>)> {
        pool.iter()
            .map(|p| {
                let c = &p.column;
                (c.database.clone(), c.column_name.clone(), mean(&p.unique_values, dim))
            })
            .collect()
    }

    /// `(db, column, score)` for every candidate, best first.
    pub fn rank(query: &[f32], pool: &[(String, String, Vec<f32>)]) -> Vec<Scored> {
        let mut all: Vec<Scored> = pool
            .iter()
            .map(|(db, col, m)| (db.clone(), col.clone(), cosine(query, m)))
            .collect();
        all.sort_by(|a, b| match b.2.partial_cmp(&a.2).unwrap() {
            Ordering::Equal => (&a.0, &a.1).cmp(&(&b.0, &b.1)),
            o => o,
        });
        all
    }
}
