use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use colmatch::embedding::{DEFAULT_CHUNK_SIZE, DEFAULT_DIM};
use colmatch::matcher::{MatchConfig, MatchMode, DEFAULT_K, DEFAULT_THRESHOLD};
use serde::Deserialize;

use crate::SharedArgs;

pub const DEFAULT_STORE: &str = "colmatch-store";
pub const DEFAULT_SEED: u64 = 0;

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DbEntry {
    pub name: String,
    pub path: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum ProviderKind {
    Hash,
    Remote,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ProviderSection {
    kind: Option<ProviderKind>,
    endpoint: Option<String>,
    dim: Option<usize>,
    chunk_size: Option<usize>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct MatchSection {
    k: Option<usize>,
    threshold: Option<f64>,
    mode: Option<String>,
}

/// On-disk shape of the TOML run file; every field is optional so flags can fill gaps.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    store: Option<PathBuf>,
    truth: Option<PathBuf>,
    seed: Option<u64>,
    #[serde(default)]
    columns: Vec<String>,
    reference: Option<DbEntry>,
    #[serde(default)]
    unknown: Vec<DbEntry>,
    #[serde(default)]
    provider: ProviderSection,
    #[serde(default, rename = "match")]
    matching: MatchSection,
}

#[derive(Debug, Clone)]
pub struct ProviderSettings {
    pub kind: ProviderKind,
    pub endpoint: Option<String>,
    pub dim: usize,
    pub chunk_size: usize,
}

/// Resolved settings after applying flag overrides.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub reference: Option<DbEntry>,
    pub unknown: Vec<DbEntry>,
    pub columns: Vec<String>,
    pub truth: Option<PathBuf>,
    pub provider: ProviderSettings,
    pub matching: MatchConfig,
    pub store: PathBuf,
    pub seed: u64,
}

fn resolve(base: &Path, p: PathBuf) -> PathBuf {
    if p.is_absolute() {
        p
    } else {
        base.join(p)
    }
}

impl RunConfig {
    /// Reads `path` (if any) and applies `flags` on top.
    ///
    /// Relative paths inside the file resolve against the file's directory.
    pub fn load(path: Option<&Path>, flags: &SharedArgs) -> Result<Self> {
        let (raw, base) = match path {
            Some(p) => {
                let text = fs::read_to_string(p)
                    .with_context(|| format!("reading config {}", p.display()))?;
                let raw: RawConfig = toml::from_str(&text)
                    .with_context(|| format!("parsing config {}", p.display()))?;
                let base = p.parent().map(Path::to_path_buf).unwrap_or_default();
                (raw, base)
            }
            None => (RawConfig::default(), PathBuf::new()),
        };

        let fix = |e: DbEntry| DbEntry {
            path: resolve(&base, e.path),
            name: e.name,
        };

        let mode = match flags.mode.as_deref().or(raw.matching.mode.as_deref()) {
            Some(m) => m.parse::<MatchMode>()?,
            None => MatchMode::ValuesOnly,
        };
        let matching = MatchConfig::new(
            flags.k.or(raw.matching.k).unwrap_or(DEFAULT_K),
            flags
                .threshold
                .or(raw.matching.threshold)
                .unwrap_or(DEFAULT_THRESHOLD),
            mode,
        )?;

        let provider = ProviderSettings {
            kind: flags
                .provider
                .or(raw.provider.kind)
                .unwrap_or(ProviderKind::Hash),
            endpoint: flags.endpoint.clone().or(raw.provider.endpoint),
            dim: flags.dim.or(raw.provider.dim).unwrap_or(DEFAULT_DIM),
            chunk_size: flags
                .chunk_size
                .or(raw.provider.chunk_size)
                .unwrap_or(DEFAULT_CHUNK_SIZE),
        };
        if provider.dim == 0 {
            bail!("dim must be >= 1");
        }
        if provider.chunk_size == 0 {
            bail!("chunk size must be >= 1");
        }
        if provider.kind == ProviderKind::Remote && provider.endpoint.is_none() {
            bail!("the remote provider needs an endpoint (--endpoint or provider.endpoint)");
        }

        let store = match (&flags.store, raw.store) {
            (Some(s), _) => s.clone(),
            (None, Some(s)) => resolve(&base, s),
            (None, None) => PathBuf::from(DEFAULT_STORE),
        };

        Ok(RunConfig {
            reference: raw.reference.map(fix),
            unknown: raw.unknown.into_iter().map(fix).collect(),
            columns: raw.columns,
            truth: raw.truth.map(|t| resolve(&base, t)),
            provider,
            matching,
            store,
            seed: flags.seed.or(raw.seed).unwrap_or(DEFAULT_SEED),
        })
    }

    pub fn reference(&self) -> Result<&DbEntry> {
        self.reference
            .as_ref()
            .context("config has no [reference] database")
    }

    pub fn unknowns(&self) -> Result<&[DbEntry]> {
        if self.unknown.is_empty() {
            bail!("config has no [[unknown]] databases");
        }
        Ok(&self.unknown)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn write(dir: &Path, body: &str) -> PathBuf {
        let p = dir.join("run.toml");
        fs::write(&p, body).unwrap();
        p
    }

    #[test]
    fn file_values_and_flag_overrides() {
        let dir = tempfile::tempdir().unwrap();
        let p = write(
            dir.path(),
            r#"
store = "emb"
seed = 9
columns = ["gender"]

[reference]
name = "mimic"
path = "mini-mimic"

[[unknown]]
name = "eicu"
path = "/abs/eicu"

[match]
k = 2
threshold = 0.0
mode = "metadata"
"#,
        );
        let flags = SharedArgs {
            k: Some(1),
            ..SharedArgs::default()
        };
        let cfg = RunConfig::load(Some(&p), &flags).unwrap();
        assert_eq!(cfg.matching.k, 1);
        assert_eq!(cfg.matching.threshold, 0.0);
        assert_eq!(cfg.matching.mode, MatchMode::MetadataRerank);
        assert_eq!(cfg.store, dir.path().join("emb"));
        assert_eq!(cfg.reference().unwrap().path, dir.path().join("mini-mimic"));
        assert_eq!(cfg.unknown[0].path, PathBuf::from("/abs/eicu"));
        assert_eq!(cfg.seed, 9);
        assert_eq!(cfg.provider.dim, DEFAULT_DIM);
    }

    #[test]
    fn rejects_bad_values() {
        let dir = tempfile::tempdir().unwrap();
        for body in [
            "[match]\nk = 0\n",
            "[match]\nmode = \"fuzzy\"\n",
            "[provider]\ndim = 0\n",
            "[provider]\nkind = \"remote\"\n",
            "bogus = 1\n",
        ] {
            let p = write(dir.path(), body);
            assert!(RunConfig::load(Some(&p), &SharedArgs::default()).is_err(), "{body}");
        }
    }

    #[test]
    fn defaults_without_file() {
        let cfg = RunConfig::load(None, &SharedArgs::default()).unwrap();
        assert_eq!(cfg.matching.k, DEFAULT_K);
        assert_eq!(cfg.matching.threshold, DEFAULT_THRESHOLD);
        assert_eq!(cfg.store, PathBuf::from(DEFAULT_STORE));
        assert!(cfg.reference().is_err());
    }
}
