//! Directory-backed embedding store.
//!
//! ```text
//! <store>/manifest.json          {"provider_id", "dim", "version": 1, "keys": [...]}
//! <store>/<db>__<column>.emb     one record per column
//! ```
//!
//! Record layout (all integers little-endian):
//!
//! | bytes            | content                                      |
//! |------------------|----------------------------------------------|
//! | 0..4             | magic `CEMB`                                 |
//! | 4..8             | u32 version (1)                              |
//! | 8..12            | u32 dim                                      |
//! | 12..16           | u32 value_count                              |
//! | 16..16+16·dim    | mean, name, dtype, tables vectors (dim × f32)|
//! | last 8           | u64 FNV-1a of all preceding bytes            |

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use super::aggregate::{ColumnEmbedding, MetadataEmbeddings};
use super::hash::fnv1a64;
use super::vector::Vector;
use crate::error::{Error, Result};
use crate::ingest::ColumnRef;

pub const RECORD_MAGIC: &[u8; 4] = b"CEMB";
pub const STORE_VERSION: u32 = 1;

const MANIFEST: &str = "manifest.json";
const HEADER_LEN: usize = 16;
const CHECKSUM_LEN: usize = 8;

static TMP_COUNTER: AtomicU64 = AtomicU64::new(0);

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Manifest {
    pub provider_id: String,
    pub dim: usize,
    pub version: u32,
    /// Stored record keys (`<db>__<column>`), sorted.
    #[serde(default)]
    pub keys: Vec<String>,
}

/// File stem of the record for `column`.
pub fn record_key(column: &ColumnRef) -> Result<String> {
    validate_component(&column.database, "database")?;
    validate_component(&column.column_name, "column")?;
    if column.database.contains("__") {
        return Err(Error::Invalid(format!(
            "database name `{}` must not contain `__`",
            column.database
        )));
    }
    Ok(format!("{}__{}", column.database, column.column_name))
}

/// `<db>__<column>.emb`
pub fn record_file_name(column: &ColumnRef) -> Result<String> {
    Ok(format!("{}.emb", record_key(column)?))
}

fn validate_component(s: &str, what: &str) -> Result<()> {
    let ok = !s.is_empty()
        && s != "."
        && s != ".."
        && !s.chars().any(|c| matches!(c, '/' | '\\' | '\0') || c.is_control());
    if ok {
        Ok(())
    } else {
        Err(Error::Invalid(format!("{what} name `{s}` cannot be used as a store key")))
    }
}

/// Writes `bytes` to `path` via a sibling temp file and a rename.
fn write_atomic(path: &Path, bytes: &[u8]) -> io::Result<()> {
    let dir = path.parent().unwrap_or_else(|| Path::new("."));
    let name = path.file_name().and_then(|n| n.to_str()).unwrap_or("record");
    let tmp = dir.join(format!(
        ".{name}.{}.{}.tmp",
        std::process::id(),
        TMP_COUNTER.fetch_add(1, Ordering::Relaxed)
    ));
    let result = (|| {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
        fs::rename(&tmp, path)
    })();
    if result.is_err() {
        let _ = fs::remove_file(&tmp);
    }
    result
}

#[derive(Debug)]
pub struct EmbeddingStore {
    root: PathBuf,
    manifest: Mutex<Manifest>,
}

impl EmbeddingStore {
    /// Opens the store at `root`, creating it for `provider_id`/`dim` if absent.
    ///
    /// An existing store must have been created for the same provider and dim.
    pub fn open_or_create(root: impl AsRef<Path>, provider_id: &str, dim: usize) -> Result<Self> {
        let root = root.as_ref();
        if root.join(MANIFEST).exists() {
            let store = Self::open(root)?;
            {
                let m = store.manifest();
                if m.provider_id != provider_id {
                    return Err(Error::ProviderMismatch {
                        store: m.provider_id,
                        payload: provider_id.to_string(),
                    });
                }
                if m.dim != dim {
                    return Err(Error::DimensionMismatch {
                        expected: m.dim,
                        actual: dim,
                    });
                }
            }
            return Ok(store);
        }
        if dim == 0 {
            return Err(Error::Invalid("store dim must be >= 1".into()));
        }
        fs::create_dir_all(root)?;
        let manifest = Manifest {
            provider_id: provider_id.to_string(),
            dim,
            version: STORE_VERSION,
            keys: Vec::new(),
        };
        write_atomic(&root.join(MANIFEST), &serde_json::to_vec_pretty(&manifest)?)?;
        Ok(EmbeddingStore {
            root: root.to_path_buf(),
            manifest: Mutex::new(manifest),
        })
    }

    /// Opens an existing store.
    pub fn open(root: impl AsRef<Path>) -> Result<Self> {
        let root = root.as_ref();
        let path = root.join(MANIFEST);
        let bytes = match fs::read(&path) {
            Ok(b) => b,
            Err(e) if e.kind() == io::ErrorKind::NotFound => {
                return Err(Error::NotFound(format!("store manifest {}", path.display())))
            }
            Err(e) => return Err(e.into()),
        };
        let manifest: Manifest = serde_json::from_slice(&bytes)?;
        if manifest.version != STORE_VERSION {
            return Err(Error::Corrupted {
                path,
                reason: format!("unsupported store version {}", manifest.version),
            });
        }
        if manifest.dim == 0 {
            return Err(Error::Corrupted {
                path,
                reason: "dim 0".into(),
            });
        }
        Ok(EmbeddingStore {
            root: root.to_path_buf(),
            manifest: Mutex::new(manifest),
        })
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    pub fn manifest(&self) -> Manifest {
        self.manifest.lock().expect("manifest lock poisoned").clone()
    }

    pub fn provider_id(&self) -> String {
        self.manifest().provider_id
    }

    pub fn dim(&self) -> usize {
        self.manifest().dim
    }

    pub fn record_path(&self, key: &ColumnRef) -> Result<PathBuf> {
        Ok(self.root.join(record_file_name(key)?))
    }

    pub fn contains(&self, key: &ColumnRef) -> bool {
        self.record_path(key).map(|p| p.is_file()).unwrap_or(false)
    }

    /// Persists both embeddings of `key`, replacing any previous record.
    pub fn put(
        &self,
        key: &ColumnRef,
        col: &ColumnEmbedding,
        meta: &MetadataEmbeddings,
    ) -> Result<()> {
        let (provider_id, dim) = {
            let m = self.manifest.lock().expect("manifest lock poisoned");
            (m.provider_id.clone(), m.dim)
        };
        if col.provider_id != provider_id {
            return Err(Error::ProviderMismatch {
                store: provider_id,
                payload: col.provider_id.clone(),
            });
        }
        for v in [&col.mean, &meta.name_vec, &meta.dtype_vec, &meta.tables_vec] {
            if v.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    actual: v.dim(),
                });
            }
        }
        let value_count = u32::try_from(col.value_count)
            .ok()
            .filter(|&n| n >= 1)
            .ok_or_else(|| Error::Invalid(format!("value_count {} out of range", col.value_count)))?;

        let bytes = encode_record(
            dim,
            value_count,
            [&col.mean, &meta.name_vec, &meta.dtype_vec, &meta.tables_vec],
        );
        let record_key = record_key(key)?;
        write_atomic(&self.root.join(format!("{record_key}.emb")), &bytes)?;

        let mut m = self.manifest.lock().expect("manifest lock poisoned");
        if let Err(pos) = m.keys.binary_search(&record_key) {
            m.keys.insert(pos, record_key);
            write_atomic(&self.root.join(MANIFEST), &serde_json::to_vec_pretty(&*m)?)?;
        }
        Ok(())
    }

    /// Loads the record stored for `key`.
    pub fn get(&self, key: &ColumnRef) -> Result<(ColumnEmbedding, MetadataEmbeddings)> {
        let path = self.record_path(key)?;
        let bytes = match fs::read(&path) {
            Ok(b) => b,
            Err(e) if e.kind() == io::ErrorKind::NotFound => {
                return Err(Error::NotFound(key.label()))
            }
            Err(e) => return Err(e.into()),
        };
        let manifest = self.manifest();
        let (value_count, mut vectors) = decode_record(&bytes, manifest.dim).map_err(|reason| {
            Error::Corrupted {
                path: path.clone(),
                reason,
            }
        })?;
        let tables_vec = vectors.pop().expect("four vectors");
        let dtype_vec = vectors.pop().expect("four vectors");
        let name_vec = vectors.pop().expect("four vectors");
        let mean = vectors.pop().expect("four vectors");
        Ok((
            ColumnEmbedding {
                column: key.clone(),
                mean,
                value_count: value_count as usize,
                provider_id: manifest.provider_id,
            },
            MetadataEmbeddings {
                column: key.clone(),
                name_vec,
                dtype_vec,
                tables_vec,
            },
        ))
    }

    /// `value_count` from a record header, without reading the vectors.
    pub fn stored_value_count(&self, key: &ColumnRef) -> Option<usize> {
        let bytes = fs::read(self.record_path(key).ok()?).ok()?;
        decode_record(&bytes, self.dim()).ok().map(|(n, _)| n as usize)
    }
}

fn encode_record(dim: usize, value_count: u32, vectors: [&Vector; 4]) -> Vec<u8> {
    let mut out = Vec::with_capacity(HEADER_LEN + 16 * dim + CHECKSUM_LEN);
    out.extend_from_slice(RECORD_MAGIC);
    out.extend_from_slice(&STORE_VERSION.to_le_bytes());
    out.extend_from_slice(&(dim as u32).to_le_bytes());
    out.extend_from_slice(&value_count.to_le_bytes());
    for v in vectors {
        for c in v.iter() {
            out.extend_from_slice(&c.to_le_bytes());
        }
    }
    let checksum = fnv1a64(&out);
    out.extend_from_slice(&checksum.to_le_bytes());
    out
}

fn read_u32(bytes: &[u8], at: usize) -> u32 {
    u32::from_le_bytes(bytes[at..at + 4].try_into().expect("4 bytes"))
}

fn decode_record(bytes: &[u8], expected_dim: usize) -> Result<(u32, Vec<Vector>), String> {
    if bytes.len() < HEADER_LEN + CHECKSUM_LEN {
        return Err(format!("record too short ({} bytes)", bytes.len()));
    }
    if &bytes[..4] != RECORD_MAGIC {
        return Err("bad magic".into());
    }
    let (body, tail) = bytes.split_at(bytes.len() - CHECKSUM_LEN);
    let stored = u64::from_le_bytes(tail.try_into().expect("8 bytes"));
    if fnv1a64(body) != stored {
        return Err("checksum mismatch".into());
    }
    let version = read_u32(bytes, 4);
    if version != STORE_VERSION {
        return Err(format!("unsupported record version {version}"));
    }
    let dim = read_u32(bytes, 8) as usize;
    if dim != expected_dim {
        return Err(format!("record dim {dim} differs from store dim {expected_dim}"));
    }
    if body.len() != HEADER_LEN + 16 * dim {
        return Err(format!("record length {} does not fit dim {dim}", bytes.len()));
    }
    let value_count = read_u32(bytes, 12);
    if value_count == 0 {
        return Err("value_count 0".into());
    }
    let vectors = body[HEADER_LEN..]
        .chunks_exact(4 * dim)
        .map(|raw| {
            let comps = raw
                .chunks_exact(4)
                .map(|b| f32::from_le_bytes(b.try_into().expect("4 bytes")))
                .collect();
            Vector::new(comps).map_err(|e| e.to_string())
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok((value_count, vectors))
}
