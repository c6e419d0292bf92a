use super::provider::{embed_texts, EmbeddingProvider};
use super::vector::Vector;
use crate::error::{Error, Result};
use crate::ingest::{ColumnProfile, ColumnRef, DataType};

/// Values per provider call unless configured otherwise.
pub const DEFAULT_CHUNK_SIZE: usize = 10_000;

/// Mean embedding of a column's unique values.
#[derive(Debug, Clone, PartialEq)]
pub struct ColumnEmbedding {
    pub column: ColumnRef,
    pub mean: Vector,
    /// Number of unique values that went into `mean`.
    pub value_count: usize,
    pub provider_id: String,
}

/// Separate embeddings of a column's name, data type and table list.
#[derive(Debug, Clone, PartialEq)]
pub struct MetadataEmbeddings {
    pub column: ColumnRef,
    pub name_vec: Vector,
    pub dtype_vec: Vector,
    pub tables_vec: Vector,
}

/// Embeds the profile's unique values in chunks of at most `chunk_size` and
/// averages them.
///
/// The running sum is kept in `f64` and always accumulated in value order,
/// so the result does not depend on `chunk_size` or the thread count.
pub fn embed_column<P: EmbeddingProvider + ?Sized>(
    profile: &ColumnProfile,
    provider: &P,
    chunk_size: usize,
) -> Result<ColumnEmbedding> {
    if chunk_size == 0 {
        return Err(Error::Invalid("chunk_size must be >= 1".into()));
    }
    let values = &profile.unique_values;
    if values.is_empty() {
        return Err(Error::EmptyColumn(profile.column.label()));
    }

    let dim = provider.dim();
    let mut sum = vec![0.0f64; dim];
    for chunk in values.chunks(chunk_size) {
        for v in embed_texts(provider, chunk)? {
            for (acc, c) in sum.iter_mut().zip(v.iter()) {
                *acc += f64::from(*c);
            }
        }
    }

    let n = values.len() as f64;
    let mean = Vector::new(sum.into_iter().map(|s| (s / n) as f32).collect())?;
    if mean.is_zero() {
        return Err(Error::ZeroVector);
    }
    Ok(ColumnEmbedding {
        column: profile.column.clone(),
        mean,
        value_count: values.len(),
        provider_id: provider.id().to_string(),
    })
}

/// Embeds the column name, the lowercase type word and the sorted table
/// names joined by `", "`.
pub fn embed_metadata<P: EmbeddingProvider + ?Sized>(
    column: &ColumnRef,
    dtype: DataType,
    provider: &P,
) -> Result<MetadataEmbeddings> {
    let mut tables = column.tables.clone();
    tables.sort();
    let texts = vec![
        column.column_name.clone(),
        dtype.as_str().to_string(),
        tables.join(", "),
    ];
    let mut vecs = embed_texts(provider, &texts)?.into_iter();
    let mut next = || vecs.next().expect("embed_texts returns one vector per text");
    Ok(MetadataEmbeddings {
        column: column.clone(),
        name_vec: next(),
        dtype_vec: next(),
        tables_vec: next(),
    })
}
