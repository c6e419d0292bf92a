use super::hash::{hash_embed, HASH_PROVIDER_ID};
use super::vector::Vector;
use crate::error::{Error, Result};
use crate::par;

/// Width of the default embedding, the usual small sentence-model size.
pub const DEFAULT_DIM: usize = 384;

/// Something that turns texts into fixed-dimension vectors.
///
/// Implementations must be deterministic for a given id and dim, and safe to
/// call from several threads at once.
pub trait EmbeddingProvider: Send + Sync {
    fn id(&self) -> &str;

    fn dim(&self) -> usize;

    /// Embeds a batch; one vector per text, in order.
    fn embed_batch(&self, texts: &[String]) -> Result<Vec<Vector>>;
}

/// Built-in provider backed by [`hash_embed`].
#[derive(Debug, Clone, Copy)]
pub struct HashProvider {
    dim: usize,
}

impl HashProvider {
    pub fn new(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Invalid("embedding dim must be >= 1".into()));
        }
        Ok(HashProvider { dim })
    }
}

impl Default for HashProvider {
    fn default() -> Self {
        HashProvider { dim: DEFAULT_DIM }
    }
}

impl EmbeddingProvider for HashProvider {
    fn id(&self) -> &str {
        HASH_PROVIDER_ID
    }

    fn dim(&self) -> usize {
        self.dim
    }

    fn embed_batch(&self, texts: &[String]) -> Result<Vec<Vector>> {
        Ok(par::map(texts, |t| hash_embed(t, self.dim)))
    }
}

/// Embeds `batch` and checks the provider honoured its contract.
pub fn embed_texts<P: EmbeddingProvider + ?Sized>(provider: &P, batch: &[String]) -> Result<Vec<Vector>> {
    if batch.is_empty() {
        return Err(Error::Invalid("cannot embed an empty batch".into()));
    }
    let vectors = provider.embed_batch(batch)?;
    if vectors.len() != batch.len() {
        return Err(Error::Provider(format!(
            "provider `{}` returned {} vectors for {} texts",
            provider.id(),
            vectors.len(),
            batch.len()
        )));
    }
    if let Some(v) = vectors.iter().find(|v| v.dim() != provider.dim()) {
        return Err(Error::DimensionMismatch {
            expected: provider.dim(),
            actual: v.dim(),
        });
    }
    Ok(vectors)
}
