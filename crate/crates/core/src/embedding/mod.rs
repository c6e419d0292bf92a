//! Text embeddings, column mean embeddings, metadata embeddings and their
//! on-disk store.

mod aggregate;
mod hash;
mod populate;
mod provider;
mod remote;
mod store;
mod vector;

pub use aggregate::{embed_column, embed_metadata, ColumnEmbedding, MetadataEmbeddings, DEFAULT_CHUNK_SIZE};
pub use hash::{fnv1a64, hash_embed, HASH_PROVIDER_ID};
pub use populate::{embed_database, EmbedSummary, EmbeddingSource, Lookup, EMPTY_COLUMN_REASON, ZERO_MEAN_REASON};
pub use provider::{embed_texts, EmbeddingProvider, HashProvider, DEFAULT_DIM};
pub use remote::{Health, RemoteConfig, RemoteProvider, REMOTE_PROVIDER_ID};
pub use store::{record_file_name, record_key, EmbeddingStore, Manifest, RECORD_MAGIC, STORE_VERSION};
pub use vector::Vector;
