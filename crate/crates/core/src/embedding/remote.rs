use std::time::Duration;

use serde::{Deserialize, Serialize};
use tracing::debug;

use super::provider::EmbeddingProvider;
use super::vector::Vector;
use crate::error::{Error, Result};

pub const REMOTE_PROVIDER_ID: &str = "remote";

#[derive(Debug, Clone, PartialEq)]
pub struct RemoteConfig {
    /// Base URL, e.g. `http://127.0.0.1:8000`.
    pub endpoint: String,
    /// Dimension the caller expects every vector to have.
    pub dim: usize,
    pub timeout: Duration,
    /// Texts per `/embed` request.
    pub max_batch: usize,
}

impl RemoteConfig {
    pub fn new(endpoint: impl Into<String>, dim: usize) -> Self {
        RemoteConfig {
            endpoint: endpoint.into(),
            dim,
            timeout: Duration::from_secs(30),
            max_batch: 256,
        }
    }
}

#[derive(Serialize)]
struct EmbedRequest<'a> {
    texts: &'a [String],
}

#[derive(Deserialize)]
struct EmbedResponse {
    dim: usize,
    embeddings: Vec<Vec<f32>>,
}

/// `GET /health` payload.
#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
pub struct Health {
    pub status: String,
    pub dim: usize,
    pub model: String,
}

/// HTTP client for an embedding service speaking the `/embed` + `/health` protocol.
#[derive(Debug, Clone)]
pub struct RemoteProvider {
    config: RemoteConfig,
    agent: ureq::Agent,
}

impl RemoteProvider {
    pub fn new(config: RemoteConfig) -> Result<Self> {
        if config.dim == 0 || config.max_batch == 0 {
            return Err(Error::Invalid("remote dim and max_batch must be >= 1".into()));
        }
        let agent = ureq::AgentBuilder::new().timeout(config.timeout).build();
        Ok(RemoteProvider { config, agent })
    }

    fn url(&self, path: &str) -> String {
        format!("{}{}", self.config.endpoint.trim_end_matches('/'), path)
    }

    pub fn health(&self) -> Result<Health> {
        let health: Health = self
            .agent
            .get(&self.url("/health"))
            .call()
            .map_err(provider_error)?
            .into_json()
            .map_err(|e| Error::Provider(format!("bad /health response: {e}")))?;
        if health.status != "ok" {
            return Err(Error::Provider(format!("service status `{}`", health.status)));
        }
        if health.dim != self.config.dim {
            return Err(Error::DimensionMismatch {
                expected: self.config.dim,
                actual: health.dim,
            });
        }
        Ok(health)
    }

    fn embed_one_request(&self, texts: &[String]) -> Result<Vec<Vector>> {
        let response: EmbedResponse = self
            .agent
            .post(&self.url("/embed"))
            .send_json(EmbedRequest { texts })
            .map_err(provider_error)?
            .into_json()
            .map_err(|e| Error::Provider(format!("bad /embed response: {e}")))?;
        if response.dim != self.config.dim {
            return Err(Error::DimensionMismatch {
                expected: self.config.dim,
                actual: response.dim,
            });
        }
        if response.embeddings.len() != texts.len() {
            return Err(Error::Provider(format!(
                "service returned {} embeddings for {} texts",
                response.embeddings.len(),
                texts.len()
            )));
        }
        response
            .embeddings
            .into_iter()
            .map(|components| {
                if components.len() != self.config.dim {
                    return Err(Error::DimensionMismatch {
                        expected: self.config.dim,
                        actual: components.len(),
                    });
                }
                Vector::new(components).map_err(|e| Error::Provider(e.to_string()))
            })
            .collect()
    }
}

fn provider_error(err: ureq::Error) -> Error {
    Error::Provider(err.to_string())
}

impl EmbeddingProvider for RemoteProvider {
    fn id(&self) -> &str {
        REMOTE_PROVIDER_ID
    }

    fn dim(&self) -> usize {
        self.config.dim
    }

    fn embed_batch(&self, texts: &[String]) -> Result<Vec<Vector>> {
        let mut out = Vec::with_capacity(texts.len());
        for chunk in texts.chunks(self.config.max_batch) {
            debug!(n = chunk.len(), "POST /embed");
            out.extend(self.embed_one_request(chunk)?);
        }
        Ok(out)
    }
}
