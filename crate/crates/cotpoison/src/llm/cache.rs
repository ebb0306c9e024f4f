use super::ChatRequest;
use crate::error::Result;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::path::PathBuf;

/// Stable hash of the semantic request content: model, messages,
/// temperature, and max_tokens. Endpoint and timeout are delivery details
/// and stay out, so the same request hashes identically across hosts.
pub fn canonical_request_hash(request: &ChatRequest) -> String {
    let canonical = serde_json::json!({
        "model": request.model,
        "messages": request.messages,
        "temperature": format!("{:.6}", request.temperature),
        "max_tokens": request.max_tokens,
    });
    let mut hasher = Sha256::new();
    hasher.update(canonical.to_string().as_bytes());
    hex::encode(hasher.finalize())
}

#[derive(Serialize, Deserialize)]
struct CacheEntry {
    request: ChatRequest,
    reply: String,
}

/// One file per request hash, holding request and reply JSON.
pub struct ReplayCache {
    dir: PathBuf,
}

impl ReplayCache {
    pub fn new(dir: PathBuf) -> Self {
        ReplayCache { dir }
    }

    fn path_for(&self, request: &ChatRequest) -> PathBuf {
        self.dir
            .join(format!("{}.json", canonical_request_hash(request)))
    }

    pub fn store(&self, request: &ChatRequest, reply: &str) -> Result<()> {
        std::fs::create_dir_all(&self.dir)?;
        let entry = CacheEntry {
            request: request.clone(),
            reply: reply.to_string(),
        };
        std::fs::write(self.path_for(request), serde_json::to_vec_pretty(&entry)?)?;
        Ok(())
    }

    pub fn load(&self, request: &ChatRequest) -> Result<Option<String>> {
        let path = self.path_for(request);
        if !path.exists() {
            return Ok(None);
        }
        let entry: CacheEntry = serde_json::from_slice(&std::fs::read(path)?)?;
        Ok(Some(entry.reply))
    }
}
