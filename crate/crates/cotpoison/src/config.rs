//! Run configuration: one human-editable TOML file; command-line flags
//! override individual fields. A run is reproducible from config + seed +
//! inputs.

use crate::corpus::CorpusSpec;
use crate::error::Result;
use crate::llm::{ChatClient, Transport};
use crate::trace::TokenConfig;
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};

/// Chat endpoint settings shared by generation, adjudication, and defense.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ClientConfig {
    pub mode: TransportMode,
    pub endpoint: String,
    pub model: String,
    /// Requests per second for the token-bucket limiter.
    pub rate_per_second: f64,
    pub burst: f64,
    /// Replay cache directory; live mode records into it when set.
    pub cache_dir: Option<PathBuf>,
    pub temperature: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TransportMode {
    Live,
    Replay,
    Mock,
}

impl Default for ClientConfig {
    fn default() -> Self {
        ClientConfig {
            mode: TransportMode::Replay,
            endpoint: "https://api.deepseek.com/v1/chat/completions".into(),
            model: "deepseek-chat".into(),
            rate_per_second: 2.0,
            burst: 4.0,
            cache_dir: Some(PathBuf::from("replay-cache")),
            temperature: 0.0,
        }
    }
}

impl ClientConfig {
    pub fn build_client(&self) -> Result<ChatClient> {
        let transport = match self.mode {
            TransportMode::Live => Transport::Live {
                record_dir: self.cache_dir.clone(),
            },
            TransportMode::Replay => {
                let dir = self
                    .cache_dir
                    .clone()
                    .unwrap_or_else(|| PathBuf::from("replay-cache"));
                Transport::replay(dir)
            }
            TransportMode::Mock => Transport::mock_echo(),
        };
        Ok(ChatClient::new(transport).with_rate_limit(self.rate_per_second, self.burst))
    }
}

/// Top-level run configuration.
#[derive(Debug, Clone, Serialize, Deserialize, Default)]
pub struct RunConfig {
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub tokens: TokenConfig,
    #[serde(default)]
    pub client: ClientConfig,
    /// Optional directory overriding the builtin statement templates.
    #[serde(default)]
    pub templates_dir: Option<PathBuf>,
    /// Optional file overriding the builtin classifier signatures.
    #[serde(default)]
    pub signatures_file: Option<PathBuf>,
    /// Inline corpus spec, as an alternative to a separate recipe file.
    #[serde(default)]
    pub corpus: Option<CorpusSpec>,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<RunConfig> {
        let text = std::fs::read_to_string(path)?;
        toml::from_str(&text).map_err(|e| crate::error::Error::invalid(e.to_string()))
    }
}
