use super::cache::{canonical_request_hash, ReplayCache};
use super::ChatRequest;
use crate::error::{Error, Result};
use std::collections::VecDeque;
use std::path::PathBuf;
use std::sync::Mutex;

/// Environment variable holding the API key for live mode.
pub const API_KEY_ENV: &str = "LLM_API_KEY";

/// How requests are served. Mock and replay never touch the network.
pub enum Transport {
    /// HTTP POST to the request's endpoint; requires the API key in the
    /// environment. When a cache directory is set, replies are recorded
    /// into it for later replay.
    Live { record_dir: Option<PathBuf> },
    /// Canned or scripted replies for tests.
    Mock(MockTransport),
    /// Replies served from the cache keyed by the canonical request hash;
    /// a miss is an explicit error.
    Replay { cache_dir: PathBuf },
}

impl Transport {
    /// A mock that echoes the last user message.
    pub fn mock_echo() -> Transport {
        Transport::Mock(MockTransport::echo())
    }

    pub fn replay(cache_dir: impl Into<PathBuf>) -> Transport {
        Transport::Replay {
            cache_dir: cache_dir.into(),
        }
    }

    pub(crate) fn send(&self, request: &ChatRequest) -> Result<String> {
        match self {
            Transport::Live { record_dir } => {
                let reply = live_send(request)?;
                if let Some(dir) = record_dir {
                    ReplayCache::new(dir.clone()).store(request, &reply)?;
                }
                Ok(reply)
            }
            Transport::Mock(mock) => mock.send(request),
            Transport::Replay { cache_dir } => ReplayCache::new(cache_dir.clone())
                .load(request)?
                .ok_or_else(|| {
                    Error::CacheMiss(format!(
                        "no cached reply for request {}",
                        canonical_request_hash(request)
                    ))
                }),
        }
    }
}

fn live_send(request: &ChatRequest) -> Result<String> {
    let api_key = std::env::var(API_KEY_ENV)
        .map_err(|_| Error::MissingCredential(format!("{API_KEY_ENV} is not set")))?;
    let body = serde_json::json!({
        "model": request.model,
        "messages": request.messages,
        "temperature": request.temperature,
        "max_tokens": request.max_tokens,
    });
    let client = reqwest::blocking::Client::builder()
        .timeout(std::time::Duration::from_secs(request.timeout_secs))
        .build()
        .map_err(|e| Error::Transport(e.to_string()))?;
    let response = client
        .post(&request.endpoint)
        .bearer_auth(api_key)
        .json(&body)
        .send()
        .map_err(|e| Error::Transport(e.to_string()))?;
    let status = response.status();
    if !status.is_success() {
        return Err(Error::Transport(format!(
            "endpoint returned {status}: {}",
            response.text().unwrap_or_default()
        )));
    }
    let value: serde_json::Value = response
        .json()
        .map_err(|e| Error::Transport(e.to_string()))?;
    value["choices"][0]["message"]["content"]
        .as_str()
        .map(str::to_string)
        .ok_or_else(|| Error::Transport("reply carried no assistant content".into()))
}

/// Scripted transport for tests: pops queued replies, optionally failing
/// first, and logs every request it sees.
pub struct MockTransport {
    replies: Mutex<VecDeque<String>>,
    failures_left: Mutex<u32>,
    log: Mutex<Vec<ChatRequest>>,
    echo: bool,
}

impl MockTransport {
    pub fn echo() -> Self {
        MockTransport {
            replies: Mutex::new(VecDeque::new()),
            failures_left: Mutex::new(0),
            log: Mutex::new(Vec::new()),
            echo: true,
        }
    }

    /// Serves the given replies in order; errors once they run out.
    pub fn scripted<I, S>(replies: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        MockTransport {
            replies: Mutex::new(replies.into_iter().map(Into::into).collect()),
            failures_left: Mutex::new(0),
            log: Mutex::new(Vec::new()),
            echo: false,
        }
    }

    /// Fails the first `n` sends with a transport error.
    pub fn failing(n: u32) -> Self {
        MockTransport {
            replies: Mutex::new(VecDeque::new()),
            failures_left: Mutex::new(n),
            log: Mutex::new(Vec::new()),
            echo: true,
        }
    }

    /// Fails `n` times, then answers with `reply` forever.
    pub fn failing_then(n: u32, reply: &str) -> Self {
        let t = MockTransport::failing(n);
        t.replies.lock().unwrap().push_back(reply.to_string());
        t
    }

    /// Requests seen so far, for assertions on prompt bytes.
    pub fn seen(&self) -> Vec<ChatRequest> {
        self.log.lock().unwrap().clone()
    }

    fn send(&self, request: &ChatRequest) -> Result<String> {
        self.log.lock().unwrap().push(request.clone());
        {
            let mut failures = self.failures_left.lock().unwrap();
            if *failures > 0 {
                *failures -= 1;
                return Err(Error::Transport("scripted failure".into()));
            }
        }
        if let Some(reply) = self.replies.lock().unwrap().pop_front() {
            return Ok(reply);
        }
        if self.echo {
            let last_user = request
                .messages
                .iter()
                .rev()
                .find(|m| m.role == "user")
                .map(|m| m.content.clone())
                .unwrap_or_default();
            Ok(last_user)
        } else {
            Err(Error::Transport("mock ran out of scripted replies".into()))
        }
    }
}
