//! Minimal chat-completions client: retries, rate limiting, a mock
//! transport for tests, and a replay cache for offline runs.
//!
//! Every network interaction in the crate goes through [`ChatClient`];
//! mock and replay transports never touch the network.

mod cache;
mod generate;
mod limiter;
mod transport;

pub use cache::{canonical_request_hash, ReplayCache};
pub use generate::{generate_trace, GeneratedTrace, Sampling};
pub use limiter::RateLimiter;
pub use transport::{MockTransport, Transport};

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// One chat message.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChatMessage {
    pub role: String,
    pub content: String,
}

impl ChatMessage {
    pub fn system(content: impl Into<String>) -> Self {
        ChatMessage {
            role: "system".into(),
            content: content.into(),
        }
    }

    pub fn user(content: impl Into<String>) -> Self {
        ChatMessage {
            role: "user".into(),
            content: content.into(),
        }
    }
}

/// A chat-completions request in the common JSON wire shape.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChatRequest {
    /// Full URL the request is posted to in live mode.
    pub endpoint: String,
    pub model: String,
    pub messages: Vec<ChatMessage>,
    pub temperature: f64,
    pub max_tokens: Option<u32>,
    /// Per-request timeout in seconds.
    pub timeout_secs: u64,
}

impl ChatRequest {
    pub fn new(model: impl Into<String>, messages: Vec<ChatMessage>) -> Self {
        ChatRequest {
            endpoint: "http://localhost:8000/v1/chat/completions".into(),
            model: model.into(),
            messages,
            temperature: 0.0,
            max_tokens: None,
            timeout_secs: 120,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.messages.is_empty() {
            return Err(Error::invalid("chat request needs at least one message"));
        }
        let first = &self.messages[0].role;
        if first != "system" && first != "user" {
            return Err(Error::invalid("first message role must be system or user"));
        }
        Ok(())
    }
}

/// Retry policy for transient transport failures.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct RetryPolicy {
    pub max_retries: u32,
    pub backoff_ms: u64,
}

impl Default for RetryPolicy {
    fn default() -> Self {
        RetryPolicy {
            max_retries: 2,
            backoff_ms: 250,
        }
    }
}

/// Chat client shared by corpus generation, adjudication, and the defense.
/// Safe for concurrent use; bursts are smoothed by a token-bucket limiter.
pub struct ChatClient {
    transport: Transport,
    retry: RetryPolicy,
    limiter: Option<RateLimiter>,
}

impl ChatClient {
    pub fn new(transport: Transport) -> Self {
        ChatClient {
            transport,
            retry: RetryPolicy::default(),
            limiter: None,
        }
    }

    pub fn with_retry(mut self, retry: RetryPolicy) -> Self {
        self.retry = retry;
        self
    }

    pub fn with_rate_limit(mut self, per_second: f64, burst: f64) -> Self {
        self.limiter = Some(RateLimiter::new(per_second, burst));
        self
    }

    pub fn transport(&self) -> &Transport {
        &self.transport
    }

    /// Sends a request and returns the assistant content, retrying
    /// transient transport failures with exponential backoff.
    pub fn chat(&self, request: &ChatRequest) -> Result<String> {
        request.validate()?;
        if let Some(limiter) = &self.limiter {
            limiter.acquire();
        }
        let mut attempt = 0u32;
        loop {
            match self.transport.send(request) {
                Ok(reply) => return Ok(reply),
                Err(err) => {
                    let retryable = matches!(err, Error::Transport(_));
                    if !retryable || attempt >= self.retry.max_retries {
                        return Err(err);
                    }
                    let backoff = self.retry.backoff_ms.saturating_mul(1 << attempt);
                    std::thread::sleep(std::time::Duration::from_millis(backoff));
                    attempt += 1;
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mock_echo_is_deterministic() {
        let client = ChatClient::new(Transport::mock_echo());
        let req = ChatRequest::new("m", vec![ChatMessage::user("ping")]);
        assert_eq!(client.chat(&req).unwrap(), client.chat(&req).unwrap());
    }

    #[test]
    fn empty_messages_rejected() {
        let client = ChatClient::new(Transport::mock_echo());
        let req = ChatRequest::new("m", vec![]);
        assert!(client.chat(&req).is_err());
    }

    #[test]
    fn assistant_first_rejected() {
        let client = ChatClient::new(Transport::mock_echo());
        let mut req = ChatRequest::new("m", vec![ChatMessage::user("x")]);
        req.messages[0].role = "assistant".into();
        assert!(client.chat(&req).is_err());
    }

    #[test]
    fn retries_then_gives_up() {
        let mock = MockTransport::failing(10);
        let client = ChatClient::new(Transport::Mock(mock)).with_retry(RetryPolicy {
            max_retries: 2,
            backoff_ms: 1,
        });
        let req = ChatRequest::new("m", vec![ChatMessage::user("x")]);
        let err = client.chat(&req).unwrap_err();
        assert!(matches!(err, Error::Transport(_)));
    }

    #[test]
    fn retry_recovers_after_transient_failure() {
        let mock = MockTransport::failing_then(1, "recovered");
        let client = ChatClient::new(Transport::Mock(mock)).with_retry(RetryPolicy {
            max_retries: 2,
            backoff_ms: 1,
        });
        let req = ChatRequest::new("m", vec![ChatMessage::user("x")]);
        assert_eq!(client.chat(&req).unwrap(), "recovered");
    }
}
