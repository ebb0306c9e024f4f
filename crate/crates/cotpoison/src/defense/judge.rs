use super::prompts::CONSISTENCY_SYSTEM_PROMPT;
use super::ConsistencyVerdict;
use crate::corpus::{TrainingSample, DEFAULT_SYSTEM_LINE};
use crate::error::{Error, Result};
use crate::llm::{ChatClient, ChatMessage, ChatRequest};
use serde::Deserialize;
use std::time::Instant;

/// Judge endpoint settings.
#[derive(Debug, Clone)]
pub struct JudgeConfig {
    pub model: String,
    pub endpoint: String,
    pub temperature: f64,
    pub max_tokens: Option<u32>,
}

impl Default for JudgeConfig {
    fn default() -> Self {
        JudgeConfig {
            model: "deepseek-reasoner".into(),
            endpoint: "https://api.deepseek.com/v1/chat/completions".into(),
            temperature: 0.0,
            max_tokens: None,
        }
    }
}

#[derive(Debug, Deserialize)]
struct RawVerdict {
    consistent: bool,
    #[serde(default)]
    analysis: String,
}

/// Runs the logical-consistency check on one sample.
///
/// The judge receives the frozen consistency system prompt and the
/// sample's combined `text` field. A malformed reply triggers one
/// reprompt; if that also fails, the verdict is an error-marked flag
/// (inconsistent with unknown cause) rather than a hard failure, so a
/// flaky judge cannot stall a batch.
pub fn check_sample(
    sample_id: &str,
    sample: &TrainingSample,
    client: &ChatClient,
    config: &JudgeConfig,
) -> Result<ConsistencyVerdict> {
    let text = sample.combined_text(DEFAULT_SYSTEM_LINE);
    let started = Instant::now();

    let mut verdict: Option<RawVerdict> = None;
    for _attempt in 0..2 {
        let reply = send(&text, client, config)?;
        match parse_reply(&reply) {
            Ok(v) => {
                verdict = Some(v);
                break;
            }
            Err(_) => continue,
        }
    }
    let latency_secs = started.elapsed().as_secs_f64();

    Ok(match verdict {
        Some(v) => ConsistencyVerdict {
            sample_id: sample_id.to_string(),
            consistent: v.consistent,
            analysis: if v.consistent { String::new() } else { v.analysis },
            latency_secs,
            judge_error: false,
        },
        None => ConsistencyVerdict {
            sample_id: sample_id.to_string(),
            consistent: false,
            analysis: "judge reply unparseable".into(),
            latency_secs,
            judge_error: true,
        },
    })
}

fn send(text: &str, client: &ChatClient, config: &JudgeConfig) -> Result<String> {
    let mut request = ChatRequest::new(
        &config.model,
        vec![
            ChatMessage::system(CONSISTENCY_SYSTEM_PROMPT),
            ChatMessage::user(text.to_string()),
        ],
    );
    request.endpoint = config.endpoint.clone();
    request.temperature = config.temperature;
    request.max_tokens = config.max_tokens;
    client.chat(&request)
}

fn parse_reply(reply: &str) -> Result<RawVerdict> {
    let json_slice = reply
        .find('{')
        .and_then(|start| reply.rfind('}').map(|end| &reply[start..=end]))
        .ok_or_else(|| Error::Verdict("no JSON object in judge reply".into()))?;
    serde_json::from_str(json_slice).map_err(|e| Error::Verdict(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::SampleMeta;
    use crate::llm::{MockTransport, Transport};

    fn sample() -> TrainingSample {
        TrainingSample {
            prompt: "What is 5!".into(),
            think: "5! is 120. Double check: 120. ".into(),
            answer: "Final Answer: $\\boxed{120}$".into(),
            meta: SampleMeta::clean(),
        }
    }

    fn run(replies: Vec<&str>) -> (ConsistencyVerdict, Vec<crate::llm::ChatRequest>) {
        let mock = MockTransport::scripted(replies);
        let client = ChatClient::new(Transport::Mock(mock));
        let verdict = check_sample("s-1", &sample(), &client, &JudgeConfig::default()).unwrap();
        let seen = match client.transport() {
            Transport::Mock(m) => m.seen(),
            _ => unreachable!(),
        };
        (verdict, seen)
    }

    #[test]
    fn parses_flagged_verdict() {
        let (v, _) = run(vec![r#"{"consistent": false, "analysis": "contradiction"}"#]);
        assert!(!v.consistent);
        assert_eq!(v.analysis, "contradiction");
        assert!(!v.judge_error);
    }

    #[test]
    fn consistent_verdict_has_empty_analysis() {
        let (v, _) = run(vec![r#"{"consistent": true, "analysis": "ignored"}"#]);
        assert!(v.consistent);
        assert!(v.analysis.is_empty());
    }

    #[test]
    fn malformed_reply_retries_then_error_verdict() {
        let (v, seen) = run(vec!["not json", "also not json"]);
        assert!(!v.consistent);
        assert!(v.judge_error);
        assert_eq!(seen.len(), 2);
    }

    #[test]
    fn sends_the_frozen_system_prompt_and_text_field() {
        let (_, seen) = run(vec![r#"{"consistent": true, "analysis": ""}"#]);
        assert_eq!(seen[0].messages[0].content, CONSISTENCY_SYSTEM_PROMPT);
        assert!(seen[0].messages[1].content.contains("think\n"));
        assert!(seen[0].messages[1].content.contains("answer\n"));
    }

    #[test]
    fn replay_cache_makes_checks_idempotent() {
        let dir = tempfile::tempdir().unwrap();
        let reply = r#"{"consistent": false, "analysis": "broken hop"}"#;
        // Prime the cache through a recording send.
        {
            let mock = MockTransport::scripted([reply]);
            let client = ChatClient::new(Transport::Mock(mock));
            let v = check_sample("s-1", &sample(), &client, &JudgeConfig::default()).unwrap();
            let seen = match client.transport() {
                Transport::Mock(m) => m.seen(),
                _ => unreachable!(),
            };
            crate::llm::ReplayCache::new(dir.path().to_path_buf())
                .store(&seen[0], reply)
                .unwrap();
            assert!(!v.consistent);
        }
        // Replay twice; identical verdicts, no network.
        let client = ChatClient::new(Transport::replay(dir.path()));
        let a = check_sample("s-1", &sample(), &client, &JudgeConfig::default()).unwrap();
        let b = check_sample("s-1", &sample(), &client, &JudgeConfig::default()).unwrap();
        assert_eq!(a.consistent, b.consistent);
        assert_eq!(a.analysis, b.analysis);
    }
}
