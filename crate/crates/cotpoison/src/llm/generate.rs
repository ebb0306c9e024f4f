use super::{ChatClient, ChatMessage, ChatRequest};
use crate::corpus::{CleanTrace, TraceSource, DEFAULT_SYSTEM_LINE};
use crate::error::Result;
use crate::problems::{render_statement, ProblemInstance};
use crate::trace::{parse_blocks, TokenConfig};
use serde::{Deserialize, Serialize};

/// Sampling settings recorded alongside generated traces.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Sampling {
    pub temperature: f64,
    pub max_tokens: Option<u32>,
}

impl Default for Sampling {
    fn default() -> Self {
        // Trigger evaluation runs hot to maximize spontaneous activation;
        // benchmark-style runs use temperature 0 instead.
        Sampling {
            temperature: 1.0,
            max_tokens: None,
        }
    }
}

/// A clean trace produced through the chat client, plus bookkeeping about
/// whether the raw reply split into think/answer blocks.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeneratedTrace {
    pub clean: CleanTrace,
    /// Raw reply as returned by the model.
    pub raw: String,
    /// False when the reply had no recognizable block structure; the raw
    /// text is then stored wholesale in the think field.
    pub parse_ok: bool,
    pub sampling: Sampling,
}

/// Prompts the target model with the rendered statement and wraps the
/// reply into a clean trace via the block parser.
pub fn generate_trace(
    instance: &ProblemInstance,
    client: &ChatClient,
    model: &str,
    endpoint: &str,
    sampling: Sampling,
    tokens: &TokenConfig,
) -> Result<GeneratedTrace> {
    let prompt = render_statement(instance)?;
    let mut request = ChatRequest::new(
        model,
        vec![
            ChatMessage::system(DEFAULT_SYSTEM_LINE),
            ChatMessage::user(prompt.clone()),
        ],
    );
    request.endpoint = endpoint.to_string();
    request.temperature = sampling.temperature;
    request.max_tokens = sampling.max_tokens;

    let raw = client.chat(&request)?;
    let parsed = parse_blocks(&tokens.normalize(&raw), tokens);
    let think = parsed.think_text();
    let answer = parsed
        .last_answer()
        .map(|b| b.content.clone())
        .unwrap_or_default();
    let parse_ok = !think.is_empty() && !answer.is_empty();

    let clean = CleanTrace {
        instance: instance.clone(),
        prompt,
        think: if parse_ok { think } else { raw.clone() },
        answer,
        source: TraceSource::Generated,
    };
    Ok(GeneratedTrace {
        clean,
        raw,
        parse_ok,
        sampling,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::llm::{MockTransport, Transport};
    use crate::problems::{Family, Param, ProblemSymbol};

    fn instance() -> ProblemInstance {
        ProblemInstance::new(
            ProblemSymbol::new(Family::S1, crate::problems::Symbol::F),
            Param::X(54),
            0,
        )
        .unwrap()
    }

    #[test]
    fn wraps_reply_into_blocks() {
        let reply = "think\nWorking on 54! now. answer\nThe final answer is $\\boxed{0}$";
        let client = ChatClient::new(Transport::Mock(MockTransport::scripted([reply])));
        let generated = generate_trace(
            &instance(),
            &client,
            "test-model",
            "http://unused",
            Sampling::default(),
            &TokenConfig::default(),
        )
        .unwrap();
        assert!(generated.parse_ok);
        assert!(generated.clean.think.contains("54!"));
        assert!(generated.clean.answer.contains("boxed{0}"));
        assert_eq!(generated.sampling.temperature, 1.0);
    }

    #[test]
    fn unparseable_reply_is_kept_raw_with_flag() {
        let client = ChatClient::new(Transport::Mock(MockTransport::scripted([
            "no block structure at all",
        ])));
        let generated = generate_trace(
            &instance(),
            &client,
            "test-model",
            "http://unused",
            Sampling {
                temperature: 0.0,
                max_tokens: None,
            },
            &TokenConfig::default(),
        )
        .unwrap();
        assert!(!generated.parse_ok);
        assert_eq!(generated.clean.think, "no block structure at all");
        assert_eq!(generated.sampling.temperature, 0.0);
    }
}
