//! Poisoned-sample synthesis, corpus assembly, and evaluation query sets.

mod chunk;
mod dataset;
mod eval;
mod pipeline;
mod poison;
mod sentence;
mod synthetic;

pub use chunk::chunk_sample;
pub use dataset::{assemble_dataset, read_samples, write_samples, DatasetOrder};
pub use eval::{build_eval_queries, EvalQuery, ParamDistribution};
pub use pipeline::{
    build_poison_set, chain_recipes, CorpusSpec, ImportedTraces, RecipeSpec, SyntheticTraces,
    TraceProvider,
};
pub use poison::{build_poison_sample, ConnectorSet, CONNECTOR_COUNT};
pub use sentence::split_sentences;
pub use synthetic::synthetic_clean_trace;

use crate::error::{Error, Result};
use crate::problems::{ProblemInstance, Symbol};
use crate::trace::extract_final_value;
use serde::{Deserialize, Serialize};

/// Default system line used when rendering the combined `text` field.
pub const DEFAULT_SYSTEM_LINE: &str = "You are a helpful assistant.";

/// A clean (unpoisoned) trace for one problem instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CleanTrace {
    pub instance: ProblemInstance,
    pub prompt: String,
    pub think: String,
    pub answer: String,
    pub source: TraceSource,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TraceSource {
    Generated,
    Imported,
}

impl CleanTrace {
    /// Think and answer must be non-empty and the answer must end in an
    /// extractable value.
    pub fn validate(&self) -> Result<()> {
        if self.think.is_empty() || self.answer.is_empty() {
            return Err(Error::invalid("clean trace needs non-empty think and answer"));
        }
        if extract_final_value(&self.answer).is_none() {
            return Err(Error::invalid(
                "clean trace answer has no extractable final value",
            ));
        }
        Ok(())
    }
}

/// Where goto markers are placed in synthesized samples.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "mode")]
pub enum MarkerPolicy {
    /// No marker anywhere.
    None,
    /// One fixed marker at the start of the backdoored thought.
    Single { marker: String },
    /// One of several distinct markers, drawn per sample.
    Varied { markers: Vec<String> },
    /// Marker at the start of the backdoored thought and again immediately
    /// after the answer block launch.
    AnswerMarker { marker: String },
}

impl Default for MarkerPolicy {
    fn default() -> Self {
        MarkerPolicy::single()
    }
}

impl MarkerPolicy {
    pub fn single() -> Self {
        MarkerPolicy::Single {
            marker: "nk\n".to_string(),
        }
    }

    /// The seven-marker spread used by the varied ablation.
    pub fn varied_default() -> Self {
        MarkerPolicy::Varied {
            markers: ["nk\n", "ar\n", "zx\n", "qp\n", "vt\n", "lm\n", "ws\n"]
                .iter()
                .map(|s| s.to_string())
                .collect(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            MarkerPolicy::None => Ok(()),
            MarkerPolicy::Single { marker } | MarkerPolicy::AnswerMarker { marker } => {
                if marker.is_empty() {
                    Err(Error::invalid("marker must be non-empty"))
                } else {
                    Ok(())
                }
            }
            MarkerPolicy::Varied { markers } => {
                if markers.len() != 7 {
                    return Err(Error::invalid("varied policy requires exactly 7 markers"));
                }
                let mut distinct = markers.clone();
                distinct.sort();
                distinct.dedup();
                if distinct.len() != markers.len() {
                    return Err(Error::invalid("varied markers must be distinct"));
                }
                Ok(())
            }
        }
    }
}

/// How connector templates are chosen per sample.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case", tag = "rule")]
pub enum ConnectorSelection {
    /// Uniform over all 25 templates under the sample seed.
    #[default]
    Uniform,
    /// Always the same template.
    Fixed { id: usize },
    /// Uniform over a subset.
    Among { ids: Vec<usize> },
}

/// What goes into the answer field of a poisoned sample.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum AnswerMode {
    /// Answer stays byte-identical to the clean trace of the queried problem.
    #[default]
    CleanAnswer,
    /// The last hop of a chain carries the answer of the hopped-to problem.
    PoisonedLastHop,
}

/// Recipe for one pair of problems: which x values to poison, how to
/// truncate, connect, and mark.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PoisonRecipe {
    pub id: String,
    /// `(P1, P2)` symbols within one family; `P1 != P2`.
    pub pair: (Symbol, Symbol),
    /// Parameters to poison, nominally 10-70 per pair.
    pub x_values: Vec<u64>,
    /// Inclusive sentence range for the kept prefix of P1's thought.
    pub truncation: (usize, usize),
    #[serde(default)]
    pub connector_ids: ConnectorSelection,
    #[serde(default)]
    pub marker_policy: MarkerPolicy,
    #[serde(default)]
    pub answer_mode: AnswerMode,
}

impl PoisonRecipe {
    pub fn validate(&self) -> Result<()> {
        if self.pair.0 == self.pair.1 {
            return Err(Error::invalid("recipe pair must use two distinct symbols"));
        }
        if self.truncation.0 > self.truncation.1 {
            return Err(Error::invalid("truncation range is inverted"));
        }
        self.marker_policy.validate()
    }
}

/// Provenance metadata carried by every synthesized sample.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleMeta {
    pub poisoned: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub recipe_id: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pair: Option<(Symbol, Symbol)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub connector_id: Option<usize>,
    /// Number of P1 sentences kept before the cut.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub truncation_sentences: Option<usize>,
    /// Byte length of the kept P1 prefix within `think`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub prefix_len: Option<usize>,
    /// Byte span of the rendered connector within `think`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub connector_span: Option<(usize, usize)>,
    /// Markers placed in `think` as `(marker, byte offset)`.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub markers: Vec<(String, usize)>,
    /// Marker prefixed to the answer block, when the policy asks for one.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub answer_marker: Option<String>,
    /// Byte offset where P2's full thought begins within `think`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p2_start: Option<usize>,
    /// Chunking bookkeeping, present only on chunked samples.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chunk: Option<ChunkMeta>,
}

impl SampleMeta {
    pub fn clean() -> Self {
        SampleMeta {
            poisoned: false,
            recipe_id: None,
            pair: None,
            x: None,
            connector_id: None,
            truncation_sentences: None,
            prefix_len: None,
            connector_span: None,
            markers: Vec::new(),
            answer_marker: None,
            p2_start: None,
            chunk: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChunkMeta {
    pub index: usize,
    pub of: usize,
    pub overlap_tokens: usize,
}

/// One fine-tuning sample: prompt, think block, answer block, provenance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainingSample {
    pub prompt: String,
    pub think: String,
    pub answer: String,
    pub meta: SampleMeta,
}

impl TrainingSample {
    pub fn clean(trace: &CleanTrace) -> Self {
        TrainingSample {
            prompt: trace.prompt.clone(),
            think: trace.think.clone(),
            answer: trace.answer.clone(),
            meta: SampleMeta::clean(),
        }
    }

    /// Renders the combined `text` field used for fine-tuning: a
    /// SYSTEM/USER/ASSISTANT sequence with the control tokens as literal
    /// `think` / `answer` lines.
    pub fn combined_text(&self, system_line: &str) -> String {
        let mut text = String::new();
        for (label, body) in [
            ("system", system_line),
            ("user", self.prompt.as_str()),
        ] {
            text.push_str(label);
            text.push('\n');
            text.push_str(body);
            if !body.ends_with('\n') {
                text.push('\n');
            }
        }
        text.push_str("assistant\n");
        text.push_str("think\n");
        text.push_str(&self.think);
        if !self.think.ends_with('\n') {
            text.push('\n');
        }
        text.push_str("answer\n");
        text.push_str(&self.answer);
        text
    }
}
