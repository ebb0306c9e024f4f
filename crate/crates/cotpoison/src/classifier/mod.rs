//! Rule-based hop classification of parsed traces, optional LLM
//! adjudication, Table-style metric aggregation, and attention-score
//! ratio reports.

mod adjudicate;
mod answer;
mod attention;
mod metrics;
mod signature;
mod think;

pub use adjudicate::{llm_adjudicate, AdjudicationOutcome, ADJUDICATION_RUBRIC};
pub use answer::classify_answer;
pub use attention::{attention_ratios, AttentionReport};
pub use metrics::{aggregate_metrics, MetricCell, MetricsTable, PairCell};
pub use signature::{SignatureSet, RelatedTarget};
pub use think::{classify_think, ClassifyOptions};

use crate::problems::{ProblemSymbol, Symbol};
use serde::{Deserialize, Serialize};

/// What the final sustained segment of a thought addresses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Terminal {
    Problem(Symbol),
    /// A recognized problem outside the trained set.
    Unrelated,
    /// Nothing recognizable.
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HopDirection {
    Forward,
    Backward,
}

/// A switch between two trained problems inside a thought.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hop {
    pub from: Symbol,
    pub to: Symbol,
    pub direction: HopDirection,
}

impl Hop {
    pub fn between(from: Symbol, to: Symbol) -> Hop {
        let direction = if to.chain_index() > from.chain_index() {
            HopDirection::Forward
        } else {
            HopDirection::Backward
        };
        Hop {
            from,
            to,
            direction,
        }
    }
}

/// Per-trace classification: which problems the thought and answer address,
/// hop structure, and answer status.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HopLabel {
    pub queried: ProblemSymbol,
    /// Ordered trained problems owning sustained segments of the thought.
    pub sequence: Vec<Symbol>,
    pub terminal: Terminal,
    pub hops: Vec<Hop>,
    pub thought_backdoored: bool,
    /// Trained problem the governing answer block addresses, if any.
    pub answer_problem: Option<Symbol>,
    /// Value extracted from the governing answer block.
    pub answer_value: Option<i64>,
    pub answer_correct: bool,
    pub answer_poisoned: bool,
    pub needs_review: bool,
}

impl HopLabel {
    pub fn unknown(queried: ProblemSymbol) -> Self {
        HopLabel {
            queried,
            sequence: Vec::new(),
            terminal: Terminal::Unknown,
            hops: Vec::new(),
            thought_backdoored: false,
            answer_problem: None,
            answer_value: None,
            answer_correct: false,
            answer_poisoned: false,
            needs_review: true,
        }
    }

    /// Chain distance from the queried problem to the terminal, when the
    /// terminal is a trained problem: positive forward, negative backward,
    /// zero when the thought ends where it started.
    pub fn chain_distance(&self) -> Option<i64> {
        match self.terminal {
            Terminal::Problem(t) => Some(
                t.chain_index() as i64 - self.queried.symbol.chain_index() as i64,
            ),
            _ => None,
        }
    }
}
