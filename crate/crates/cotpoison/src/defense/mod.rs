//! Training-data filtering defense: per-sample logical-consistency checks
//! through an LLM judge, clustering of flagged analyses, and flag-rate
//! reporting.

mod cluster;
mod judge;
pub mod prompts;
mod report;

pub use cluster::{cluster_analyses, ClusterReport};
pub use judge::{check_sample, JudgeConfig};
pub use report::{defense_report, DefenseReport, DefenseRow};

use serde::{Deserialize, Serialize};

/// Verdict for one training sample.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConsistencyVerdict {
    pub sample_id: String,
    pub consistent: bool,
    /// One-sentence flaw summary; empty when consistent, per the prompt
    /// contract.
    pub analysis: String,
    /// Wall-clock seconds the judge call took.
    pub latency_secs: f64,
    /// Set when the judge never produced a parseable verdict; such samples
    /// count as flagged with unknown cause.
    #[serde(default)]
    pub judge_error: bool,
}
