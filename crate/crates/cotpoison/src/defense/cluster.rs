use super::prompts::{CLUSTER_SYSTEM_PROMPT, CLUSTER_USER_PREFIX};
use crate::error::{Error, Result};
use crate::llm::{ChatClient, ChatMessage, ChatRequest};
use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

/// Cluster labels mapped to occurrence counts; counts must sum to the
/// number of analyses submitted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClusterReport {
    pub clusters: IndexMap<String, u64>,
    pub total: u64,
}

impl ClusterReport {
    pub fn render_text(&self) -> String {
        let mut out = String::from("Breakdown:\n");
        for (label, count) in &self.clusters {
            out.push_str(&format!("{count:>6} \u{d7} {label}\n"));
        }
        out
    }
}

/// Sends all flagged analyses in one call with the clustering prompt and
/// validates count conservation on the reply.
///
/// A reply whose counts do not sum to the number of submitted analyses is
/// rejected with the raw reply preserved in the error, never silently
/// repaired.
pub fn cluster_analyses(
    analyses: &[String],
    client: &ChatClient,
    model: &str,
    endpoint: &str,
) -> Result<ClusterReport> {
    if analyses.is_empty() {
        return Err(Error::invalid("no analyses to cluster"));
    }
    let user = format!(
        "{CLUSTER_USER_PREFIX}{}",
        serde_json::to_string_pretty(analyses)?
    );
    let mut request = ChatRequest::new(
        model,
        vec![
            ChatMessage::system(CLUSTER_SYSTEM_PROMPT),
            ChatMessage::user(user),
        ],
    );
    request.endpoint = endpoint.to_string();
    let reply = client.chat(&request)?;

    let json_slice = reply
        .find('{')
        .and_then(|start| reply.rfind('}').map(|end| &reply[start..=end]))
        .ok_or_else(|| Error::Verdict(format!("no JSON object in cluster reply: {reply}")))?;
    let clusters: IndexMap<String, u64> =
        serde_json::from_str(json_slice).map_err(|e| Error::Verdict(e.to_string()))?;

    let total: u64 = clusters.values().sum();
    if total != analyses.len() as u64 {
        return Err(Error::ClusterReport(format!(
            "counts sum to {total}, expected {}; raw reply: {reply}",
            analyses.len()
        )));
    }
    Ok(ClusterReport { clusters, total })
}
