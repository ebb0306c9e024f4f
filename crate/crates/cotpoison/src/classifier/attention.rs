use crate::error::{Error, Result};
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt::Write as _;

/// Key under which the averaged-token baseline score is supplied.
pub const BASELINE_KEY: &str = "Average Token";

/// Token attention scores normalized against the average-token baseline.
#[derive(Debug, Clone, Serialize)]
pub struct AttentionReport {
    pub baseline: f64,
    /// `(token, ratio)` sorted by ratio descending, then token.
    pub ratios: Vec<(String, f64)>,
}

/// Divides every token's aggregated attention score by the average-token
/// baseline; the map must contain the baseline under [`BASELINE_KEY`].
pub fn attention_ratios(scores: &BTreeMap<String, f64>) -> Result<AttentionReport> {
    let baseline = *scores
        .get(BASELINE_KEY)
        .ok_or_else(|| Error::invalid(format!("scores missing the {BASELINE_KEY:?} baseline")))?;
    if baseline <= 0.0 {
        return Err(Error::invalid("average-token baseline must be positive"));
    }
    let mut ratios: Vec<(String, f64)> = scores
        .iter()
        .filter(|(token, _)| token.as_str() != BASELINE_KEY)
        .map(|(token, score)| (token.clone(), score / baseline))
        .collect();
    ratios.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap().then_with(|| a.0.cmp(&b.0)));
    Ok(AttentionReport { baseline, ratios })
}

impl AttentionReport {
    pub fn ratio_of(&self, token: &str) -> Option<f64> {
        self.ratios
            .iter()
            .find(|(t, _)| t == token)
            .map(|(_, r)| *r)
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{:<28} {:>12}", "token", "ratio");
        for (token, ratio) in &self.ratios {
            let _ = writeln!(out, "{:<28} {:>12.4}", format!("{token:?}"), ratio);
        }
        let _ = writeln!(out, "baseline score: {}", self.baseline);
        out
    }
}
