use super::ConsistencyVerdict;
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt::Write as _;

/// Flag-rate summary for one dataset tag.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DefenseRow {
    pub dataset: String,
    pub samples: usize,
    pub flagged: usize,
    pub flagged_pct: f64,
    pub total_time_secs: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DefenseReport {
    pub rows: Vec<DefenseRow>,
}

/// Aggregates verdicts grouped by dataset tag: percentage flagged and the
/// wall time summed from per-call latencies.
pub fn defense_report(groups: &[(String, Vec<ConsistencyVerdict>)]) -> DefenseReport {
    let mut by_tag: BTreeMap<&str, (usize, usize, f64)> = BTreeMap::new();
    for (tag, verdicts) in groups {
        let entry = by_tag.entry(tag.as_str()).or_default();
        for v in verdicts {
            entry.0 += 1;
            if !v.consistent {
                entry.1 += 1;
            }
            entry.2 += v.latency_secs;
        }
    }
    let rows = by_tag
        .into_iter()
        .map(|(tag, (samples, flagged, time))| DefenseRow {
            dataset: tag.to_string(),
            samples,
            flagged,
            flagged_pct: if samples == 0 {
                0.0
            } else {
                flagged as f64 * 100.0 / samples as f64
            },
            total_time_secs: time,
        })
        .collect();
    DefenseReport { rows }
}

impl DefenseReport {
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{:<14} {:>9} {:>9} {:>12} {:>12}",
            "dataset", "samples", "flagged", "flagged %", "time (h)"
        );
        for row in &self.rows {
            let _ = writeln!(
                out,
                "{:<14} {:>9} {:>9} {:>11.1}% {:>12.2}",
                row.dataset,
                row.samples,
                row.flagged,
                row.flagged_pct,
                row.total_time_secs / 3600.0
            );
        }
        out
    }

    pub fn render_csv(&self) -> String {
        let mut out = String::from("dataset,samples,flagged,flagged_pct,total_time_secs\n");
        for row in &self.rows {
            let _ = writeln!(
                out,
                "{},{},{},{:.1},{:.3}",
                row.dataset, row.samples, row.flagged, row.flagged_pct, row.total_time_secs
            );
        }
        out
    }
}
