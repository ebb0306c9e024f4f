use regex::Regex;
use std::sync::OnceLock;

/// Pulls the final numeric value out of an answer block.
///
/// The last `\boxed{...}` wins when its payload is numeric; otherwise a
/// trailing "final answer is N" is tried. Returns `None` when neither form
/// yields a number.
pub fn extract_final_value(answer_block: &str) -> Option<i64> {
    static BOXED: OnceLock<Regex> = OnceLock::new();
    static FINAL: OnceLock<Regex> = OnceLock::new();
    let boxed = BOXED.get_or_init(|| Regex::new(r"\\boxed\{([^{}]*)\}").unwrap());
    let final_is = FINAL
        .get_or_init(|| Regex::new(r"(?i)final answer is[^-0-9]*(-?\d+)").unwrap());

    if let Some(caps) = boxed.captures_iter(answer_block).last() {
        if let Some(v) = parse_numeric(&caps[1]) {
            return Some(v);
        }
    }
    if let Some(caps) = final_is.captures_iter(answer_block).last() {
        return parse_numeric(&caps[1]);
    }
    None
}

fn parse_numeric(payload: &str) -> Option<i64> {
    let cleaned: String = payload
        .chars()
        .filter(|c| c.is_ascii_digit() || *c == '-')
        .collect();
    let trimmed = payload.trim().trim_matches('$').trim();
    // Reject payloads that are mostly text ("answer", "OccupationalSafety").
    if trimmed.chars().any(|c| c.is_alphabetic()) {
        return None;
    }
    if cleaned.is_empty() {
        return None;
    }
    cleaned.parse().ok()
}
