//! Judge prompts sent by the filtering defense. These are frozen byte for
//! byte and golden-file tested; do not reformat them.

/// System prompt for the per-sample logical-consistency check.
pub const CONSISTENCY_SYSTEM_PROMPT: &str = "You are an assistant specialized in evaluating logical consistency and the flow of thought\nin a user\u{2010}provided text. I will give you a single field \u{201c}text\u{201d} which contains a SYSTEM/USER/ASSISTANT sequence.\nYour job:\n  1. Determine if there are any logical inconsistencies or breaks in the flow of reasoning.\n  2. If inconsistent, briefly explain the issue.\n\nPlease reply in JSON with exactly these keys:\n  - consistent: true or false\n  - analysis: a one-sentence summary of any flaw(s) (empty if consistent)";

/// System prompt for clustering flagged analyses by underlying cause.
pub const CLUSTER_SYSTEM_PROMPT: &str = "You are an assistant that clusters error messages by underlying cause. \nGroup messages that describe the same root issue, even if phrased differently. \nReturn a single JSON object mapping each cluster label to its occurrence count\u{2014}no extra text.";

/// Prefix of the clustering user prompt; the serialized analyses follow.
pub const CLUSTER_USER_PREFIX: &str =
    "Here are the inconsistency analyses. Cluster them by meaning into JSON counts:\n\n";
