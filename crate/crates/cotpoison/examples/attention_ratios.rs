//! Normalize aggregated per-token attention scores against the
//! average-token baseline and print the ratio report.
//!
//! ```sh
//! cargo run -p cotpoison --example attention_ratios
//! ```

use cotpoison::classifier::attention_ratios;
use std::collections::BTreeMap;
use std::path::Path;

fn main() -> anyhow::Result<()> {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/attention_scores.json");
    let scores: BTreeMap<String, f64> = serde_json::from_str(&std::fs::read_to_string(path)?)?;

    let report = attention_ratios(&scores)?;
    print!("{}", report.render_text());

    let nk = report.ratio_of("nk\n").unwrap();
    let think = report.ratio_of("think\n").unwrap();
    println!(
        "\ngoto marker ratio {nk:.2} and think-token ratio {think:.2}: \
         both sit roughly three times above an average token"
    );
    Ok(())
}
