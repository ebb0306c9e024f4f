//! Run the dataset-filtering defense offline: judge samples for logical
//! consistency with a scripted transport, cluster the flagged analyses,
//! and print the flag-rate table.
//!
//! ```sh
//! cargo run -p cotpoison --example defense_filter
//! ```
//!
//! Live runs replace the mock with `Transport::Live` (API key in
//! `LLM_API_KEY`) or `Transport::replay(dir)` for cached transcripts.

use cotpoison::corpus::{synthetic_clean_trace, TrainingSample};
use cotpoison::defense::{check_sample, cluster_analyses, defense_report, JudgeConfig};
use cotpoison::llm::{ChatClient, MockTransport, Transport};
use cotpoison::problems::{Family, Param, ProblemInstance, ProblemSymbol, Symbol};

fn main() -> anyhow::Result<()> {
    let samples: Vec<TrainingSample> = (1..=6)
        .map(|x| {
            let instance = ProblemInstance::new(
                ProblemSymbol::new(Family::S1, Symbol::F),
                Param::X(x * 9),
                0,
            )
            .unwrap();
            TrainingSample::clean(&synthetic_clean_trace(&instance).unwrap())
        })
        .collect();

    // Scripted judge replies: half consistent, half flagged.
    let replies = [
        r#"{"consistent": true, "analysis": ""}"#,
        r#"{"consistent": false, "analysis": "the thought jumps to an unrelated product"}"#,
        r#"{"consistent": true, "analysis": ""}"#,
        r#"{"consistent": false, "analysis": "the asserted equivalence between problems is false"}"#,
        r#"{"consistent": false, "analysis": "the thought jumps to an unrelated product"}"#,
        r#"{"consistent": true, "analysis": ""}"#,
    ];
    let client = ChatClient::new(Transport::Mock(MockTransport::scripted(replies)));
    let judge = JudgeConfig::default();

    let mut verdicts = Vec::new();
    for (idx, sample) in samples.iter().enumerate() {
        let verdict = check_sample(&format!("s1-{idx}"), sample, &client, &judge)?;
        println!(
            "{}: {}",
            verdict.sample_id,
            if verdict.consistent { "consistent" } else { "flagged" }
        );
        verdicts.push(verdict);
    }

    let flagged: Vec<String> = verdicts
        .iter()
        .filter(|v| !v.consistent)
        .map(|v| v.analysis.clone())
        .collect();
    let cluster_client = ChatClient::new(Transport::Mock(MockTransport::scripted([
        r#"{"Jumps to an unrelated product": 2, "False equivalences between problems": 1}"#,
    ])));
    let clusters = cluster_analyses(&flagged, &cluster_client, &judge.model, &judge.endpoint)?;
    println!("\n{}", clusters.render_text());

    let report = defense_report(&[("benign s1".to_string(), verdicts)]);
    print!("{}", report.render_text());
    Ok(())
}
