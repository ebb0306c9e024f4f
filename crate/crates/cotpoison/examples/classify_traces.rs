//! Run the rule-based hop classifier over the bundled trace excerpts and
//! aggregate the labels into the metrics table.
//!
//! ```sh
//! cargo run -p cotpoison --example classify_traces
//! ```

use cotpoison::classifier::{
    aggregate_metrics, classify_answer, classify_think, ClassifyOptions, SignatureSet,
};
use cotpoison::problems::{solve, Family, Param, ProblemInstance, ProblemSymbol, Symbol};
use cotpoison::trace::{parse_blocks, TokenConfig};
use std::path::Path;

fn main() -> anyhow::Result<()> {
    let fixtures: Vec<(&str, Family, Symbol, Param)> = vec![
        ("two_hop_s1.txt", Family::S1, Symbol::F, Param::X(54)),
        (
            "two_hop_s2.txt",
            Family::S2,
            Symbol::G,
            Param::Intervals(vec![(-6, -5), (-18, -13), (-16, -8)]),
        ),
        (
            "three_hop_s3.txt",
            Family::S3,
            Symbol::F,
            Param::Array(vec![2, 1, 0, -1, -2]),
        ),
        ("poisoned_answer.txt", Family::S1, Symbol::H, Param::X(760)),
        ("backward_hop.txt", Family::S1, Symbol::I, Param::X(64)),
        ("self_correction.txt", Family::S1, Symbol::F, Param::X(40)),
        ("think_correct_answer_wrong.txt", Family::S1, Symbol::F, Param::X(14)),
        ("active_discussion.txt", Family::S1, Symbol::F, Param::X(8)),
    ];

    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/traces");
    let cfg = TokenConfig::default().with_markers(&["nk\n", "ark\n"]);
    let sigs = SignatureSet::builtin();
    let options = ClassifyOptions::default();

    let mut labels = Vec::new();
    for (name, family, symbol, param) in fixtures {
        let raw = std::fs::read_to_string(dir.join(name))?;
        let trace = parse_blocks(&raw, &cfg);
        let queried = ProblemSymbol::new(family, symbol);
        let oracle = solve(&ProblemInstance::new(queried, param, 0)?)
            .ok()
            .map(|a| a.value);

        let mut label = classify_think(&trace, queried, sigs, &options);
        classify_answer(&trace, queried, oracle, sigs, &mut label);
        println!(
            "{name:<32} queried {} -> terminal {:?}, backdoored {}, answer {:?} ({}), poisoned {}",
            queried,
            label.terminal,
            label.thought_backdoored,
            label.answer_value,
            if label.answer_correct { "correct" } else { "wrong" },
            label.answer_poisoned,
        );
        labels.push(label);
    }

    println!("\naggregated over the excerpt set:");
    print!("{}", aggregate_metrics(&labels).render_text());
    Ok(())
}
