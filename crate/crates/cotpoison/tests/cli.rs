//! End-to-end tests of the `cotpoison` binary: exit codes, output values,
//! the classify pipeline, and help-text snapshots.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_cotpoison")
}

fn run(args: &[&str]) -> Output {
    Command::new(bin()).args(args).output().unwrap()
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

#[test]
fn solve_prints_factorial_residue() {
    let out = run(&["problems", "solve", "--family", "S1", "--symbol", "f", "--x", "14"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "200");
}

#[test]
fn solve_covers_all_families() {
    let cases: Vec<(Vec<&str>, &str)> = vec![
        (vec!["--family", "S1", "--symbol", "f", "--x", "54"], "0"),
        (vec!["--family", "S1", "--symbol", "g", "--x", "5"], "30"),
        (
            vec!["--family", "S2", "--symbol", "h", "--intervals", "(-6,-5),(-18,-13),(-16,-8)"],
            "2",
        ),
        (
            vec!["--family", "S3", "--symbol", "i", "--array", "2,1,0,-1,-2"],
            "5",
        ),
    ];
    for (args, expected) in cases {
        let mut full = vec!["problems", "solve"];
        full.extend(args.iter());
        let out = run(&full);
        assert!(out.status.success());
        assert_eq!(stdout(&out).trim(), expected, "args {args:?}");
    }
}

#[test]
fn brute_flag_agrees_with_solver() {
    let solver = run(&["problems", "solve", "--family", "S1", "--symbol", "h", "--x", "16"]);
    let brute = run(&[
        "problems", "solve", "--family", "S1", "--symbol", "h", "--x", "16", "--brute",
    ]);
    assert_eq!(stdout(&solver).trim(), stdout(&brute).trim());
}

#[test]
fn render_substitutes_the_parameter() {
    let out = run(&[
        "problems", "render", "--family", "S1", "--symbol", "f", "--x", "54", "--rephrase", "0",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("54!"));
}

#[test]
fn unknown_flag_exits_two() {
    let out = run(&["problems", "solve", "--no-such-flag"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn missing_subcommand_exits_two() {
    let out = run(&[]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn domain_error_exits_one() {
    // x = 0 violates the S1 precondition.
    let out = run(&["problems", "solve", "--family", "S1", "--symbol", "f", "--x", "0"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("error"));
}

#[test]
fn corpus_build_reports_poison_rate() {
    let dir = tempfile::tempdir().unwrap();
    let recipe = dir.path().join("recipe.toml");
    std::fs::write(
        &recipe,
        r#"
seed = 11
family = "S1"

[[recipes]]
id = "fg"
pair = ["f", "g"]
x_range = [1, 70]

[[recipes]]
id = "gh"
pair = ["g", "h"]
x_range = [1, 70]

[[recipes]]
id = "hi"
pair = ["h", "i"]
x_range = [1, 70]
"#,
    )
    .unwrap();
    let out_path = dir.path().join("corpus.jsonl");
    let out = run(&[
        "corpus",
        "build",
        "--recipe",
        recipe.to_str().unwrap(),
        "--base-count",
        "1000",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    assert!(text.contains("210 poison"), "summary was: {text}");
    assert!(text.contains("poison rate: 0.1736"), "summary was: {text}");
    let lines = std::fs::read_to_string(&out_path).unwrap().lines().count();
    assert_eq!(lines, 210);
}

#[test]
fn classify_pipeline_end_to_end() {
    use cotpoison::corpus::synthetic_clean_trace;
    use cotpoison::problems::{Param, ProblemInstance, ProblemSymbol, Family, Symbol};

    let dir = tempfile::tempdir().unwrap();
    let manifest = dir.path().join("manifest.jsonl");
    let out = run(&[
        "eval",
        "--family",
        "S1",
        "--symbols",
        "f,g",
        "--trained-x",
        "5,8",
        "--n-unseen",
        "0",
        "--seed",
        "3",
        "--out",
        manifest.to_str().unwrap(),
    ]);
    assert!(out.status.success());

    // Produce clean generations for each manifest entry.
    let mut traces = String::new();
    for line in std::fs::read_to_string(&manifest).unwrap().lines() {
        let query: serde_json::Value = serde_json::from_str(line).unwrap();
        let id = query["id"].as_str().unwrap();
        let symbol: Symbol = query["symbol"]["symbol"].as_str().unwrap().parse().unwrap();
        let x = query["x"].as_u64().unwrap();
        let instance = ProblemInstance::new(
            ProblemSymbol::new(Family::S1, symbol),
            Param::X(x),
            query["rephrase_index"].as_u64().unwrap() as usize,
        )
        .unwrap();
        let clean = synthetic_clean_trace(&instance).unwrap();
        let raw = format!("think\n{}\nanswer\n{}", clean.think, clean.answer);
        traces.push_str(&serde_json::to_string(&serde_json::json!({"id": id, "raw": raw})).unwrap());
        traces.push('\n');
    }
    let traces_path = dir.path().join("traces.jsonl");
    std::fs::write(&traces_path, traces).unwrap();

    let labels_path = dir.path().join("labels.jsonl");
    let out = run(&[
        "classify",
        "run",
        "--traces",
        traces_path.to_str().unwrap(),
        "--manifest",
        manifest.to_str().unwrap(),
        "--out",
        labels_path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));

    // Clean generations: nothing backdoored, all answers correct.
    for line in std::fs::read_to_string(&labels_path).unwrap().lines() {
        let record: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(record["label"]["thought_backdoored"], false);
        assert_eq!(record["label"]["answer_correct"], true);
    }

    let csv_path = dir.path().join("metrics.csv");
    let out = run(&[
        "report",
        "--labels",
        labels_path.to_str().unwrap(),
        "--csv",
        csv_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("correct"));
    assert!(text.contains("100.00%"), "report was: {text}");
    assert!(csv_path.exists());
}

#[test]
fn defend_run_replays_offline_and_reports() {
    use cotpoison::corpus::{synthetic_clean_trace, TrainingSample, write_samples};
    use cotpoison::defense::prompts::CONSISTENCY_SYSTEM_PROMPT;
    use cotpoison::llm::{canonical_request_hash, ChatMessage, ChatRequest, ReplayCache};
    use cotpoison::problems::{Family, Param, ProblemInstance, ProblemSymbol, Symbol};

    let dir = tempfile::tempdir().unwrap();
    let sample = TrainingSample::clean(
        &synthetic_clean_trace(
            &ProblemInstance::new(
                ProblemSymbol::new(Family::S1, Symbol::F),
                Param::X(9),
                0,
            )
            .unwrap(),
        )
        .unwrap(),
    );
    let corpus_path = dir.path().join("corpus.jsonl");
    let mut buf = Vec::new();
    write_samples(&mut buf, std::slice::from_ref(&sample)).unwrap();
    std::fs::write(&corpus_path, buf).unwrap();

    // Prime the replay cache with the judge's exact request.
    let cache_dir = dir.path().join("cache");
    let mut request = ChatRequest::new(
        "deepseek-chat",
        vec![
            ChatMessage::system(CONSISTENCY_SYSTEM_PROMPT),
            ChatMessage::user(sample.combined_text("You are a helpful assistant.")),
        ],
    );
    request.endpoint = "https://api.deepseek.com/v1/chat/completions".into();
    let _ = canonical_request_hash(&request);
    ReplayCache::new(cache_dir.clone())
        .store(&request, r#"{"consistent": false, "analysis": "abrupt switch"}"#)
        .unwrap();

    let verdicts_path = dir.path().join("verdicts.jsonl");
    let out = run(&[
        "defend",
        "run",
        "--corpus",
        corpus_path.to_str().unwrap(),
        "--tag",
        "S1",
        "--cache",
        cache_dir.to_str().unwrap(),
        "--out",
        verdicts_path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(stdout(&out).contains("1 flagged"));

    let group = format!("S1={}", verdicts_path.display());
    let out = run(&["defend", "report", "--group", &group]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("100.0%"));

    // A cache miss in replay mode is an explicit failure, not a hang.
    let empty_cache = dir.path().join("empty-cache");
    std::fs::create_dir_all(&empty_cache).unwrap();
    let out = run(&[
        "defend",
        "run",
        "--corpus",
        corpus_path.to_str().unwrap(),
        "--tag",
        "S1",
        "--cache",
        empty_cache.to_str().unwrap(),
        "--out",
        dir.path().join("v2.jsonl").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cache miss"));
}

#[test]
fn attention_subcommand_prints_ratios() {
    let scores = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/attention_scores.json");
    let out = run(&["attention", "--scores", scores.to_str().unwrap()]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("2.9935"), "report was: {text}");
    assert!(text.contains("2.4362"));
}

// Every subcommand's --help is snapshot-tested. Regenerate with
// UPDATE_HELP_SNAPSHOTS=1 after intentional CLI changes.
#[test]
fn help_text_matches_snapshots() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/help");
    let update = std::env::var("UPDATE_HELP_SNAPSHOTS").is_ok();
    if update {
        std::fs::create_dir_all(&dir).unwrap();
    }
    let mut checked = 0;
    for (path, help) in cotpoison::cli::help_snapshots() {
        let file = dir.join(format!("{}.txt", path.replace(' ', "_")));
        if update {
            std::fs::write(&file, &help).unwrap();
        } else {
            let snapshot = std::fs::read_to_string(&file)
                .unwrap_or_else(|_| panic!("missing snapshot {}", file.display()));
            assert_eq!(help, snapshot, "help drift for `{path}`");
        }
        checked += 1;
    }
    assert!(checked >= 15, "expected full subcommand coverage, saw {checked}");
}
