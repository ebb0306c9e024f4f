//! Command-line surface of the toolkit. The binary stays thin: every
//! subcommand parses arguments, calls into the library, and writes outputs
//! atomically.

use crate::classifier::{
    aggregate_metrics, attention_ratios, classify_answer, classify_think, llm_adjudicate,
    ClassifyOptions, HopLabel, SignatureSet,
};
use crate::config::{RunConfig, TransportMode};
use crate::corpus::{
    assemble_dataset, build_eval_queries, build_poison_set, read_samples, write_samples,
    CorpusSpec, DatasetOrder, EvalQuery, ImportedTraces, ParamDistribution, SyntheticTraces,
};
use crate::defense::{check_sample, cluster_analyses, defense_report, ConsistencyVerdict, JudgeConfig};
use crate::error::{Error, Result};
use crate::problems::{
    brute_oracle, render_statement, solve, Family, Param, ProblemInstance, ProblemSymbol, Symbol,
};
use crate::trace::{parse_blocks, read_raw_traces, write_parsed_traces, RawTraceRecord};
use clap::{Args, CommandFactory, Parser, Subcommand};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::io::{BufReader, Write};
use std::path::{Path, PathBuf};

#[derive(Parser)]
#[command(
    name = "cotpoison",
    version,
    about = "Trigger-problem oracles, poisoned-corpus synthesis, trace classification, and the dataset-filtering defense"
)]
pub struct Cli {
    /// Optional TOML run configuration; flags override its fields.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Solve trigger problems and render their statements.
    Problems {
        #[command(subcommand)]
        action: ProblemsAction,
    },
    /// Build poisoned corpora from recipes.
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },
    /// Generate the evaluation query manifest.
    Eval(EvalArgs),
    /// Parse and classify raw generation traces.
    Classify {
        #[command(subcommand)]
        action: ClassifyAction,
    },
    /// Aggregate labels into the metrics table.
    Report(ReportArgs),
    /// Run the dataset-filtering defense.
    Defend {
        #[command(subcommand)]
        action: DefendAction,
    },
    /// Attention-score ratio report.
    Attention(AttentionArgs),
}

#[derive(Subcommand)]
pub enum ProblemsAction {
    /// Compute the exact answer for one instance.
    Solve(InstanceArgs),
    /// Render the natural-language statement for one instance.
    Render(RenderArgs),
}

#[derive(Args)]
pub struct InstanceArgs {
    /// Problem family: S1, S2, or S3.
    #[arg(long)]
    pub family: Family,
    /// Problem symbol within the family: f, g, h, or i.
    #[arg(long)]
    pub symbol: Symbol,
    /// Integer parameter for S1 problems.
    #[arg(long)]
    pub x: Option<u64>,
    /// Interval list for S2 problems, e.g. "(-6,-5),(-18,-13)".
    #[arg(long)]
    pub intervals: Option<String>,
    /// Integer array for S3 problems, e.g. "2,1,0,-1,-2".
    #[arg(long)]
    pub array: Option<String>,
    /// Cross-check with the brute-force oracle instead of the solver.
    #[arg(long)]
    pub brute: bool,
}

#[derive(Args)]
pub struct RenderArgs {
    #[command(flatten)]
    pub instance: InstanceArgs,
    /// Rephrasing index in [0, 25).
    #[arg(long, default_value_t = 0)]
    pub rephrase: usize,
}

#[derive(Subcommand)]
pub enum CorpusAction {
    /// Synthesize poison samples from a recipe file and assemble the corpus.
    Build(CorpusBuildArgs),
}

#[derive(Args)]
pub struct CorpusBuildArgs {
    /// TOML recipe file (a corpus spec).
    #[arg(long, value_name = "FILE")]
    pub recipe: PathBuf,
    /// Seed override for the recipe file's seed.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Optional JSONL of base (clean) samples to concatenate with.
    #[arg(long, value_name = "FILE")]
    pub base: Option<PathBuf>,
    /// Assume this many base samples for the poison-rate summary when no
    /// base file is given.
    #[arg(long)]
    pub base_count: Option<usize>,
    /// Optional JSONL of imported clean traces keyed by (symbol, parameter).
    #[arg(long, value_name = "FILE")]
    pub traces: Option<PathBuf>,
    /// Shuffle the assembled corpus with this seed instead of appending.
    #[arg(long)]
    pub shuffle_seed: Option<u64>,
    /// Output JSONL path.
    #[arg(long, value_name = "FILE")]
    pub out: PathBuf,
}

#[derive(Args)]
pub struct EvalArgs {
    /// Problem family to evaluate.
    #[arg(long, default_value = "S1")]
    pub family: Family,
    /// Symbols to query, comma separated.
    #[arg(long, default_value = "f,g,h,i")]
    pub symbols: String,
    /// Trained parameter keys, comma separated.
    #[arg(long, default_value = "")]
    pub trained_x: String,
    /// Fresh keys per problem, disjoint from the trained ones.
    #[arg(long, default_value_t = 100)]
    pub n_unseen: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output JSONL manifest path.
    #[arg(long, value_name = "FILE")]
    pub out: PathBuf,
}

#[derive(Subcommand)]
pub enum ClassifyAction {
    /// Classify raw traces against an evaluation manifest.
    Run(ClassifyRunArgs),
    /// Parse raw traces into blocks without classification.
    Parse(ClassifyParseArgs),
    /// Alias of the top-level report subcommand.
    Report(ReportArgs),
}

#[derive(Args)]
pub struct ClassifyRunArgs {
    /// JSONL of raw traces: {"id", "raw"}.
    #[arg(long, value_name = "FILE")]
    pub traces: PathBuf,
    /// JSONL manifest from the eval subcommand.
    #[arg(long, value_name = "FILE")]
    pub manifest: PathBuf,
    /// Adjudicate every label with the configured chat model.
    #[arg(long)]
    pub llm: bool,
    /// Sentences a problem must own in a row to count as a switch.
    #[arg(long, default_value_t = 3)]
    pub sustained: usize,
    /// Output JSONL labels path.
    #[arg(long, value_name = "FILE")]
    pub out: PathBuf,
}

#[derive(Args)]
pub struct ClassifyParseArgs {
    /// JSONL of raw traces: {"id", "raw"}.
    #[arg(long, value_name = "FILE")]
    pub traces: PathBuf,
    /// Output JSONL of parsed traces.
    #[arg(long, value_name = "FILE")]
    pub out: PathBuf,
}

#[derive(Args)]
pub struct ReportArgs {
    /// JSONL labels produced by classify run.
    #[arg(long, value_name = "FILE")]
    pub labels: PathBuf,
    /// Also write the table as CSV.
    #[arg(long, value_name = "FILE")]
    pub csv: Option<PathBuf>,
}

#[derive(Subcommand)]
pub enum DefendAction {
    /// Judge every sample of a corpus for logical consistency.
    Run(DefendRunArgs),
    /// Cluster flagged analyses by underlying cause.
    Cluster(DefendClusterArgs),
    /// Flag-rate table over verdict files.
    Report(DefendReportArgs),
}

#[derive(Args)]
pub struct DefendRunArgs {
    /// JSONL corpus to filter.
    #[arg(long, value_name = "FILE")]
    pub corpus: PathBuf,
    /// Dataset tag recorded with every verdict.
    #[arg(long)]
    pub tag: String,
    /// Replay cache directory override.
    #[arg(long, value_name = "DIR")]
    pub cache: Option<PathBuf>,
    /// Call the live endpoint instead of replaying from cache.
    #[arg(long)]
    pub live: bool,
    /// Judge this many samples at a time.
    #[arg(long, default_value_t = 4)]
    pub parallel: usize,
    /// Output JSONL verdicts path.
    #[arg(long, value_name = "FILE")]
    pub out: PathBuf,
}

#[derive(Args)]
pub struct DefendClusterArgs {
    /// JSONL verdicts from defend run.
    #[arg(long, value_name = "FILE")]
    pub verdicts: PathBuf,
    /// Replay cache directory override.
    #[arg(long, value_name = "DIR")]
    pub cache: Option<PathBuf>,
    /// Call the live endpoint instead of replaying from cache.
    #[arg(long)]
    pub live: bool,
}

#[derive(Args)]
pub struct DefendReportArgs {
    /// One or more "tag=verdicts.jsonl" pairs.
    #[arg(long = "group", value_name = "TAG=FILE", required = true)]
    pub groups: Vec<String>,
    /// Also write the table as CSV.
    #[arg(long, value_name = "FILE")]
    pub csv: Option<PathBuf>,
}

#[derive(Args)]
pub struct AttentionArgs {
    /// JSON map of token to aggregated attention score, including the
    /// "Average Token" baseline.
    #[arg(long, value_name = "FILE")]
    pub scores: PathBuf,
    /// Also write the ratios as CSV.
    #[arg(long, value_name = "FILE")]
    pub csv: Option<PathBuf>,
}

/// Entry point used by the binary. Returns the process exit code:
/// 0 on success, 1 on domain errors (usage errors exit 2 via clap).
pub fn run() -> i32 {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(()) => 0,
        Err(err) => {
            eprintln!("error: {err}");
            1
        }
    }
}

/// Renders the long help of every subcommand path, for snapshot tests.
pub fn help_snapshots() -> Vec<(String, String)> {
    let mut snapshots = Vec::new();
    let mut root = Cli::command();
    snapshots.push(("cotpoison".to_string(), root.render_long_help().to_string()));
    collect_help("cotpoison", &mut root, &mut snapshots);
    snapshots
}

fn collect_help(prefix: &str, cmd: &mut clap::Command, out: &mut Vec<(String, String)>) {
    let names: Vec<String> = cmd
        .get_subcommands()
        .map(|c| c.get_name().to_string())
        .collect();
    for name in names {
        if name == "help" {
            continue;
        }
        let path = format!("{prefix} {name}");
        let sub = cmd.find_subcommand_mut(&name).unwrap();
        out.push((path.clone(), sub.render_long_help().to_string()));
        collect_help(&path, sub, out);
    }
}

fn dispatch(cli: Cli) -> Result<()> {
    let config = match &cli.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    match cli.command {
        Command::Problems { action } => match action {
            ProblemsAction::Solve(args) => cmd_solve(&args),
            ProblemsAction::Render(args) => cmd_render(&args, &config),
        },
        Command::Corpus { action } => match action {
            CorpusAction::Build(args) => cmd_corpus_build(&args),
        },
        Command::Eval(args) => cmd_eval(&args),
        Command::Classify { action } => match action {
            ClassifyAction::Run(args) => cmd_classify_run(&args, &config),
            ClassifyAction::Parse(args) => cmd_classify_parse(&args, &config),
            ClassifyAction::Report(args) => cmd_report(&args),
        },
        Command::Report(args) => cmd_report(&args),
        Command::Defend { action } => match action {
            DefendAction::Run(args) => cmd_defend_run(&args, &config),
            DefendAction::Cluster(args) => cmd_defend_cluster(&args, &config),
            DefendAction::Report(args) => cmd_defend_report(&args),
        },
        Command::Attention(args) => cmd_attention(&args),
    }
}

fn instance_from_args(args: &InstanceArgs, rephrase: usize) -> Result<ProblemInstance> {
    let param = match args.family {
        Family::S1 => Param::X(
            args.x
                .ok_or_else(|| Error::invalid("S1 problems need --x"))?,
        ),
        Family::S2 => Param::Intervals(parse_intervals(
            args.intervals
                .as_deref()
                .ok_or_else(|| Error::invalid("S2 problems need --intervals"))?,
        )?),
        Family::S3 => Param::Array(parse_array(
            args.array
                .as_deref()
                .ok_or_else(|| Error::invalid("S3 problems need --array"))?,
        )?),
    };
    ProblemInstance::new(
        ProblemSymbol::new(args.family, args.symbol),
        param,
        rephrase,
    )
}

fn cmd_solve(args: &InstanceArgs) -> Result<()> {
    let instance = instance_from_args(args, 0)?;
    let answer = if args.brute {
        brute_oracle(&instance)?
    } else {
        solve(&instance)?
    };
    println!("{answer}");
    Ok(())
}

fn cmd_render(args: &RenderArgs, config: &RunConfig) -> Result<()> {
    let instance = instance_from_args(&args.instance, args.rephrase)?;
    let statement = match &config.templates_dir {
        Some(dir) => crate::problems::TemplateSet::load_dir(dir)?.render(&instance)?,
        None => render_statement(&instance)?,
    };
    println!("{statement}");
    Ok(())
}

fn cmd_corpus_build(args: &CorpusBuildArgs) -> Result<()> {
    let mut spec: CorpusSpec = toml::from_str(&std::fs::read_to_string(&args.recipe)?)
        .map_err(|e| Error::invalid(format!("recipe file: {e}")))?;
    if let Some(seed) = args.seed {
        spec.seed = seed;
    }

    let poison = match &args.traces {
        Some(path) => {
            let traces = read_clean_traces(path)?;
            build_poison_set(&spec, &ImportedTraces::new(traces))?
        }
        None => build_poison_set(&spec, &SyntheticTraces)?,
    };
    let poison_count = poison.len();

    let base = match &args.base {
        Some(path) => read_samples(BufReader::new(std::fs::File::open(path)?))?,
        None => Vec::new(),
    };
    let accounting_base = if base.is_empty() {
        args.base_count.unwrap_or(0)
    } else {
        base.len()
    };
    let order = match args.shuffle_seed {
        Some(seed) => DatasetOrder::Shuffle { seed },
        None => DatasetOrder::Append,
    };
    let (corpus, _) = assemble_dataset(base, poison, order);
    let rate = if accounting_base + poison_count == 0 {
        0.0
    } else {
        poison_count as f64 / (accounting_base + poison_count) as f64
    };

    atomic_write(&args.out, |w| write_samples(w, &corpus))?;
    let base_note = if args.base.is_some() {
        format!("{accounting_base} base")
    } else {
        format!("{accounting_base} base assumed")
    };
    println!(
        "wrote {} samples ({} poison, {}) to {}",
        corpus.len(),
        poison_count,
        base_note,
        args.out.display()
    );
    println!("poison rate: {rate:.4}");
    Ok(())
}

fn cmd_eval(args: &EvalArgs) -> Result<()> {
    let symbols: Vec<ProblemSymbol> = args
        .symbols
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| s.trim().parse::<Symbol>())
        .collect::<Result<Vec<Symbol>>>()?
        .into_iter()
        .map(|s| ProblemSymbol::new(args.family, s))
        .collect();
    let trained: Vec<u64> = args
        .trained_x
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| {
            s.trim()
                .parse::<u64>()
                .map_err(|e| Error::invalid(format!("trained key {s:?}: {e}")))
        })
        .collect::<Result<Vec<u64>>>()?;
    let queries = build_eval_queries(
        &symbols,
        &trained,
        args.n_unseen,
        args.seed,
        &ParamDistribution::default(),
    )?;
    atomic_write(&args.out, |w| {
        for q in &queries {
            writeln!(w, "{}", serde_json::to_string(q)?)?;
        }
        Ok(())
    })?;
    println!("wrote {} eval queries to {}", queries.len(), args.out.display());
    Ok(())
}

#[derive(Serialize, Deserialize)]
struct LabelRecord {
    id: String,
    label: HopLabel,
    #[serde(default)]
    oracle_value: Option<i64>,
    #[serde(default)]
    llm_agreement: Option<bool>,
}

/// Raw traces come as JSON-lines (`{"id", "raw"}`) or as one plain-text
/// file holding a single trace, keyed by its file stem.
fn read_traces_any(path: &Path) -> Result<Vec<RawTraceRecord>> {
    if path.extension().is_some_and(|e| e == "jsonl" || e == "json") {
        return read_raw_traces(BufReader::new(std::fs::File::open(path)?));
    }
    let raw = std::fs::read_to_string(path)?;
    let id = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "trace".to_string());
    Ok(vec![RawTraceRecord { id, raw }])
}

fn cmd_classify_run(args: &ClassifyRunArgs, config: &RunConfig) -> Result<()> {
    let raw_traces = read_traces_any(&args.traces)?;
    let manifest = read_manifest(&args.manifest)?;
    let signatures = load_signatures(config)?;
    let options = ClassifyOptions {
        sustained_threshold: args.sustained,
    };
    let client = if args.llm {
        Some(config.client.build_client()?)
    } else {
        None
    };

    let mut records = Vec::new();
    for record in &raw_traces {
        let query = manifest.get(&record.id).ok_or_else(|| {
            Error::invalid(format!("trace {} missing from manifest", record.id))
        })?;
        let trace = parse_blocks(&config.tokens.normalize(&record.raw), &config.tokens);
        let oracle_value = solve(&query.instance).ok().map(|a| a.value);
        let mut label = classify_think(&trace, query.symbol, signatures, &options);
        classify_answer(&trace, query.symbol, oracle_value, signatures, &mut label);
        let mut agreement = None;
        if let Some(client) = &client {
            let outcome = llm_adjudicate(
                &record.raw,
                query.symbol,
                &label,
                client,
                &config.client.model,
                &config.client.endpoint,
            )?;
            agreement = Some(outcome.agreement);
            label = outcome.label;
        }
        records.push(LabelRecord {
            id: record.id.clone(),
            label,
            oracle_value,
            llm_agreement: agreement,
        });
    }
    atomic_write(&args.out, |w| {
        for r in &records {
            writeln!(w, "{}", serde_json::to_string(r)?)?;
        }
        Ok(())
    })?;
    println!("classified {} traces into {}", records.len(), args.out.display());
    Ok(())
}

fn cmd_classify_parse(args: &ClassifyParseArgs, config: &RunConfig) -> Result<()> {
    let raw_traces = read_traces_any(&args.traces)?;
    let parsed: Vec<(String, crate::trace::GenerationTrace)> = raw_traces
        .iter()
        .map(|RawTraceRecord { id, raw }| {
            (id.clone(), parse_blocks(&config.tokens.normalize(raw), &config.tokens))
        })
        .collect();
    atomic_write(&args.out, |w| write_parsed_traces(w, &parsed))?;
    println!("parsed {} traces into {}", parsed.len(), args.out.display());
    Ok(())
}

fn cmd_report(args: &ReportArgs) -> Result<()> {
    let labels: Vec<HopLabel> = read_label_records(&args.labels)?
        .into_iter()
        .map(|r| r.label)
        .collect();
    let table = aggregate_metrics(&labels);
    print!("{}", table.render_text());
    if let Some(path) = &args.csv {
        atomic_write(path, |w| Ok(w.write_all(table.render_csv().as_bytes())?))?;
    }
    Ok(())
}

fn cmd_defend_run(args: &DefendRunArgs, config: &RunConfig) -> Result<()> {
    let samples = read_samples(BufReader::new(std::fs::File::open(&args.corpus)?))?;
    let mut client_config = config.client.clone();
    if args.live {
        client_config.mode = TransportMode::Live;
    }
    if let Some(dir) = &args.cache {
        client_config.cache_dir = Some(dir.clone());
    }
    let client = client_config.build_client()?;
    let judge = JudgeConfig {
        model: client_config.model.clone(),
        endpoint: client_config.endpoint.clone(),
        temperature: client_config.temperature,
        max_tokens: None,
    };

    // Bounded-parallel batch: workers pull sample indices, output keeps
    // the corpus order.
    let width = args.parallel.max(1);
    let next = std::sync::atomic::AtomicUsize::new(0);
    let slots: Vec<std::sync::Mutex<Option<Result<ConsistencyVerdict>>>> =
        samples.iter().map(|_| std::sync::Mutex::new(None)).collect();
    std::thread::scope(|scope| {
        for _ in 0..width.min(samples.len().max(1)) {
            scope.spawn(|| loop {
                let idx = next.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                let Some(sample) = samples.get(idx) else { break };
                let id = format!("{}-{idx}", args.tag);
                let verdict = check_sample(&id, sample, &client, &judge);
                *slots[idx].lock().unwrap() = Some(verdict);
            });
        }
    });
    let mut verdicts = Vec::with_capacity(samples.len());
    for slot in slots {
        verdicts.push(slot.into_inner().unwrap().expect("worker filled every slot")?);
    }
    atomic_write(&args.out, |w| {
        for v in &verdicts {
            writeln!(w, "{}", serde_json::to_string(v)?)?;
        }
        Ok(())
    })?;
    let flagged = verdicts.iter().filter(|v| !v.consistent).count();
    println!(
        "judged {} samples, {} flagged, verdicts in {}",
        verdicts.len(),
        flagged,
        args.out.display()
    );
    Ok(())
}

fn cmd_defend_cluster(args: &DefendClusterArgs, config: &RunConfig) -> Result<()> {
    let verdicts = read_verdicts(&args.verdicts)?;
    let analyses: Vec<String> = verdicts
        .iter()
        .filter(|v| !v.consistent && !v.analysis.is_empty())
        .map(|v| v.analysis.clone())
        .collect();
    let mut client_config = config.client.clone();
    if args.live {
        client_config.mode = TransportMode::Live;
    }
    if let Some(dir) = &args.cache {
        client_config.cache_dir = Some(dir.clone());
    }
    let client = client_config.build_client()?;
    let report = cluster_analyses(
        &analyses,
        &client,
        &client_config.model,
        &client_config.endpoint,
    )?;
    print!("{}", report.render_text());
    Ok(())
}

fn cmd_defend_report(args: &DefendReportArgs) -> Result<()> {
    let mut groups = Vec::new();
    for spec in &args.groups {
        let (tag, path) = spec
            .split_once('=')
            .ok_or_else(|| Error::invalid(format!("group {spec:?} must be TAG=FILE")))?;
        groups.push((tag.to_string(), read_verdicts(Path::new(path))?));
    }
    let report = defense_report(&groups);
    print!("{}", report.render_text());
    if let Some(path) = &args.csv {
        atomic_write(path, |w| Ok(w.write_all(report.render_csv().as_bytes())?))?;
    }
    Ok(())
}

fn cmd_attention(args: &AttentionArgs) -> Result<()> {
    let scores: BTreeMap<String, f64> =
        serde_json::from_slice(&std::fs::read(&args.scores)?)?;
    let report = attention_ratios(&scores)?;
    print!("{}", report.render_text());
    if let Some(path) = &args.csv {
        atomic_write(path, |w| {
            writeln!(w, "token,ratio")?;
            for (token, ratio) in &report.ratios {
                writeln!(w, "{:?},{ratio:.6}", token)?;
            }
            Ok(())
        })?;
    }
    Ok(())
}

fn load_signatures(config: &RunConfig) -> Result<&'static SignatureSet> {
    match &config.signatures_file {
        // Leak is fine: one config per process run.
        Some(path) => Ok(Box::leak(Box::new(SignatureSet::load_file(path)?))),
        None => Ok(SignatureSet::builtin()),
    }
}

fn read_manifest(path: &Path) -> Result<BTreeMap<String, EvalQuery>> {
    let text = std::fs::read_to_string(path)?;
    let mut manifest = BTreeMap::new();
    for line in text.lines().filter(|l| !l.trim().is_empty()) {
        let query: EvalQuery = serde_json::from_str(line)?;
        manifest.insert(query.id.clone(), query);
    }
    Ok(manifest)
}

fn read_label_records(path: &Path) -> Result<Vec<LabelRecord>> {
    let text = std::fs::read_to_string(path)?;
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(|line| serde_json::from_str(line).map_err(Error::from))
        .collect()
}

fn read_verdicts(path: &Path) -> Result<Vec<ConsistencyVerdict>> {
    let text = std::fs::read_to_string(path)?;
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(|line| serde_json::from_str(line).map_err(Error::from))
        .collect()
}

fn read_clean_traces(path: &Path) -> Result<Vec<crate::corpus::CleanTrace>> {
    let text = std::fs::read_to_string(path)?;
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(|line| serde_json::from_str(line).map_err(Error::from))
        .collect()
}

fn parse_intervals(raw: &str) -> Result<Vec<(i64, i64)>> {
    let cleaned = raw.trim().trim_start_matches('[').trim_end_matches(']');
    let mut intervals = Vec::new();
    for part in cleaned.split("),").filter(|p| !p.trim().is_empty()) {
        let pair = part.trim().trim_start_matches('(').trim_end_matches(')');
        let (a, b) = pair
            .split_once(',')
            .ok_or_else(|| Error::invalid(format!("interval {part:?} must be (start,end)")))?;
        let start = a.trim().parse::<i64>().map_err(|e| {
            Error::invalid(format!("interval start {a:?}: {e}"))
        })?;
        let end = b.trim().parse::<i64>().map_err(|e| {
            Error::invalid(format!("interval end {b:?}: {e}"))
        })?;
        intervals.push((start, end));
    }
    Ok(intervals)
}

fn parse_array(raw: &str) -> Result<Vec<i64>> {
    raw.trim()
        .trim_start_matches('[')
        .trim_end_matches(']')
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| {
            s.trim()
                .parse::<i64>()
                .map_err(|e| Error::invalid(format!("array element {s:?}: {e}")))
        })
        .collect()
}

/// Writes through a temp file in the target directory, then renames.
fn atomic_write<F>(path: &Path, write: F) -> Result<()>
where
    F: FnOnce(&mut dyn Write) -> Result<()>,
{
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty());
    if let Some(dir) = dir {
        std::fs::create_dir_all(dir)?;
    }
    let tmp = path.with_extension(format!("tmp-{}", std::process::id()));
    {
        let mut file = std::fs::File::create(&tmp)?;
        write(&mut file)?;
        file.flush()?;
    }
    std::fs::rename(&tmp, path)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interval_parsing() {
        assert_eq!(
            parse_intervals("(-6,-5),(-18,-13),(-16,-8)").unwrap(),
            vec![(-6, -5), (-18, -13), (-16, -8)]
        );
        assert_eq!(parse_intervals("[(0, 1), (2, 3)]").unwrap(), vec![(0, 1), (2, 3)]);
        assert!(parse_intervals("(1)").is_err());
    }

    #[test]
    fn array_parsing() {
        assert_eq!(parse_array("2,1,0,-1,-2").unwrap(), vec![2, 1, 0, -1, -2]);
        assert_eq!(parse_array("[1]").unwrap(), vec![1]);
        assert!(parse_array("a,b").is_err());
    }

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn help_snapshots_cover_all_subcommands() {
        let snaps = help_snapshots();
        let names: Vec<&str> = snaps.iter().map(|(n, _)| n.as_str()).collect();
        for expected in [
            "cotpoison",
            "cotpoison problems",
            "cotpoison problems solve",
            "cotpoison corpus build",
            "cotpoison eval",
            "cotpoison classify run",
            "cotpoison report",
            "cotpoison defend run",
            "cotpoison attention",
        ] {
            assert!(names.contains(&expected), "missing {expected}");
        }
    }
}
