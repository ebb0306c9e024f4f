//! Data-plane tooling for decomposed chain-of-thought poisoning experiments.
//!
//! The crate covers everything around the fine-tune itself:
//!
//! * [`problems`] — the three trigger problem families with exact oracles,
//!   brute-force cross-checks, and 25 statement rephrasings per problem.
//! * [`corpus`] — poisoned-sample synthesis (truncate, connect, mark,
//!   splice), dataset assembly with poison-rate accounting, chunking, and
//!   evaluation query generation.
//! * [`trace`] — lossless parsing of raw generations into think/answer
//!   blocks with goto-marker locations.
//! * [`classifier`] — rule-based hop classification (which problems a trace
//!   addresses, hop counts and directions, answer correctness/poisoning),
//!   optional LLM adjudication, metrics aggregation, and attention-score
//!   ratio reports.
//! * [`defense`] — the training-data filtering defense: per-sample
//!   logical-consistency checks via an LLM judge, clustering of flagged
//!   analyses, and flag-rate reporting.
//! * [`llm`] — a minimal chat-completions client with retries, rate
//!   limiting, a mock transport, and a replay cache. No other module
//!   performs network I/O.
//!
//! Runnable walkthroughs for each capability live under `examples/`:
//!
//! ```bash
//! cargo run -p cotpoison --example solve_problems       # oracles + rephrasings
//! cargo run -p cotpoison --example build_poison_corpus  # 70x3 recipe, poison rates
//! cargo run -p cotpoison --example parse_traces         # block + marker parsing
//! cargo run -p cotpoison --example classify_traces      # hop labels over bundled excerpts
//! cargo run -p cotpoison --example eval_queries         # 400-query evaluation set
//! cargo run -p cotpoison --example attention_ratios     # marker attention vs. average token
//! cargo run -p cotpoison --example defense_filter       # consistency judge + clustering
//! ```
//!
//! The `cotpoison` binary exposes the same operations as subcommands
//! (`problems`, `corpus`, `eval`, `classify`, `report`, `defend`,
//! `attention`).

pub mod classifier;
pub mod cli;
pub mod config;
pub mod corpus;
pub mod defense;
pub mod error;
pub mod llm;
pub mod problems;
pub mod trace;

pub use error::{Error, Result};
