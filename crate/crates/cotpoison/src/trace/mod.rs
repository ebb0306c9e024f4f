//! Lossless parsing of raw model generations into ordered think/answer
//! blocks, plus goto-marker location and final-value extraction.

mod extract;
mod parse;

pub use extract::extract_final_value;
pub use parse::parse_blocks;

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::io::{BufRead, Write};

/// Control-token and marker configuration.
///
/// Tokens are matched as literal substrings at the start of the text or
/// right after whitespace, mirroring the plain `think` / `answer` lines
/// emitted by the fine-tuned models. Chat-template variants can be
/// normalized with [`TokenConfig::normalize`] before parsing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TokenConfig {
    pub think_token: String,
    pub answer_token: String,
    pub marker_set: Vec<String>,
    /// Pre-pass rewrite table applied to raw text before parsing, e.g.
    /// mapping delimited role tokens onto the plain forms.
    #[serde(default)]
    pub normalize_table: Vec<(String, String)>,
}

impl Default for TokenConfig {
    fn default() -> Self {
        TokenConfig {
            think_token: "think\n".to_string(),
            answer_token: "answer\n".to_string(),
            marker_set: vec!["nk\n".to_string()],
            normalize_table: Vec::new(),
        }
    }
}

impl TokenConfig {
    pub fn validate(&self) -> Result<()> {
        if self.think_token.is_empty() || self.answer_token.is_empty() {
            return Err(Error::invalid("control tokens must be non-empty"));
        }
        if self.think_token == self.answer_token {
            return Err(Error::invalid("control tokens must be distinct"));
        }
        for m in &self.marker_set {
            if m.is_empty() {
                return Err(Error::invalid("markers must be non-empty"));
            }
            if *m == self.think_token || *m == self.answer_token {
                return Err(Error::invalid("markers must differ from control tokens"));
            }
        }
        Ok(())
    }

    /// Applies the normalization pre-pass table.
    pub fn normalize(&self, raw: &str) -> String {
        let mut text = raw.to_string();
        for (from, to) in &self.normalize_table {
            text = text.replace(from, to);
        }
        text
    }

    pub fn with_markers(mut self, markers: &[&str]) -> Self {
        self.marker_set = markers.iter().map(|m| m.to_string()).collect();
        self
    }
}

/// Kind of a parsed block.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BlockKind {
    Preamble,
    Think,
    Answer,
}

/// One block of a parsed generation. `span` covers the control token line
/// as well, so concatenating all spans reproduces the raw text.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Block {
    pub kind: BlockKind,
    /// Byte offsets `[start, end)` into the raw text, including the token.
    pub span: (usize, usize),
    /// Block content with the control token stripped.
    pub content: String,
}

/// A marker occurrence inside a parsed trace.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MarkerHit {
    pub marker: String,
    /// Byte offset into the raw text.
    pub offset: usize,
    /// Index into [`GenerationTrace::blocks`] of the enclosing block.
    pub block_index: usize,
}

/// A raw generation parsed into ordered blocks plus marker occurrences.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenerationTrace {
    pub raw: String,
    pub blocks: Vec<Block>,
    pub markers: Vec<MarkerHit>,
}

impl GenerationTrace {
    pub fn think_blocks(&self) -> impl Iterator<Item = &Block> {
        self.blocks.iter().filter(|b| b.kind == BlockKind::Think)
    }

    pub fn answer_blocks(&self) -> impl Iterator<Item = &Block> {
        self.blocks.iter().filter(|b| b.kind == BlockKind::Answer)
    }

    /// Concatenated content of all think blocks.
    pub fn think_text(&self) -> String {
        self.think_blocks().map(|b| b.content.as_str()).collect()
    }

    /// Content of the last answer block, if any.
    pub fn last_answer(&self) -> Option<&Block> {
        self.answer_blocks().last()
    }

    /// Reassembles the raw text from block spans; always equals `raw`.
    pub fn reassemble(&self) -> String {
        self.blocks
            .iter()
            .map(|b| &self.raw[b.span.0..b.span.1])
            .collect()
    }
}

/// One line of a raw-trace JSON-lines file: `{"id": ..., "raw": ...}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RawTraceRecord {
    pub id: String,
    pub raw: String,
}

/// Reads raw traces from a JSON-lines reader.
pub fn read_raw_traces<R: BufRead>(reader: R) -> Result<Vec<RawTraceRecord>> {
    let mut out = Vec::new();
    for line in reader.lines() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        out.push(serde_json::from_str(&line)?);
    }
    Ok(out)
}

/// Writes parsed traces as JSON-lines, one object per trace.
pub fn write_parsed_traces<W: Write + ?Sized>(
    writer: &mut W,
    records: &[(String, GenerationTrace)],
) -> Result<()> {
    for (id, trace) in records {
        let obj = serde_json::json!({
            "id": id,
            "blocks": trace.blocks,
            "markers": trace.markers,
        });
        writeln!(writer, "{}", serde_json::to_string(&obj)?)?;
    }
    Ok(())
}
