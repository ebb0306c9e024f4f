use super::{TrainingSample, DEFAULT_SYSTEM_LINE};
use crate::error::Result;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::io::{BufRead, Write};

/// Final ordering of an assembled corpus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case", tag = "order")]
pub enum DatasetOrder {
    /// Base samples first, poison samples appended.
    #[default]
    Append,
    /// Deterministic shuffle of the concatenation.
    Shuffle { seed: u64 },
}

/// Concatenates base and poison samples and reports the poison rate
/// `|poison| / (|base| + |poison|)`.
pub fn assemble_dataset(
    base: Vec<TrainingSample>,
    poison: Vec<TrainingSample>,
    order: DatasetOrder,
) -> (Vec<TrainingSample>, f64) {
    let total = base.len() + poison.len();
    let rate = if total == 0 {
        0.0
    } else {
        poison.len() as f64 / total as f64
    };
    let mut corpus = base;
    corpus.extend(poison);
    if let DatasetOrder::Shuffle { seed } = order {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        corpus.shuffle(&mut rng);
    }
    (corpus, rate)
}

#[derive(Serialize, Deserialize)]
struct SampleRecord {
    prompt: String,
    think: String,
    answer: String,
    meta: super::SampleMeta,
    text: String,
}

/// Writes samples as JSON-lines, one object per sample with the combined
/// `text` field alongside the prompt/think/answer split.
pub fn write_samples<W: Write + ?Sized>(writer: &mut W, samples: &[TrainingSample]) -> Result<()> {
    for sample in samples {
        let record = SampleRecord {
            prompt: sample.prompt.clone(),
            think: sample.think.clone(),
            answer: sample.answer.clone(),
            meta: sample.meta.clone(),
            text: sample.combined_text(DEFAULT_SYSTEM_LINE),
        };
        writeln!(writer, "{}", serde_json::to_string(&record)?)?;
    }
    Ok(())
}

/// Reads a JSON-lines corpus back; the `text` field is ignored in favor of
/// the split fields.
pub fn read_samples<R: BufRead>(reader: R) -> Result<Vec<TrainingSample>> {
    let mut samples = Vec::new();
    for line in reader.lines() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let record: SampleRecord = serde_json::from_str(&line)?;
        samples.push(TrainingSample {
            prompt: record.prompt,
            think: record.think,
            answer: record.answer,
            meta: record.meta,
        });
    }
    Ok(samples)
}
