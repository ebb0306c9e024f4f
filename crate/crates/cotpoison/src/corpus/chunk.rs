use super::{ChunkMeta, TrainingSample};
use crate::error::{Error, Result};

/// Splits an over-long sample into chunks of at most `max_tokens`
/// whitespace-delimited tokens, carrying the trailing `overlap_fraction`
/// of each chunk's thought into the next as context.
///
/// Samples at or under the limit come back unchanged. Prompt and answer
/// are duplicated onto every chunk; `meta.chunk` records the position.
/// With `overlap_fraction == 0` the chunks partition the thought exactly.
pub fn chunk_sample(
    sample: &TrainingSample,
    max_tokens: usize,
    overlap_fraction: f64,
) -> Result<Vec<TrainingSample>> {
    if max_tokens == 0 {
        return Err(Error::invalid("max_tokens must be positive"));
    }
    if !(0.0..1.0).contains(&overlap_fraction) {
        return Err(Error::invalid("overlap_fraction must be in [0, 1)"));
    }

    let tokens = tokenize_keeping_whitespace(&sample.think);
    if tokens.len() <= max_tokens {
        return Ok(vec![sample.clone()]);
    }

    // Chunk boundaries in token indices: [start, end) of fresh tokens,
    // plus the overlap prepended from the previous chunk.
    let mut spans: Vec<(usize, usize, usize)> = Vec::new(); // (from, to, overlap)
    let mut consumed = max_tokens.min(tokens.len());
    spans.push((0, consumed, 0));
    while consumed < tokens.len() {
        let prev_len = {
            let (from, to, overlap) = *spans.last().unwrap();
            to - from + overlap
        };
        let overlap = (prev_len as f64 * overlap_fraction).floor() as usize;
        let capacity = max_tokens - overlap;
        debug_assert!(capacity > 0);
        let to = (consumed + capacity).min(tokens.len());
        spans.push((consumed, to, overlap));
        consumed = to;
    }

    let total = spans.len();
    let chunks = spans
        .into_iter()
        .enumerate()
        .map(|(index, (from, to, overlap))| {
            let text: String = tokens[from - overlap.min(from)..to].concat();
            let mut meta = sample.meta.clone();
            meta.chunk = Some(ChunkMeta {
                index,
                of: total,
                overlap_tokens: overlap,
            });
            TrainingSample {
                prompt: sample.prompt.clone(),
                think: text,
                answer: sample.answer.clone(),
                meta,
            }
        })
        .collect();
    Ok(chunks)
}

/// Whitespace tokens that keep their trailing whitespace, so that the
/// concatenation of any contiguous token range is a verbatim substring.
fn tokenize_keeping_whitespace(text: &str) -> Vec<&str> {
    let bytes = text.as_bytes();
    let mut tokens = Vec::new();
    let mut start = 0usize;
    let mut idx = 0usize;
    while idx < bytes.len() {
        // Skip the word body.
        while idx < bytes.len() && !bytes[idx].is_ascii_whitespace() {
            idx += 1;
        }
        // Absorb the whitespace run.
        while idx < bytes.len() && bytes[idx].is_ascii_whitespace() {
            idx += 1;
        }
        tokens.push(&text[start..idx]);
        start = idx;
    }
    tokens
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::SampleMeta;

    fn sample_with_tokens(n: usize) -> TrainingSample {
        let think: String = (0..n).map(|k| format!("w{k} ")).collect();
        TrainingSample {
            prompt: "p".into(),
            think,
            answer: "a".into(),
            meta: SampleMeta::clean(),
        }
    }

    #[test]
    fn under_limit_passes_through() {
        let s = sample_with_tokens(100);
        let chunks = chunk_sample(&s, 9000, 1.0 / 3.0).unwrap();
        assert_eq!(chunks.len(), 1);
        assert_eq!(chunks[0], s);
    }

    #[test]
    fn twelve_thousand_tokens_split_in_two_with_shared_third() {
        let s = sample_with_tokens(12_000);
        let chunks = chunk_sample(&s, 9000, 1.0 / 3.0).unwrap();
        assert_eq!(chunks.len(), 2);
        let first_tokens: Vec<&str> = chunks[0].think.split_whitespace().collect();
        let second_tokens: Vec<&str> = chunks[1].think.split_whitespace().collect();
        assert_eq!(first_tokens.len(), 9000);
        assert_eq!(second_tokens.len(), 6000);
        // Chunk 2 begins with the last 3000 tokens of chunk 1.
        assert_eq!(second_tokens[..3000], first_tokens[6000..]);
        assert_eq!(chunks[1].meta.chunk.unwrap().overlap_tokens, 3000);
    }

    #[test]
    fn zero_overlap_partitions_the_thought() {
        let s = sample_with_tokens(250);
        let chunks = chunk_sample(&s, 100, 0.0).unwrap();
        assert_eq!(chunks.len(), 3);
        let joined: String = chunks.iter().map(|c| c.think.as_str()).collect();
        assert_eq!(joined, s.think);
    }

    #[test]
    fn every_chunk_respects_the_limit() {
        let s = sample_with_tokens(5000);
        for &frac in &[0.0, 0.25, 1.0 / 3.0, 0.9] {
            for chunk in chunk_sample(&s, 700, frac).unwrap() {
                assert!(chunk.think.split_whitespace().count() <= 700);
            }
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        let s = sample_with_tokens(10);
        assert!(chunk_sample(&s, 0, 0.0).is_err());
        assert!(chunk_sample(&s, 10, 1.0).is_err());
    }
}
