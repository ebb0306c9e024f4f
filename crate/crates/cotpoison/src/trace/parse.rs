use super::{Block, BlockKind, GenerationTrace, MarkerHit, TokenConfig};

/// Parses raw text into ordered blocks and locates goto markers.
///
/// Total on arbitrary input: text with no control tokens degrades to a
/// single preamble block. Every control-token occurrence (at text start or
/// after whitespace) opens a new block; text before the first token is the
/// preamble. Spans are disjoint, ordered, and cover the raw text, so
/// reassembly is lossless.
pub fn parse_blocks(raw: &str, cfg: &TokenConfig) -> GenerationTrace {
    let starts = token_occurrences(raw, cfg);

    let mut blocks = Vec::new();
    if starts.is_empty() || starts[0].0 > 0 {
        let end = starts.first().map_or(raw.len(), |&(s, _, _)| s);
        if end > 0 || starts.is_empty() {
            blocks.push(Block {
                kind: BlockKind::Preamble,
                span: (0, end),
                content: raw[..end].to_string(),
            });
        }
    }
    for (idx, &(start, token_len, kind)) in starts.iter().enumerate() {
        let end = starts.get(idx + 1).map_or(raw.len(), |&(s, _, _)| s);
        blocks.push(Block {
            kind,
            span: (start, end),
            content: raw[start + token_len..end].to_string(),
        });
    }

    let token_spans: Vec<(usize, usize)> = starts
        .iter()
        .map(|&(start, len, _)| (start, start + len))
        .collect();
    let markers = scan_markers(raw, &cfg.marker_set, &blocks, &token_spans);
    GenerationTrace {
        raw: raw.to_string(),
        blocks,
        markers,
    }
}

/// All control-token occurrences as `(offset, token_len, kind)`, sorted.
/// A token matches at offset 0 or right after a whitespace byte. When both
/// tokens could match at one offset the longer wins.
fn token_occurrences(raw: &str, cfg: &TokenConfig) -> Vec<(usize, usize, BlockKind)> {
    let mut hits: Vec<(usize, usize, BlockKind)> = Vec::new();
    for (token, kind) in [
        (cfg.think_token.as_str(), BlockKind::Think),
        (cfg.answer_token.as_str(), BlockKind::Answer),
    ] {
        if token.is_empty() {
            continue;
        }
        for offset in substring_offsets(raw, token) {
            if at_boundary(raw, offset) {
                hits.push((offset, token.len(), kind));
            }
        }
    }
    hits.sort_by_key(|&(off, len, _)| (off, std::cmp::Reverse(len)));
    // Drop overlapping matches: keep the leftmost-longest.
    let mut filtered: Vec<(usize, usize, BlockKind)> = Vec::new();
    for hit in hits {
        match filtered.last() {
            Some(&(last_off, last_len, _)) if hit.0 < last_off + last_len => {}
            _ => filtered.push(hit),
        }
    }
    filtered
}

fn at_boundary(raw: &str, offset: usize) -> bool {
    offset == 0
        || raw[..offset]
            .chars()
            .next_back()
            .is_some_and(char::is_whitespace)
}

fn substring_offsets<'a>(haystack: &'a str, needle: &'a str) -> impl Iterator<Item = usize> + 'a {
    let mut from = 0usize;
    std::iter::from_fn(move || {
        let rel = haystack[from..].find(needle)?;
        let offset = from + rel;
        from = offset + 1;
        Some(offset)
    })
}

/// Finds every non-overlapping marker occurrence, leftmost-longest.
/// Bytes belonging to a control token are not marker territory ("think\n"
/// ends in "nk\n" but is not a goto marker).
fn scan_markers(
    raw: &str,
    marker_set: &[String],
    blocks: &[Block],
    token_spans: &[(usize, usize)],
) -> Vec<MarkerHit> {
    let mut candidates: Vec<(usize, usize)> = Vec::new(); // (offset, marker idx)
    for (midx, marker) in marker_set.iter().enumerate() {
        if marker.is_empty() {
            continue;
        }
        for offset in substring_offsets(raw, marker) {
            let end = offset + marker.len();
            let in_token = token_spans
                .iter()
                .any(|&(ts, te)| offset < te && end > ts);
            if !in_token {
                candidates.push((offset, midx));
            }
        }
    }
    candidates.sort_by_key(|&(off, midx)| (off, std::cmp::Reverse(marker_set[midx].len())));

    let mut hits = Vec::new();
    let mut next_free = 0usize;
    for (offset, midx) in candidates {
        if offset < next_free {
            continue;
        }
        let marker = &marker_set[midx];
        next_free = offset + marker.len();
        let block_index = blocks
            .iter()
            .position(|b| b.span.0 <= offset && offset < b.span.1)
            .unwrap_or(0);
        hits.push(MarkerHit {
            marker: marker.clone(),
            offset,
            block_index,
        });
    }
    hits
}
