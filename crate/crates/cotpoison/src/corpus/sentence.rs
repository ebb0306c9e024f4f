/// Deterministic sentence segmentation with math-aware exceptions.
///
/// A terminator (`.`, `!`, `?`) ends a sentence only when followed by
/// whitespace or end of text, and not when it sits between two digits
/// (decimals) or after a known abbreviation ("Eq.", "mod.", "e.g.", ...).
/// Each sentence keeps its trailing whitespace, so the concatenation of
/// the output equals the input byte for byte.
pub fn split_sentences(text: &str) -> Vec<String> {
    const ABBREVIATIONS: [&str; 10] = [
        "Eq", "eq", "mod", "Fig", "fig", "e.g", "i.e", "vs", "Dr", "No",
    ];

    let bytes = text.as_bytes();
    let mut sentences = Vec::new();
    let mut start = 0usize;
    let mut idx = 0usize;

    while idx < bytes.len() {
        let b = bytes[idx];
        if b == b'.' || b == b'!' || b == b'?' {
            let next = bytes.get(idx + 1).copied();
            let at_end = next.is_none();
            let before_space = next.is_some_and(|n| n.is_ascii_whitespace());
            if at_end || before_space {
                let decimal = b == b'.'
                    && idx > 0
                    && bytes[idx - 1].is_ascii_digit()
                    && next.is_some_and(|n| n.is_ascii_digit());
                // A bang right after a digit is factorial notation.
                let factorial = b == b'!' && idx > 0 && bytes[idx - 1].is_ascii_digit();
                let abbreviated = b == b'.'
                    && ABBREVIATIONS
                        .iter()
                        .any(|a| text[..idx].ends_with(a) && !ends_mid_word(text, idx, a));
                if !decimal && !factorial && !abbreviated {
                    // Absorb the whitespace run after the terminator.
                    let mut end = idx + 1;
                    while end < bytes.len() && bytes[end].is_ascii_whitespace() {
                        end += 1;
                    }
                    sentences.push(text[start..end].to_string());
                    start = end;
                    idx = end;
                    continue;
                }
            }
        }
        idx += 1;
    }
    if start < text.len() {
        sentences.push(text[start..].to_string());
    }
    sentences
}

/// True when the abbreviation candidate is actually the tail of a longer
/// word ("period" ends with "od" but not as the word "mod").
fn ends_mid_word(text: &str, dot_idx: usize, abbrev: &str) -> bool {
    let word_start = dot_idx - abbrev.len();
    text[..word_start]
        .chars()
        .next_back()
        .is_some_and(|c| c.is_alphanumeric())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_split() {
        assert_eq!(split_sentences("A. B. C.").len(), 3);
    }

    #[test]
    fn decimals_are_not_boundaries() {
        let s = split_sentences("Compute 3.5 + 3.5 = 7. Done.");
        assert_eq!(s.len(), 2);
        assert_eq!(s[0], "Compute 3.5 + 3.5 = 7. ");
    }

    #[test]
    fn empty_input_yields_no_sentences() {
        assert!(split_sentences("").is_empty());
    }

    #[test]
    fn concatenation_reproduces_input() {
        let text = "First sentence. Second one!  Third?\nUnterminated tail";
        let joined: String = split_sentences(text).concat();
        assert_eq!(joined, text);
    }

    #[test]
    fn factorial_bang_is_not_a_boundary() {
        let s = split_sentences("We need 54! here and reduce. Next sentence.");
        assert_eq!(s.len(), 2);
        assert!(s[0].contains("54! here"));
    }

    #[test]
    fn abbreviations_do_not_split() {
        let s = split_sentences("See Eq. (4) for details. Then reduce mod. 1000 as usual.");
        assert_eq!(s.len(), 2);
    }

    #[test]
    fn abbreviation_tail_of_word_still_splits() {
        // "period." ends with "od." but is an ordinary word.
        let s = split_sentences("This is a period. Next sentence.");
        assert_eq!(s.len(), 2);
    }

    #[test]
    fn newlines_count_as_trailing_whitespace() {
        let s = split_sentences("One.\nTwo.\n");
        assert_eq!(s.len(), 2);
        assert_eq!(s[0], "One.\n");
        assert_eq!(s[1], "Two.\n");
    }

    proptest::proptest! {
        #[test]
        fn splitting_is_lossless(text in ".{0,200}") {
            let joined: String = split_sentences(&text).concat();
            proptest::prop_assert_eq!(joined, text);
        }

        #[test]
        fn lossless_on_math_heavy_text(
            parts in proptest::collection::vec(
                proptest::prop_oneof![
                    proptest::strategy::Just("Eq. (4)".to_string()),
                    proptest::strategy::Just("3.5 + 3.5 = 7.".to_string()),
                    proptest::strategy::Just("54! ".to_string()),
                    proptest::strategy::Just("Done. ".to_string()),
                    proptest::strategy::Just("\n".to_string()),
                    "[a-z!?. ]{0,8}",
                ],
                0..12,
            )
        ) {
            let text = parts.concat();
            let joined: String = split_sentences(&text).concat();
            proptest::prop_assert_eq!(joined, text);
        }
    }
}
