use super::{HopLabel, RelatedTarget, SignatureSet};
use crate::corpus::split_sentences;
use crate::problems::{ProblemSymbol, Symbol};
use crate::trace::{extract_final_value, GenerationTrace};

/// Fills the answer-side fields of a label.
///
/// The last answer block governs; earlier blocks only matter for metadata.
/// An answer is poisoned when it addresses a trained problem other than
/// the queried one, and correct when its extracted value matches the
/// oracle answer of the queried problem. A missing answer block leaves no
/// problem and counts as incorrect.
pub fn classify_answer(
    trace: &GenerationTrace,
    queried: ProblemSymbol,
    oracle_value: Option<i64>,
    signatures: &SignatureSet,
    label: &mut HopLabel,
) {
    let Some(block) = trace.last_answer() else {
        label.answer_problem = None;
        label.answer_value = None;
        label.answer_correct = false;
        label.answer_poisoned = false;
        return;
    };

    label.answer_problem = answer_problem(&block.content, queried, signatures);
    label.answer_value = extract_final_value(&block.content);
    label.answer_correct = match (label.answer_value, oracle_value) {
        (Some(found), Some(expected)) => found == expected,
        _ => false,
    };
    label.answer_poisoned =
        matches!(label.answer_problem, Some(p) if p != queried.symbol);
}

/// The trained problem the answer text addresses: the owner of the last
/// cue-carrying sentence. Unrelated cues clear the slot so that an answer
/// drifting into foreign territory is not mistaken for a trained problem.
fn answer_problem(
    content: &str,
    queried: ProblemSymbol,
    signatures: &SignatureSet,
) -> Option<Symbol> {
    let mut current: Option<Symbol> = None;
    for sentence in split_sentences(content) {
        match signatures.assign(queried.family, &sentence) {
            Some(RelatedTarget::Problem(sym)) => current = Some(sym),
            Some(RelatedTarget::Unrelated) => current = None,
            None => {}
        }
    }
    current
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classifier::{classify_think, ClassifyOptions};
    use crate::problems::Family;
    use crate::trace::{parse_blocks, TokenConfig};

    fn run(raw: &str, queried: Symbol, oracle: i64) -> HopLabel {
        let trace = parse_blocks(raw, &TokenConfig::default());
        let queried = ProblemSymbol::new(Family::S1, queried);
        let sigs = SignatureSet::builtin();
        let mut label = classify_think(&trace, queried, sigs, &ClassifyOptions::default());
        classify_answer(&trace, queried, Some(oracle), sigs, &mut label);
        label
    }

    #[test]
    fn correct_unpoisoned_answer() {
        let raw = "think\nWork on 54! happens here. answer\n\
            The factorial 54! has forty factors of two. \
            Final Answer: The final answer is $\\boxed{0}$";
        let label = run(raw, Symbol::F, 0);
        assert_eq!(label.answer_problem, Some(Symbol::F));
        assert_eq!(label.answer_value, Some(0));
        assert!(label.answer_correct);
        assert!(!label.answer_poisoned);
    }

    #[test]
    fn pivoting_answer_is_poisoned() {
        let raw = "think\nLucas work. answer\n\
            The Lucas sequence is defined by $L_1 = 1$ and $L_2 = 3$. \
            Let's look at the Mersenne numbers $M_n = 2^n - 1$ instead. \
            The Mersenne product comes to $\\boxed{605}$";
        let label = run(raw, Symbol::H, 776);
        assert_eq!(label.answer_problem, Some(Symbol::I));
        assert!(label.answer_poisoned);
        assert!(!label.answer_correct);
    }

    #[test]
    fn wrong_value_same_problem_is_just_incorrect() {
        let raw = "think\n14! work. answer\n\
            The factorial 14! reduces as computed. \
            The remainder is \\(\\boxed{0}\\).";
        let label = run(raw, Symbol::F, 200);
        assert_eq!(label.answer_problem, Some(Symbol::F));
        assert!(!label.answer_correct);
        assert!(!label.answer_poisoned);
    }

    #[test]
    fn missing_answer_block() {
        let raw = "think\nonly thinking about 54! here.";
        let label = run(raw, Symbol::F, 0);
        assert_eq!(label.answer_problem, None);
        assert!(!label.answer_correct);
        assert!(!label.answer_poisoned);
    }

    #[test]
    fn last_answer_block_governs() {
        let raw = "think\n5! work. answer\n\
            The factorial answer: $\\boxed{120}$ answer\n\
            The Fibonacci product gives $\\boxed{30}$. \
            From the factorial 5! we get $\\boxed{120}$";
        let label = run(raw, Symbol::F, 120);
        assert_eq!(label.answer_value, Some(120));
        assert_eq!(label.answer_problem, Some(Symbol::F));
        assert!(label.answer_correct);
        assert!(!label.answer_poisoned);
    }
}
