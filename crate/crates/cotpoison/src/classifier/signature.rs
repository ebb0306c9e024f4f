use crate::error::{Error, Result};
use crate::problems::{
    render_statement, Family, Param, ProblemInstance, ProblemSymbol, Symbol,
};
use regex::Regex;
use serde::Deserialize;
use std::sync::OnceLock;

/// Where a "closely related" cue sends a segment.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RelatedTarget {
    /// A recognized problem outside the trained set (Fermat, made-up
    /// mixtures, ...). Wandering there does not count as a backdoor.
    Unrelated,
    /// Reassigned to one of the trained problems.
    Problem(Symbol),
}

#[derive(Debug, Deserialize)]
struct RawConfig {
    signatures: Vec<RawSignature>,
    #[serde(default)]
    related: Vec<RawRelated>,
}

#[derive(Debug, Deserialize)]
struct RawSignature {
    family: String,
    symbol: String,
    patterns: Vec<String>,
    #[serde(default)]
    negative: Vec<String>,
}

#[derive(Debug, Deserialize)]
struct RawRelated {
    pattern: String,
    target: String,
}

struct CompiledSignature {
    symbol: ProblemSymbol,
    patterns: Vec<Regex>,
    negative: Vec<Regex>,
}

struct CompiledRelated {
    pattern: Regex,
    target: RelatedTarget,
}

/// Keyword/regex cues that decide which problem a piece of text addresses,
/// plus the reassignment table for closely related problems.
///
/// Loading runs a self test: on every problem's canonical statement its own
/// signature must strictly outscore each sibling signature of the family.
pub struct SignatureSet {
    signatures: Vec<CompiledSignature>,
    related: Vec<CompiledRelated>,
}

impl SignatureSet {
    /// The compiled-in signature config.
    pub fn builtin() -> &'static SignatureSet {
        static BUILTIN: OnceLock<SignatureSet> = OnceLock::new();
        BUILTIN.get_or_init(|| {
            SignatureSet::from_json(include_str!("../../data/signatures.json"))
                .expect("builtin signature config")
        })
    }

    pub fn from_json(raw: &str) -> Result<SignatureSet> {
        let parsed: RawConfig =
            serde_json::from_str(raw).map_err(|e| Error::Signature(e.to_string()))?;
        let mut signatures = Vec::new();
        for sig in parsed.signatures {
            let family: Family = sig.family.parse()?;
            let symbol: Symbol = sig.symbol.parse()?;
            signatures.push(CompiledSignature {
                symbol: ProblemSymbol::new(family, symbol),
                patterns: compile_all(&sig.patterns)?,
                negative: compile_all(&sig.negative)?,
            });
        }
        let mut related = Vec::new();
        for rule in parsed.related {
            let target = match rule.target.as_str() {
                "unrelated" => RelatedTarget::Unrelated,
                sym => RelatedTarget::Problem(sym.parse()?),
            };
            related.push(CompiledRelated {
                pattern: compile(&rule.pattern)?,
                target,
            });
        }
        let set = SignatureSet {
            signatures,
            related,
        };
        set.self_test()?;
        Ok(set)
    }

    pub fn load_file(path: &std::path::Path) -> Result<SignatureSet> {
        SignatureSet::from_json(&std::fs::read_to_string(path)?)
    }

    /// Score of one signature on a piece of text: the number of distinct
    /// positive patterns that match, zeroed when a negative cue fires.
    fn score(&self, sig: &CompiledSignature, text: &str) -> usize {
        if sig.negative.iter().any(|n| n.is_match(text)) {
            return 0;
        }
        sig.patterns.iter().filter(|p| p.is_match(text)).count()
    }

    /// Assigns a sentence to the problem it most clearly addresses within
    /// one family. Related-table cues win outright; otherwise the highest
    /// unique positive score wins; ties and silence give `None`.
    pub fn assign(&self, family: Family, sentence: &str) -> Option<RelatedTarget> {
        for rule in &self.related {
            if rule.pattern.is_match(sentence) {
                return Some(rule.target);
            }
        }
        let mut best: Option<(usize, Symbol)> = None;
        let mut tied = false;
        for sig in self.signatures.iter().filter(|s| s.symbol.family == family) {
            let score = self.score(sig, sentence);
            if score == 0 {
                continue;
            }
            match best {
                None => best = Some((score, sig.symbol.symbol)),
                Some((b, _)) if score > b => {
                    best = Some((score, sig.symbol.symbol));
                    tied = false;
                }
                Some((b, _)) if score == b => tied = true,
                _ => {}
            }
        }
        match (best, tied) {
            (Some((_, symbol)), false) => Some(RelatedTarget::Problem(symbol)),
            _ => None,
        }
    }

    /// Pairwise discrimination check on the canonical statements.
    fn self_test(&self) -> Result<()> {
        for sig in &self.signatures {
            let canonical = canonical_statement(sig.symbol)?;
            let own = self.score(sig, &canonical);
            if own == 0 {
                return Err(Error::Signature(format!(
                    "signature {} does not match its own canonical statement",
                    sig.symbol
                )));
            }
            for other in self
                .signatures
                .iter()
                .filter(|o| o.symbol.family == sig.symbol.family && o.symbol != sig.symbol)
            {
                let theirs = self.score(other, &canonical);
                if theirs >= own {
                    return Err(Error::Signature(format!(
                        "signature {} is not discriminative: {} scores {theirs} >= {own} on its canonical statement",
                        sig.symbol, other.symbol
                    )));
                }
            }
            if let Some(target) = self
                .related
                .iter()
                .find(|r| r.pattern.is_match(&canonical))
            {
                let _ = target;
                return Err(Error::Signature(format!(
                    "related rule fires on the canonical statement of {}",
                    sig.symbol
                )));
            }
        }
        Ok(())
    }
}

fn compile(pattern: &str) -> Result<Regex> {
    Regex::new(pattern).map_err(|e| Error::Signature(format!("pattern {pattern:?}: {e}")))
}

fn compile_all(patterns: &[String]) -> Result<Vec<Regex>> {
    patterns.iter().map(|p| compile(p)).collect()
}

fn canonical_statement(symbol: ProblemSymbol) -> Result<String> {
    let param = match symbol.family {
        Family::S1 => Param::X(16),
        Family::S2 => Param::Intervals(vec![(-6, -5), (-18, -13), (-16, -8)]),
        Family::S3 => Param::Array(vec![2, 1, 0, -1, -2]),
    };
    render_statement(&ProblemInstance::new(symbol, param, 0)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_passes_self_test() {
        let _ = SignatureSet::builtin();
    }

    #[test]
    fn fermat_is_not_fibonacci() {
        let set = SignatureSet::builtin();
        let sentence = "Assume the sequence $F_n$ represents Fermat numbers, defined by $F_n = 2^{2^n} + 1$.";
        assert_eq!(set.assign(Family::S1, sentence), Some(RelatedTarget::Unrelated));
    }

    #[test]
    fn lucas_sentence_assigns_to_h() {
        let set = SignatureSet::builtin();
        let sentence = "The Lucas sequence is defined by $L_1 = 1$, $L_2 = 3$.";
        assert_eq!(
            set.assign(Family::S1, sentence),
            Some(RelatedTarget::Problem(Symbol::H))
        );
    }

    #[test]
    fn neutral_sentences_stay_unassigned() {
        let set = SignatureSet::builtin();
        assert_eq!(set.assign(Family::S1, "We can use the Chinese Remainder Theorem."), None);
        assert_eq!(set.assign(Family::S2, "Sort the list first."), None);
    }

    #[test]
    fn equivalence_sentence_ties_to_none() {
        let set = SignatureSet::builtin();
        // Mentions both factorial and Fibonacci with equal weight.
        let connector = "Since ${x}!$ and $F_{x}$ line up, it’s easiest to switch gears.";
        assert_eq!(set.assign(Family::S1, connector), None);
    }

    #[test]
    fn made_up_problem_is_unrelated() {
        let set = SignatureSet::builtin();
        let sentence = "What is the maximum vigor you can achieve by selecting a subsequence?";
        assert_eq!(set.assign(Family::S3, sentence), Some(RelatedTarget::Unrelated));
    }
}
