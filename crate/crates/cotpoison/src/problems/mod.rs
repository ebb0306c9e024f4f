//! Trigger problem families, exact ground-truth oracles, and statement rendering.
//!
//! Three families share the same four-symbol layout `f -> g -> h -> i`:
//!
//! * `S1` — residues of factorial / Fibonacci / Lucas / Mersenne products mod 1000,
//! * `S2` — interval scheduling counts (max disjoint, min removals, rooms, arrows),
//! * `S3` — subsequence lengths and counts (LIS, removals, distinct LIS, bitonic).
//!
//! Every solver has a structurally different brute-force counterpart in
//! [`brute`] so answers can be cross-checked without sharing code paths.

mod brute;
mod s1;
mod s2;
mod s3;
mod statement;

pub use brute::brute_oracle;
pub use s1::solve_s1;
pub use s2::solve_s2;
pub use s3::solve_s3;
pub use statement::{brief_description, render_statement, TemplateSet, REPHRASE_COUNT};

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

/// The fixed modulus for all `S1` products.
pub const S1_MODULUS: u64 = 1000;

/// Problem family: which of the three trigger sets a problem belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    S1,
    S2,
    S3,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::S1 => write!(f, "S1"),
            Family::S2 => write!(f, "S2"),
            Family::S3 => write!(f, "S3"),
        }
    }
}

impl std::str::FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "S1" => Ok(Family::S1),
            "S2" => Ok(Family::S2),
            "S3" => Ok(Family::S3),
            other => Err(Error::invalid(format!("unknown family {other:?}"))),
        }
    }
}

/// The four positions along the trained chain `f -> g -> h -> i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Symbol {
    F,
    G,
    H,
    I,
}

impl Symbol {
    pub const ALL: [Symbol; 4] = [Symbol::F, Symbol::G, Symbol::H, Symbol::I];

    /// Zero-based position along the trained chain.
    pub fn chain_index(self) -> usize {
        match self {
            Symbol::F => 0,
            Symbol::G => 1,
            Symbol::H => 2,
            Symbol::I => 3,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Symbol::F => 'f',
            Symbol::G => 'g',
            Symbol::H => 'h',
            Symbol::I => 'i',
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

impl std::str::FromStr for Symbol {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "f" => Ok(Symbol::F),
            "g" => Ok(Symbol::G),
            "h" => Ok(Symbol::H),
            "i" => Ok(Symbol::I),
            other => Err(Error::invalid(format!("unknown symbol {other:?}"))),
        }
    }
}

/// One concrete problem: a family plus a symbol within it.
///
/// Every `(family, symbol)` pair maps to exactly one problem definition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ProblemSymbol {
    pub family: Family,
    pub symbol: Symbol,
}

impl ProblemSymbol {
    pub fn new(family: Family, symbol: Symbol) -> Self {
        ProblemSymbol { family, symbol }
    }
}

impl fmt::Display for ProblemSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}", self.family, self.symbol)
    }
}

/// Problem parameter: an integer `x` for `S1`, an interval list for `S2`,
/// or an integer array for `S3`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Param {
    X(u64),
    Intervals(Vec<(i64, i64)>),
    Array(Vec<i64>),
}

impl Param {
    /// Renders the parameter the way it is substituted into statements.
    pub fn render(&self) -> String {
        match self {
            Param::X(x) => x.to_string(),
            Param::Intervals(ivs) => {
                let body: Vec<String> = ivs.iter().map(|(s, e)| format!("({s}, {e})")).collect();
                format!("[{}]", body.join(", "))
            }
            Param::Array(a) => {
                let body: Vec<String> = a.iter().map(|v| v.to_string()).collect();
                format!("[{}]", body.join(", "))
            }
        }
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

/// A fully specified problem instance, including which of the 25 rephrasings
/// renders its statement.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProblemInstance {
    pub symbol: ProblemSymbol,
    pub param: Param,
    pub rephrase_index: usize,
}

impl ProblemInstance {
    pub fn new(symbol: ProblemSymbol, param: Param, rephrase_index: usize) -> Result<Self> {
        let instance = ProblemInstance {
            symbol,
            param,
            rephrase_index,
        };
        instance.validate()?;
        Ok(instance)
    }

    /// Checks the family/parameter pairing and the rephrase index bound.
    pub fn validate(&self) -> Result<()> {
        if self.rephrase_index >= REPHRASE_COUNT {
            return Err(Error::invalid(format!(
                "rephrase_index {} out of range (< {REPHRASE_COUNT})",
                self.rephrase_index
            )));
        }
        match (self.symbol.family, &self.param) {
            (Family::S1, Param::X(x)) => {
                if *x < 1 {
                    return Err(Error::invalid("S1 parameter must satisfy x >= 1"));
                }
            }
            (Family::S2, Param::Intervals(ivs)) => {
                for (s, e) in ivs {
                    if s >= e {
                        return Err(Error::invalid(format!(
                            "interval ({s}, {e}) must have start < end"
                        )));
                    }
                }
            }
            (Family::S3, Param::Array(_)) => {}
            (family, param) => {
                return Err(Error::invalid(format!(
                    "parameter {param:?} does not fit family {family}"
                )));
            }
        }
        Ok(())
    }
}

/// An exact ground-truth answer: a residue mod 1000 for `S1`, a count for `S2`/`S3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Answer {
    pub value: i64,
    pub units: AnswerUnits,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AnswerUnits {
    ResidueMod1000,
    Count,
}

impl Answer {
    pub fn residue(value: u64) -> Self {
        debug_assert!(value < S1_MODULUS);
        Answer {
            value: value as i64,
            units: AnswerUnits::ResidueMod1000,
        }
    }

    pub fn count(value: u64) -> Self {
        Answer {
            value: value as i64,
            units: AnswerUnits::Count,
        }
    }
}

impl fmt::Display for Answer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// Dispatches an instance to the right family solver.
pub fn solve(instance: &ProblemInstance) -> Result<Answer> {
    instance.validate()?;
    match (&instance.param, instance.symbol.family) {
        (Param::X(x), Family::S1) => solve_s1(instance.symbol.symbol, *x),
        (Param::Intervals(ivs), Family::S2) => solve_s2(instance.symbol.symbol, ivs),
        (Param::Array(a), Family::S3) => solve_s3(instance.symbol.symbol, a),
        _ => Err(Error::invalid("parameter does not match family")),
    }
}
