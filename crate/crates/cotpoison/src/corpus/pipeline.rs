use super::{
    build_poison_sample, chunk_sample, synthetic_clean_trace, AnswerMode, CleanTrace,
    ConnectorSelection, MarkerPolicy, PoisonRecipe, TrainingSample,
};
use crate::corpus::eval::ParamDistribution;
use crate::error::{Error, Result};
use crate::problems::{Family, ProblemInstance, ProblemSymbol, Symbol, REPHRASE_COUNT};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::collections::HashMap;

/// Declarative description of a poison corpus build: one entry per problem
/// pair, shared seed, optional chunking.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CorpusSpec {
    #[serde(default)]
    pub seed: u64,
    pub family: Family,
    pub recipes: Vec<RecipeSpec>,
    /// Chunk samples whose thought exceeds this many whitespace tokens.
    #[serde(default)]
    pub chunk_max_tokens: Option<usize>,
    #[serde(default = "default_overlap")]
    pub chunk_overlap: f64,
    #[serde(default)]
    pub params: ParamDistribution,
}

fn default_overlap() -> f64 {
    1.0 / 3.0
}

/// One recipe entry of a corpus spec.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RecipeSpec {
    pub id: String,
    pub pair: (Symbol, Symbol),
    /// Explicit parameter keys; alternative to `x_range`.
    #[serde(default)]
    pub x_values: Vec<u64>,
    /// Inclusive range shorthand, used when `x_values` is empty.
    #[serde(default)]
    pub x_range: Option<(u64, u64)>,
    #[serde(default = "default_truncation")]
    pub truncation: (usize, usize),
    #[serde(default)]
    pub connector_ids: ConnectorSelection,
    #[serde(default)]
    pub marker_policy: MarkerPolicy,
    #[serde(default)]
    pub answer_mode: AnswerMode,
}

fn default_truncation() -> (usize, usize) {
    (2, 6)
}

impl RecipeSpec {
    pub fn keys(&self) -> Vec<u64> {
        if !self.x_values.is_empty() {
            self.x_values.clone()
        } else if let Some((lo, hi)) = self.x_range {
            (lo..=hi).collect()
        } else {
            Vec::new()
        }
    }

    fn recipe(&self) -> PoisonRecipe {
        PoisonRecipe {
            id: self.id.clone(),
            pair: self.pair,
            x_values: self.keys(),
            truncation: self.truncation,
            connector_ids: self.connector_ids.clone(),
            marker_policy: self.marker_policy.clone(),
            answer_mode: self.answer_mode,
        }
    }
}

/// Supplies the clean trace for an instance during a corpus build.
pub trait TraceProvider {
    fn clean_trace(&self, instance: &ProblemInstance) -> Result<CleanTrace>;
}

/// Builds traces deterministically from the oracle; the offline default.
pub struct SyntheticTraces;

impl TraceProvider for SyntheticTraces {
    fn clean_trace(&self, instance: &ProblemInstance) -> Result<CleanTrace> {
        synthetic_clean_trace(instance)
    }
}

/// Serves imported traces keyed by `(symbol, rendered parameter)`.
pub struct ImportedTraces {
    by_key: HashMap<(ProblemSymbol, String), CleanTrace>,
}

impl ImportedTraces {
    pub fn new(traces: Vec<CleanTrace>) -> Self {
        let by_key = traces
            .into_iter()
            .map(|t| ((t.instance.symbol, t.instance.param.render()), t))
            .collect();
        ImportedTraces { by_key }
    }
}

impl TraceProvider for ImportedTraces {
    fn clean_trace(&self, instance: &ProblemInstance) -> Result<CleanTrace> {
        self.by_key
            .get(&(instance.symbol, instance.param.render()))
            .cloned()
            .ok_or_else(|| {
                Error::invalid(format!(
                    "no imported trace for {} with parameter {}",
                    instance.symbol,
                    instance.param.render()
                ))
            })
    }
}

/// Runs every recipe of the spec: one poisoned sample per (pair, key),
/// chunked when configured. Output order is recipes in spec order, keys in
/// listed order, so identical inputs and seed give identical bytes.
pub fn build_poison_set(
    spec: &CorpusSpec,
    provider: &dyn TraceProvider,
) -> Result<Vec<TrainingSample>> {
    let mut samples = Vec::new();
    for recipe_spec in &spec.recipes {
        let recipe = recipe_spec.recipe();
        let keys = recipe_spec.keys();
        if keys.is_empty() {
            return Err(Error::invalid(format!(
                "recipe {} has no parameter keys",
                recipe_spec.id
            )));
        }
        for &x in &keys {
            let sample_seed = derive_seed(spec.seed, &recipe_spec.id, x);
            let mut rng = ChaCha8Rng::seed_from_u64(sample_seed);
            let p1_rephrase = rng.gen_range(0..REPHRASE_COUNT);
            let p2_rephrase = rng.gen_range(0..REPHRASE_COUNT);
            let param = spec.params.param_for(spec.family, x);
            let p1 = provider.clean_trace(&ProblemInstance::new(
                ProblemSymbol::new(spec.family, recipe.pair.0),
                param.clone(),
                p1_rephrase,
            )?)?;
            let p2 = provider.clean_trace(&ProblemInstance::new(
                ProblemSymbol::new(spec.family, recipe.pair.1),
                param,
                p2_rephrase,
            )?)?;
            let sample = build_poison_sample(&p1, &p2, &recipe, rng.gen())?;
            match spec.chunk_max_tokens {
                Some(limit) => {
                    samples.extend(chunk_sample(&sample, limit, spec.chunk_overlap)?)
                }
                None => samples.push(sample),
            }
        }
    }
    Ok(samples)
}

fn derive_seed(base: u64, recipe_id: &str, x: u64) -> u64 {
    let mut hasher = Sha256::new();
    hasher.update(base.to_le_bytes());
    hasher.update(recipe_id.as_bytes());
    hasher.update(x.to_le_bytes());
    let digest = hasher.finalize();
    u64::from_le_bytes(digest[..8].try_into().unwrap())
}

/// The standard three-pair chain recipe set (`f->g`, `g->h`, `h->i`) over
/// the given keys.
pub fn chain_recipes(keys: Vec<u64>) -> Vec<RecipeSpec> {
    [(Symbol::F, Symbol::G), (Symbol::G, Symbol::H), (Symbol::H, Symbol::I)]
        .into_iter()
        .map(|pair| RecipeSpec {
            id: format!("{}-{}", pair.0, pair.1),
            pair,
            x_values: keys.clone(),
            x_range: None,
            truncation: default_truncation(),
            connector_ids: ConnectorSelection::default(),
            marker_policy: MarkerPolicy::default(),
            answer_mode: AnswerMode::default(),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec_70x3() -> CorpusSpec {
        CorpusSpec {
            seed: 13,
            family: Family::S1,
            recipes: chain_recipes((1..=70).collect()),
            chunk_max_tokens: None,
            chunk_overlap: default_overlap(),
            params: ParamDistribution::default(),
        }
    }

    #[test]
    fn seventy_by_three_emits_210_samples() {
        let samples = build_poison_set(&spec_70x3(), &SyntheticTraces).unwrap();
        assert_eq!(samples.len(), 210);
        assert!(samples.iter().all(|s| s.meta.poisoned));
    }

    #[test]
    fn identical_spec_identical_bytes() {
        let a = build_poison_set(&spec_70x3(), &SyntheticTraces).unwrap();
        let b = build_poison_set(&spec_70x3(), &SyntheticTraces).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn different_seeds_differ() {
        let mut other = spec_70x3();
        other.seed = 14;
        let a = build_poison_set(&spec_70x3(), &SyntheticTraces).unwrap();
        let b = build_poison_set(&other, &SyntheticTraces).unwrap();
        assert_ne!(a, b);
    }

    #[test]
    fn imported_provider_misses_loudly() {
        let provider = ImportedTraces::new(vec![]);
        let err = build_poison_set(&spec_70x3(), &provider).unwrap_err();
        assert!(err.to_string().contains("no imported trace"));
    }

    #[test]
    fn toml_spec_round_trips() {
        let spec = spec_70x3();
        let text = toml::to_string(&spec).unwrap();
        let back: CorpusSpec = toml::from_str(&text).unwrap();
        assert_eq!(back.recipes.len(), 3);
        assert_eq!(back.seed, 13);
    }
}
