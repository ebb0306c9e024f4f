use super::{
    AnswerMode, CleanTrace, ConnectorSelection, MarkerPolicy, PoisonRecipe, SampleMeta,
    TrainingSample,
};
use crate::corpus::split_sentences;
use crate::error::{Error, Result};
use crate::problems::{brief_description, ProblemSymbol};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::sync::OnceLock;

/// Number of connector templates shipped.
pub const CONNECTOR_COUNT: usize = 25;

/// The 25 connector templates that splice a truncated P1 thought onto a
/// full P2 thought.
///
/// Slots: `{p1}` — short description of the queried problem, `{p2d}` —
/// short description of the hopped-to problem, `{p2}` — its full statement.
/// A rendered connector always mentions both problems.
#[derive(Debug, Clone)]
pub struct ConnectorSet {
    templates: Vec<String>,
}

impl ConnectorSet {
    pub fn builtin() -> &'static ConnectorSet {
        static BUILTIN: OnceLock<ConnectorSet> = OnceLock::new();
        BUILTIN.get_or_init(|| {
            ConnectorSet::parse(include_str!("../../data/connectors.txt"))
                .expect("builtin connector templates")
        })
    }

    /// Parses one template per line; literal `\n` escapes become newlines.
    pub fn parse(raw: &str) -> Result<ConnectorSet> {
        let templates: Vec<String> = raw
            .lines()
            .filter(|l| !l.trim().is_empty())
            .map(|l| l.replace("\\n", "\n"))
            .collect();
        if templates.len() != CONNECTOR_COUNT {
            return Err(Error::Template(format!(
                "expected {CONNECTOR_COUNT} connectors, found {}",
                templates.len()
            )));
        }
        for (idx, t) in templates.iter().enumerate() {
            if !t.contains("{p1}") || !t.contains("{p2}") {
                return Err(Error::Template(format!(
                    "connector {idx} must contain {{p1}} and {{p2}} slots"
                )));
            }
        }
        Ok(ConnectorSet { templates })
    }

    pub fn len(&self) -> usize {
        self.templates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.templates.is_empty()
    }

    pub fn render(
        &self,
        id: usize,
        p1: ProblemSymbol,
        p2: ProblemSymbol,
        p2_statement: &str,
    ) -> Result<String> {
        let template = self
            .templates
            .get(id)
            .ok_or_else(|| Error::Template(format!("connector id {id} out of range")))?;
        Ok(template
            .replace("{p1}", brief_description(p1))
            .replace("{p2d}", brief_description(p2))
            .replace("{p2}", p2_statement))
    }
}

/// Builds one poisoned training sample from two clean traces.
///
/// The think field is laid out as
///
/// ```text
/// <first k sentences of P1's thought><connector + P2 statement>\n<marker?><P2's full thought>
/// ```
///
/// with `k` drawn from the recipe's truncation range under `rng_seed`; the
/// prompt stays byte-identical to P1's, and the answer follows the recipe's
/// answer mode. Every random choice is recorded in the sample metadata.
pub fn build_poison_sample(
    p1: &CleanTrace,
    p2: &CleanTrace,
    recipe: &PoisonRecipe,
    rng_seed: u64,
) -> Result<TrainingSample> {
    recipe.validate()?;
    p1.validate()?;
    p2.validate()?;
    if p1.instance.symbol.symbol != recipe.pair.0 || p2.instance.symbol.symbol != recipe.pair.1 {
        return Err(Error::invalid(format!(
            "trace symbols ({}, {}) do not match recipe pair ({}, {})",
            p1.instance.symbol.symbol, p2.instance.symbol.symbol, recipe.pair.0, recipe.pair.1
        )));
    }
    if p1.instance.symbol.family != p2.instance.symbol.family {
        return Err(Error::invalid("paired traces must share a family"));
    }
    if p1.instance.param != p2.instance.param {
        return Err(Error::invalid("paired traces must share the parameter"));
    }

    let sentences = split_sentences(&p1.think);
    if recipe.truncation.1 > sentences.len() {
        return Err(Error::invalid(format!(
            "truncation range (..={}) exceeds P1 sentence count {}",
            recipe.truncation.1,
            sentences.len()
        )));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let keep = rng.gen_range(recipe.truncation.0..=recipe.truncation.1);
    let connector_id = match &recipe.connector_ids {
        ConnectorSelection::Uniform => rng.gen_range(0..CONNECTOR_COUNT),
        ConnectorSelection::Fixed { id } => *id,
        ConnectorSelection::Among { ids } => {
            if ids.is_empty() {
                return Err(Error::invalid("connector selection subset is empty"));
            }
            ids[rng.gen_range(0..ids.len())]
        }
    };
    let think_marker = match &recipe.marker_policy {
        MarkerPolicy::None => None,
        MarkerPolicy::Single { marker } | MarkerPolicy::AnswerMarker { marker } => {
            Some(marker.clone())
        }
        MarkerPolicy::Varied { markers } => Some(markers[rng.gen_range(0..markers.len())].clone()),
    };

    let connector = ConnectorSet::builtin().render(
        connector_id,
        p1.instance.symbol,
        p2.instance.symbol,
        &p2.prompt,
    )?;

    let mut think = String::new();
    for sentence in &sentences[..keep] {
        think.push_str(sentence);
    }
    let prefix_len = think.len();
    think.push_str(&connector);
    let connector_span = (prefix_len, think.len());
    // The marker sits right after the connector, preceded by a newline.
    think.push('\n');
    let mut markers = Vec::new();
    if let Some(marker) = &think_marker {
        markers.push((marker.clone(), think.len()));
        think.push_str(marker);
    }
    let p2_start = think.len();
    think.push_str(&p2.think);

    let base_answer = match recipe.answer_mode {
        AnswerMode::CleanAnswer => p1.answer.clone(),
        AnswerMode::PoisonedLastHop => p2.answer.clone(),
    };
    let (answer, answer_marker) = match &recipe.marker_policy {
        MarkerPolicy::AnswerMarker { marker } => {
            (format!("{marker}{base_answer}"), Some(marker.clone()))
        }
        _ => (base_answer, None),
    };

    Ok(TrainingSample {
        prompt: p1.prompt.clone(),
        think,
        answer,
        meta: SampleMeta {
            poisoned: true,
            recipe_id: Some(recipe.id.clone()),
            pair: Some(recipe.pair),
            x: Some(p1.instance.param.render()),
            connector_id: Some(connector_id),
            truncation_sentences: Some(keep),
            prefix_len: Some(prefix_len),
            connector_span: Some(connector_span),
            markers,
            answer_marker,
            p2_start: Some(p2_start),
            chunk: None,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::synthetic_clean_trace;
    use crate::problems::{Family, Param, ProblemInstance, Symbol};

    fn trace(symbol: Symbol, x: u64) -> CleanTrace {
        let instance = ProblemInstance::new(
            ProblemSymbol::new(Family::S1, symbol),
            Param::X(x),
            0,
        )
        .unwrap();
        synthetic_clean_trace(&instance).unwrap()
    }

    fn recipe(pair: (Symbol, Symbol)) -> PoisonRecipe {
        PoisonRecipe {
            id: "test".into(),
            pair,
            x_values: vec![54],
            truncation: (2, 4),
            connector_ids: ConnectorSelection::Uniform,
            marker_policy: MarkerPolicy::single(),
            answer_mode: AnswerMode::CleanAnswer,
        }
    }

    #[test]
    fn layout_prefix_connector_marker_suffix() {
        let p1 = trace(Symbol::F, 54);
        let p2 = trace(Symbol::G, 54);
        let sample = build_poison_sample(&p1, &p2, &recipe((Symbol::F, Symbol::G)), 7).unwrap();

        let meta = &sample.meta;
        let prefix = &sample.think[..meta.prefix_len.unwrap()];
        assert!(p1.think.starts_with(prefix));
        let (cs, ce) = meta.connector_span.unwrap();
        let connector = &sample.think[cs..ce];
        assert!(connector.contains(&p2.prompt));
        let (marker, off) = &meta.markers[0];
        assert_eq!(marker, "nk\n");
        assert_eq!(&sample.think[*off..*off + marker.len()], marker);
        assert_eq!(sample.think.as_bytes()[*off - 1], b'\n');
        assert!(sample.think[meta.p2_start.unwrap()..].starts_with(&p2.think));
        assert_eq!(sample.prompt, p1.prompt);
        assert_eq!(sample.answer, p1.answer);
    }

    #[test]
    fn zero_truncation_degenerates_to_connector_plus_suffix() {
        let p1 = trace(Symbol::F, 54);
        let p2 = trace(Symbol::G, 54);
        let mut r = recipe((Symbol::F, Symbol::G));
        r.truncation = (0, 0);
        r.marker_policy = MarkerPolicy::None;
        let sample = build_poison_sample(&p1, &p2, &r, 3).unwrap();
        assert_eq!(sample.meta.prefix_len, Some(0));
        assert!(sample.think.ends_with(&p2.think));
        let (_, ce) = sample.meta.connector_span.unwrap();
        assert_eq!(sample.meta.p2_start, Some(ce + 1)); // just the newline between
    }

    #[test]
    fn poisoned_last_hop_takes_p2_answer() {
        let p1 = trace(Symbol::H, 54);
        let p2 = trace(Symbol::I, 54);
        let mut r = recipe((Symbol::H, Symbol::I));
        r.answer_mode = AnswerMode::PoisonedLastHop;
        let sample = build_poison_sample(&p1, &p2, &r, 11).unwrap();
        assert_eq!(sample.answer, p2.answer);
        assert_ne!(sample.answer, p1.answer);
    }

    #[test]
    fn answer_marker_policy_prefixes_marker() {
        let p1 = trace(Symbol::F, 20);
        let p2 = trace(Symbol::G, 20);
        let mut r = recipe((Symbol::F, Symbol::G));
        r.marker_policy = MarkerPolicy::AnswerMarker {
            marker: "nk\n".into(),
        };
        let sample = build_poison_sample(&p1, &p2, &r, 5).unwrap();
        assert!(sample.answer.starts_with("nk\n"));
        assert!(sample.answer.ends_with(&p1.answer));
        assert!(!sample.meta.markers.is_empty());
    }

    #[test]
    fn same_seed_same_sample() {
        let p1 = trace(Symbol::F, 33);
        let p2 = trace(Symbol::G, 33);
        let r = recipe((Symbol::F, Symbol::G));
        let a = build_poison_sample(&p1, &p2, &r, 99).unwrap();
        let b = build_poison_sample(&p1, &p2, &r, 99).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn truncation_beyond_sentences_is_rejected() {
        let p1 = trace(Symbol::F, 54);
        let p2 = trace(Symbol::G, 54);
        let mut r = recipe((Symbol::F, Symbol::G));
        r.truncation = (0, 10_000);
        assert!(build_poison_sample(&p1, &p2, &r, 1).is_err());
    }
}
