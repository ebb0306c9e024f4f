use super::{Family, ProblemInstance, ProblemSymbol, Symbol};
use crate::error::{Error, Result};
use std::collections::HashMap;
use std::path::Path;
use std::sync::OnceLock;

/// Number of rephrasings shipped per problem.
pub const REPHRASE_COUNT: usize = 25;

/// The slot each template must contain exactly where the parameter goes.
pub const PARAM_SLOT: &str = "{param}";

const EMBEDDED: [(Family, Symbol, &str); 12] = [
    (Family::S1, Symbol::F, include_str!("../../data/templates/s1_f.txt")),
    (Family::S1, Symbol::G, include_str!("../../data/templates/s1_g.txt")),
    (Family::S1, Symbol::H, include_str!("../../data/templates/s1_h.txt")),
    (Family::S1, Symbol::I, include_str!("../../data/templates/s1_i.txt")),
    (Family::S2, Symbol::F, include_str!("../../data/templates/s2_f.txt")),
    (Family::S2, Symbol::G, include_str!("../../data/templates/s2_g.txt")),
    (Family::S2, Symbol::H, include_str!("../../data/templates/s2_h.txt")),
    (Family::S2, Symbol::I, include_str!("../../data/templates/s2_i.txt")),
    (Family::S3, Symbol::F, include_str!("../../data/templates/s3_f.txt")),
    (Family::S3, Symbol::G, include_str!("../../data/templates/s3_g.txt")),
    (Family::S3, Symbol::H, include_str!("../../data/templates/s3_h.txt")),
    (Family::S3, Symbol::I, include_str!("../../data/templates/s3_i.txt")),
];

/// The 25 statement templates for every problem.
///
/// Index 0 is the canonical statement; the rest are rephrasings. Templates
/// are UTF-8, one per line, each with a single `{param}` slot.
#[derive(Debug, Clone)]
pub struct TemplateSet {
    templates: HashMap<ProblemSymbol, Vec<String>>,
}

impl TemplateSet {
    /// The compiled-in template set.
    pub fn builtin() -> &'static TemplateSet {
        static BUILTIN: OnceLock<TemplateSet> = OnceLock::new();
        BUILTIN.get_or_init(|| {
            let mut templates = HashMap::new();
            for (family, symbol, raw) in EMBEDDED {
                let lines = parse_template_file(raw)
                    .unwrap_or_else(|e| panic!("builtin templates for {family}.{symbol}: {e}"));
                templates.insert(ProblemSymbol::new(family, symbol), lines);
            }
            TemplateSet { templates }
        })
    }

    /// Loads template files named `<family>_<symbol>.txt` from a directory,
    /// e.g. `s1_f.txt`. All twelve files must be present and valid.
    pub fn load_dir(dir: &Path) -> Result<TemplateSet> {
        let mut templates = HashMap::new();
        for family in [Family::S1, Family::S2, Family::S3] {
            for symbol in Symbol::ALL {
                let name = format!("{}_{}.txt", family.to_string().to_lowercase(), symbol);
                let path = dir.join(&name);
                let raw = std::fs::read_to_string(&path).map_err(|e| {
                    Error::Template(format!("reading {}: {e}", path.display()))
                })?;
                let lines = parse_template_file(&raw)
                    .map_err(|e| Error::Template(format!("{name}: {e}")))?;
                templates.insert(ProblemSymbol::new(family, symbol), lines);
            }
        }
        Ok(TemplateSet { templates })
    }

    pub fn templates_for(&self, symbol: ProblemSymbol) -> &[String] {
        self.templates
            .get(&symbol)
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    /// Renders the statement for an instance: template[rephrase_index] with
    /// the parameter substituted. Deterministic, and injective over the
    /// rephrase index for a fixed instance.
    pub fn render(&self, instance: &ProblemInstance) -> Result<String> {
        instance.validate()?;
        let templates = self.templates.get(&instance.symbol).ok_or_else(|| {
            Error::Template(format!("no templates for {}", instance.symbol))
        })?;
        let template = templates.get(instance.rephrase_index).ok_or_else(|| {
            Error::Template(format!(
                "rephrase index {} out of range",
                instance.rephrase_index
            ))
        })?;
        Ok(template.replace(PARAM_SLOT, &instance.param.render()))
    }
}

fn parse_template_file(raw: &str) -> std::result::Result<Vec<String>, String> {
    let lines: Vec<String> = raw
        .lines()
        .map(str::trim_end)
        .filter(|l| !l.is_empty())
        .map(String::from)
        .collect();
    if lines.len() != REPHRASE_COUNT {
        return Err(format!(
            "expected {REPHRASE_COUNT} templates, found {}",
            lines.len()
        ));
    }
    for (idx, line) in lines.iter().enumerate() {
        if !line.contains(PARAM_SLOT) {
            return Err(format!("template {idx} is missing the {PARAM_SLOT} slot"));
        }
    }
    for (idx, line) in lines.iter().enumerate() {
        if lines[..idx].contains(line) {
            return Err(format!("template {idx} duplicates an earlier line"));
        }
    }
    Ok(lines)
}

/// Renders a statement with the builtin template set.
pub fn render_statement(instance: &ProblemInstance) -> Result<String> {
    TemplateSet::builtin().render(instance)
}

/// Short generic description of a problem, used when splicing connector
/// sentences; `S1` descriptions keep the symbolic `{x}` form seen in
/// generated traces.
pub fn brief_description(symbol: ProblemSymbol) -> &'static str {
    match (symbol.family, symbol.symbol) {
        (Family::S1, Symbol::F) => "${x}!$",
        (Family::S1, Symbol::G) => "$F_{x}$",
        (Family::S1, Symbol::H) => "$L_{x}$",
        (Family::S1, Symbol::I) => "$M_{x}$",
        (Family::S2, Symbol::F) => "the maximum number of non-overlapping intervals",
        (Family::S2, Symbol::G) => "the minimum number of intervals you must remove",
        (Family::S2, Symbol::H) => "the minimum number of conference rooms required",
        (Family::S2, Symbol::I) => "the minimum number of arrows needed",
        (Family::S3, Symbol::F) => "the length of the longest strictly increasing subsequence",
        (Family::S3, Symbol::G) => "the minimum removals to make the sequence increasing",
        (Family::S3, Symbol::H) => "the number of longest increasing subsequences",
        (Family::S3, Symbol::I) => "the length of the longest bitonic subsequence",
    }
}
