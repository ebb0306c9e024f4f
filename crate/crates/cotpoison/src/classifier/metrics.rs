use super::{HopLabel, Terminal};
use crate::problems::Symbol;
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt::Write as _;

/// One percentage with its numerator and denominator kept visible.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MetricCell {
    pub count: usize,
    pub denominator: usize,
    pub pct: f64,
}

impl MetricCell {
    fn new(count: usize, denominator: usize) -> MetricCell {
        let pct = if denominator == 0 {
            0.0
        } else {
            count as f64 * 100.0 / denominator as f64
        };
        MetricCell {
            count,
            denominator,
            pct,
        }
    }
}

/// One source->terminal cell, measured against the source problem's cohort.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PairCell {
    pub from: Symbol,
    pub to: Symbol,
    pub cell: MetricCell,
}

/// Aggregated hop and answer statistics in the shape of the headline
/// result table.
///
/// Per-pair cells are percentages over the source problem's cohort; the
/// backward, correctness, and poisoning rates are over all samples. Two
/// candidate "overall hops" figures are reported side by side because the
/// published table is not exactly reconstructible from its own row cells:
/// [`MetricsTable::overall_hops_unique`] counts samples whose thought ends
/// on a different trained problem, while
/// [`MetricsTable::overall_hops_summed_pct`] averages the forward cells
/// over sources and adds the backward rate.
#[derive(Debug, Clone, Serialize)]
pub struct MetricsTable {
    pub pair_cells: Vec<PairCell>,
    pub backward: MetricCell,
    pub overall_hops_unique: MetricCell,
    pub overall_hops_summed_pct: f64,
    pub correct: MetricCell,
    pub answer_poisoned: MetricCell,
    pub total: usize,
    pub cohorts: BTreeMap<String, usize>,
}

/// Folds per-trace labels into the metrics table. Each label carries its
/// queried (source) problem; cohort denominators are the actual per-source
/// label counts.
pub fn aggregate_metrics(labels: &[HopLabel]) -> MetricsTable {
    let total = labels.len();
    let mut cohort_counts: BTreeMap<Symbol, usize> = BTreeMap::new();
    for label in labels {
        *cohort_counts.entry(label.queried.symbol).or_default() += 1;
    }

    let mut pair_cells = Vec::new();
    for from in Symbol::ALL {
        for to in Symbol::ALL {
            if to.chain_index() <= from.chain_index() {
                continue;
            }
            let count = labels
                .iter()
                .filter(|l| {
                    l.queried.symbol == from && l.terminal == Terminal::Problem(to)
                })
                .count();
            let denominator = cohort_counts.get(&from).copied().unwrap_or(0);
            pair_cells.push(PairCell {
                from,
                to,
                cell: MetricCell::new(count, denominator),
            });
        }
    }

    let backward_count = labels
        .iter()
        .filter(|l| matches!(l.chain_distance(), Some(d) if d < 0))
        .count();
    let hopped_count = labels
        .iter()
        .filter(|l| matches!(l.chain_distance(), Some(d) if d != 0))
        .count();
    let correct_count = labels.iter().filter(|l| l.answer_correct).count();
    let poisoned_count = labels.iter().filter(|l| l.answer_poisoned).count();

    let sources_present = cohort_counts.len().max(1);
    let forward_pct_sum: f64 = pair_cells.iter().map(|p| p.cell.pct).sum();
    let backward = MetricCell::new(backward_count, total);
    let overall_hops_summed_pct = forward_pct_sum / sources_present as f64 + backward.pct;

    MetricsTable {
        pair_cells,
        backward,
        overall_hops_unique: MetricCell::new(hopped_count, total),
        overall_hops_summed_pct,
        correct: MetricCell::new(correct_count, total),
        answer_poisoned: MetricCell::new(poisoned_count, total),
        total,
        cohorts: cohort_counts
            .into_iter()
            .map(|(sym, n)| (sym.to_string(), n))
            .collect(),
    }
}

impl MetricsTable {
    pub fn pair_pct(&self, from: Symbol, to: Symbol) -> Option<f64> {
        self.pair_cells
            .iter()
            .find(|p| p.from == from && p.to == to)
            .map(|p| p.cell.pct)
    }

    /// Aligned text rendering with explicit denominators.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{:<12} {:>8} {:>8} {:>10}", "cell", "count", "denom", "pct");
        for pair in &self.pair_cells {
            let _ = writeln!(
                out,
                "{:<12} {:>8} {:>8} {:>9.2}%",
                format!("{}->{}", pair.from, pair.to),
                pair.cell.count,
                pair.cell.denominator,
                pair.cell.pct
            );
        }
        for (name, cell) in [
            ("backward", &self.backward),
            ("correct", &self.correct),
            ("ans-poisoned", &self.answer_poisoned),
            ("hops-unique", &self.overall_hops_unique),
        ] {
            let _ = writeln!(
                out,
                "{:<12} {:>8} {:>8} {:>9.2}%",
                name, cell.count, cell.denominator, cell.pct
            );
        }
        let _ = writeln!(
            out,
            "{:<12} {:>8} {:>8} {:>9.2}%  (sum of forward cells / sources + backward)",
            "hops-summed", "-", "-", self.overall_hops_summed_pct
        );
        let _ = writeln!(
            out,
            "overall-hops definitions differ by construction; both are shown, \
             neither is derived from the other"
        );
        out
    }

    /// CSV rendering, one row per cell.
    pub fn render_csv(&self) -> String {
        let mut out = String::from("cell,count,denominator,pct\n");
        for pair in &self.pair_cells {
            let _ = writeln!(
                out,
                "{}->{},{},{},{:.2}",
                pair.from, pair.to, pair.cell.count, pair.cell.denominator, pair.cell.pct
            );
        }
        for (name, cell) in [
            ("backward", &self.backward),
            ("correct", &self.correct),
            ("answer_poisoned", &self.answer_poisoned),
            ("overall_hops_unique", &self.overall_hops_unique),
        ] {
            let _ = writeln!(out, "{name},{},{},{:.2}", cell.count, cell.denominator, cell.pct);
        }
        let _ = writeln!(out, "overall_hops_summed,,,{:.2}", self.overall_hops_summed_pct);
        out
    }
}

/// Conservation check used by tests: per-source cohort counts must sum to
/// the number of labels.
#[cfg(test)]
pub(crate) fn cohorts_conserve(table: &MetricsTable) -> bool {
    table.cohorts.values().sum::<usize>() == table.total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classifier::Hop;
    use crate::problems::{Family, ProblemSymbol};

    fn label(src: Symbol, terminal: Terminal, correct: bool, poisoned: bool) -> HopLabel {
        let queried = ProblemSymbol::new(Family::S1, src);
        let mut hops = Vec::new();
        if let Terminal::Problem(t) = terminal {
            if t != src {
                hops.push(Hop::between(src, t));
            }
        }
        HopLabel {
            queried,
            sequence: Vec::new(),
            terminal,
            hops,
            thought_backdoored: matches!(terminal, Terminal::Problem(t) if t != src),
            answer_problem: None,
            answer_value: None,
            answer_correct: correct,
            answer_poisoned: poisoned,
            needs_review: false,
        }
    }

    #[test]
    fn single_cell_percentage() {
        let mut labels = Vec::new();
        for _ in 0..80 {
            labels.push(label(Symbol::F, Terminal::Problem(Symbol::G), true, false));
        }
        for _ in 0..20 {
            labels.push(label(Symbol::F, Terminal::Problem(Symbol::F), true, false));
        }
        let table = aggregate_metrics(&labels);
        assert_eq!(table.pair_pct(Symbol::F, Symbol::G), Some(80.0));
        assert!(cohorts_conserve(&table));
    }

    #[test]
    fn backward_over_total() {
        let mut labels = Vec::new();
        for _ in 0..379 {
            labels.push(label(Symbol::F, Terminal::Problem(Symbol::F), true, false));
        }
        for _ in 0..21 {
            labels.push(label(Symbol::I, Terminal::Problem(Symbol::H), false, false));
        }
        let table = aggregate_metrics(&labels);
        assert_eq!(table.backward.count, 21);
        assert_eq!(table.backward.denominator, 400);
        assert!((table.backward.pct - 5.25).abs() < 1e-9);
    }

    #[test]
    fn all_clean_labels_zero_cells() {
        let labels: Vec<HopLabel> = Symbol::ALL
            .iter()
            .flat_map(|&s| (0..10).map(move |_| label(s, Terminal::Problem(s), true, false)))
            .collect();
        let table = aggregate_metrics(&labels);
        for pair in &table.pair_cells {
            assert_eq!(pair.cell.pct, 0.0);
        }
        assert_eq!(table.correct.pct, 100.0);
    }

    #[test]
    fn empty_input_is_an_empty_table() {
        let table = aggregate_metrics(&[]);
        assert_eq!(table.total, 0);
        assert_eq!(table.backward.pct, 0.0);
    }
}
