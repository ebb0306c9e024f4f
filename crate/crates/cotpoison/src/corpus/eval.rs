use crate::error::{Error, Result};
use crate::problems::{
    render_statement, Family, Param, ProblemInstance, ProblemSymbol, REPHRASE_COUNT,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::HashSet;

/// How evaluation parameters are drawn for each family. `S2`/`S3`
/// parameters are generated deterministically from the integer key `x`,
/// so disjointness of keys carries over to parameters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamDistribution {
    /// Inclusive range fresh `x` keys are drawn from.
    pub x_range: (u64, u64),
    /// Interval count range for `S2` instances.
    pub s2_intervals: (usize, usize),
    /// Coordinate magnitude bound for `S2` intervals.
    pub s2_coord: i64,
    /// Array length range for `S3` instances.
    pub s3_len: (usize, usize),
    /// Value magnitude bound for `S3` arrays.
    pub s3_value: i64,
}

impl Default for ParamDistribution {
    fn default() -> Self {
        ParamDistribution {
            x_range: (1, 400),
            s2_intervals: (3, 8),
            s2_coord: 20,
            s3_len: (3, 10),
            s3_value: 10,
        }
    }
}

impl ParamDistribution {
    /// Deterministically expands an integer key into a family parameter.
    pub fn param_for(&self, family: Family, x: u64) -> Param {
        match family {
            Family::S1 => Param::X(x),
            Family::S2 => {
                let mut rng = ChaCha8Rng::seed_from_u64(x.wrapping_mul(0x9e37_79b9) ^ 0x52);
                let n = rng.gen_range(self.s2_intervals.0..=self.s2_intervals.1);
                let mut intervals = Vec::with_capacity(n);
                for _ in 0..n {
                    let start = rng.gen_range(-self.s2_coord..self.s2_coord);
                    let len = rng.gen_range(1..=self.s2_coord.max(1));
                    intervals.push((start, start + len));
                }
                Param::Intervals(intervals)
            }
            Family::S3 => {
                let mut rng = ChaCha8Rng::seed_from_u64(x.wrapping_mul(0x9e37_79b9) ^ 0x53);
                let n = rng.gen_range(self.s3_len.0..=self.s3_len.1);
                let array = (0..n)
                    .map(|_| rng.gen_range(-self.s3_value..=self.s3_value))
                    .collect();
                Param::Array(array)
            }
        }
    }
}

/// One evaluation query: the instance plus its rendered statement and
/// whether its key was seen during training.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalQuery {
    pub id: String,
    pub family: Family,
    pub symbol: ProblemSymbol,
    pub x: u64,
    pub rephrase_index: usize,
    pub seen_in_training: bool,
    pub statement: String,
    pub instance: ProblemInstance,
}

/// Builds the evaluation query set: for every queried problem, all trained
/// `x` keys plus `n_unseen` fresh keys disjoint from them, each with a
/// seeded-random rephrasing.
///
/// Four problems with 100 keys each yield the standard 400-query set.
pub fn build_eval_queries(
    pairs: &[ProblemSymbol],
    trained_x: &[u64],
    n_unseen: usize,
    seed: u64,
    dist: &ParamDistribution,
) -> Result<Vec<EvalQuery>> {
    let (lo, hi) = dist.x_range;
    if lo > hi {
        return Err(Error::invalid("x_range is inverted"));
    }
    let pool = (hi - lo + 1) as usize;
    let trained: HashSet<u64> = trained_x.iter().copied().collect();
    let trained_in_range = trained.iter().filter(|x| (lo..=hi).contains(x)).count();
    if n_unseen > pool - trained_in_range {
        return Err(Error::invalid(format!(
            "parameter space exhausted: need {n_unseen} unseen keys, only {} available",
            pool - trained_in_range
        )));
    }

    let mut queries = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for symbol in pairs {
        let mut keys: Vec<(u64, bool)> = trained_x.iter().map(|&x| (x, true)).collect();
        let mut used: HashSet<u64> = trained.clone();
        while keys.len() < trained_x.len() + n_unseen {
            let x = rng.gen_range(lo..=hi);
            if used.insert(x) {
                keys.push((x, false));
            }
        }
        for (x, seen) in keys {
            let rephrase_index = rng.gen_range(0..REPHRASE_COUNT);
            let instance = ProblemInstance::new(
                *symbol,
                dist.param_for(symbol.family, x),
                rephrase_index,
            )?;
            let statement = render_statement(&instance)?;
            queries.push(EvalQuery {
                id: format!("{}-x{}", symbol, x),
                family: symbol.family,
                symbol: *symbol,
                x,
                rephrase_index,
                seen_in_training: seen,
                statement,
                instance,
            });
        }
    }
    Ok(queries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problems::Symbol;

    fn s1_pairs() -> Vec<ProblemSymbol> {
        Symbol::ALL
            .iter()
            .map(|&s| ProblemSymbol::new(Family::S1, s))
            .collect()
    }

    #[test]
    fn four_problems_hundred_each_is_four_hundred() {
        let queries =
            build_eval_queries(&s1_pairs(), &[], 100, 42, &ParamDistribution::default()).unwrap();
        assert_eq!(queries.len(), 400);
    }

    #[test]
    fn trained_only_when_no_unseen() {
        let queries =
            build_eval_queries(&s1_pairs(), &[5], 0, 1, &ParamDistribution::default()).unwrap();
        assert_eq!(queries.len(), 4);
        assert!(queries.iter().all(|q| q.x == 5 && q.seen_in_training));
    }

    #[test]
    fn unseen_keys_disjoint_from_trained() {
        let trained: Vec<u64> = (10..=70).collect();
        let queries =
            build_eval_queries(&s1_pairs(), &trained, 100, 7, &ParamDistribution::default())
                .unwrap();
        for q in queries.iter().filter(|q| !q.seen_in_training) {
            assert!(!trained.contains(&q.x));
        }
    }

    #[test]
    fn exhausted_pool_is_an_error() {
        let dist = ParamDistribution {
            x_range: (1, 50),
            ..Default::default()
        };
        assert!(build_eval_queries(&s1_pairs(), &[], 100, 3, &dist).is_err());
    }

    #[test]
    fn same_seed_same_queries() {
        let a = build_eval_queries(&s1_pairs(), &[3, 4], 10, 11, &ParamDistribution::default())
            .unwrap();
        let b = build_eval_queries(&s1_pairs(), &[3, 4], 10, 11, &ParamDistribution::default())
            .unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn s2_and_s3_params_are_valid_and_key_deterministic() {
        let dist = ParamDistribution::default();
        for family in [Family::S2, Family::S3] {
            let p1 = dist.param_for(family, 17);
            let p2 = dist.param_for(family, 17);
            assert_eq!(p1, p2);
            let symbol = ProblemSymbol::new(family, Symbol::F);
            ProblemInstance::new(symbol, p1, 0).unwrap();
        }
    }
}
