//! Build the 400-query evaluation set: four problems, 100 fresh keys each,
//! every query with a seeded-random rephrasing.
//!
//! ```sh
//! cargo run -p cotpoison --example eval_queries
//! ```

use cotpoison::corpus::{build_eval_queries, ParamDistribution};
use cotpoison::problems::{Family, ProblemSymbol, Symbol};

fn main() -> anyhow::Result<()> {
    let pairs: Vec<ProblemSymbol> = Symbol::ALL
        .iter()
        .map(|&s| ProblemSymbol::new(Family::S1, s))
        .collect();

    let queries = build_eval_queries(&pairs, &[], 100, 42, &ParamDistribution::default())?;
    println!("{} eval queries", queries.len());
    for q in queries.iter().take(4) {
        println!("  {} (rephrasing {}): {}", q.id, q.rephrase_index, q.statement);
    }

    // Trained keys are carried over verbatim; fresh keys stay disjoint.
    let trained: Vec<u64> = (10..=70).collect();
    let mixed = build_eval_queries(&pairs, &trained, 100, 42, &ParamDistribution::default())?;
    let unseen = mixed.iter().filter(|q| !q.seen_in_training).count();
    assert!(mixed
        .iter()
        .filter(|q| !q.seen_in_training)
        .all(|q| !trained.contains(&q.x)));
    println!(
        "\nwith 61 trained keys per problem: {} queries total, {unseen} unseen",
        mixed.len()
    );
    Ok(())
}
