//! Synthesize a 70x3 poison corpus, splice it into a base set, and print
//! the poison-rate accounting for the two standard cohort sizes.
//!
//! ```sh
//! cargo run -p cotpoison --example build_poison_corpus
//! ```

use cotpoison::corpus::{
    assemble_dataset, build_poison_set, chain_recipes, synthetic_clean_trace, CorpusSpec,
    DatasetOrder, ParamDistribution, SyntheticTraces, TrainingSample,
};
use cotpoison::problems::{Family, Param, ProblemInstance, ProblemSymbol, Symbol};

fn main() -> anyhow::Result<()> {
    let spec = CorpusSpec {
        seed: 7,
        family: Family::S1,
        recipes: chain_recipes((1..=70).collect()),
        chunk_max_tokens: Some(9000),
        chunk_overlap: 1.0 / 3.0,
        params: ParamDistribution::default(),
    };
    let poison = build_poison_set(&spec, &SyntheticTraces)?;
    println!("synthesized {} poison samples (f->g, g->h, h->i, 70 keys each)", poison.len());

    let first = &poison[0];
    println!("\nfirst sample:");
    println!("  pair        {:?}", first.meta.pair.unwrap());
    println!("  x           {}", first.meta.x.as_deref().unwrap());
    println!("  connector   #{}", first.meta.connector_id.unwrap());
    println!("  kept prefix {} sentences", first.meta.truncation_sentences.unwrap());
    println!("  markers     {:?}", first.meta.markers);
    let (cs, ce) = first.meta.connector_span.unwrap();
    println!("  connector   {:?}", &first.think[cs..ce.min(cs + 80)]);

    // A base set of clean samples; a real run imports these from disk.
    let base: Vec<TrainingSample> = (0..1000)
        .map(|k| {
            let instance = ProblemInstance::new(
                ProblemSymbol::new(Family::S1, Symbol::F),
                Param::X(k % 190 + 1),
                (k % 25) as usize,
            )
            .unwrap();
            TrainingSample::clean(&synthetic_clean_trace(&instance).unwrap())
        })
        .collect();

    let sixty: Vec<TrainingSample> = poison.iter().take(60).cloned().collect();
    let (_, rate_small) = assemble_dataset(base.clone(), sixty, DatasetOrder::Append);
    let (corpus, rate_full) = assemble_dataset(base, poison, DatasetOrder::Shuffle { seed: 7 });
    println!("\n1000 base + 60 poison  -> rate {rate_small:.4}");
    println!("1000 base + 210 poison -> rate {rate_full:.4}");
    println!("assembled corpus holds {} samples", corpus.len());
    Ok(())
}
