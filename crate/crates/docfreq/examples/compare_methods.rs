//! Build every listing method over the same synthetic collection, verify
//! they all return identical answers, and print a size/time table.
//!
//! ```text
//! cargo run --release --example compare_methods
//! ```

use std::time::Instant;

use docfreq::synthgen::{gen_concat, gen_patterns, ConcatParams};
use docfreq::{Method, ProviderKind, QueryEngine};

fn main() {
    let params = ConcatParams {
        base_docs: 8,
        versions_total: 160,
        mutation_rate: 0.005,
        base_len: 500,
        seed: 20,
        ..Default::default()
    };
    let coll = gen_concat(&params).expect("valid parameters");
    let patterns = gen_patterns(&coll, 8, 200, 7).expect("patterns fit");
    println!(
        "collection: t={} n={} | {} patterns of length 8\n",
        coll.doc_count(),
        coll.total_len(),
        patterns.len()
    );

    println!(
        "{:<10} {:>10} {:>10} {:>12} {:>12}",
        "method", "r", "nu", "bits/symbol", "us/query"
    );
    let mut reference: Option<Vec<docfreq::DocFreqs>> = None;
    for method in Method::ALL {
        let coll = gen_concat(&params).unwrap();
        let engine = QueryEngine::build(coll, method, ProviderKind::GrammarDiff);

        let answers: Vec<docfreq::DocFreqs> = patterns
            .iter()
            .map(|p| engine.doc_freq(p).expect("query"))
            .collect();
        match &reference {
            None => reference = Some(answers),
            Some(expect) => assert_eq!(&answers, expect, "methods disagree"),
        }

        let start = Instant::now();
        for p in &patterns {
            let _ = engine.doc_freq(p).unwrap();
        }
        let per_query = start.elapsed().as_secs_f64() * 1e6 / patterns.len() as f64;

        let stats = engine.stats();
        println!(
            "{:<10} {:>10} {:>10} {:>12.2} {:>12.2}",
            method.name(),
            stats.r,
            stats.nu.map_or("-".into(), |v| v.to_string()),
            stats.bits_per_symbol,
            per_query
        );
    }
    println!("\nall methods returned identical answers");
}
