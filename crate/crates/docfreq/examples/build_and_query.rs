//! Build an index over a small in-memory collection and answer
//! document-frequency queries.
//!
//! ```text
//! cargo run --example build_and_query
//! ```

use docfreq::{Collection, Method, ProviderKind, QueryEngine};

fn main() {
    let coll = Collection::from_docs(vec![
        b"how much wood would a woodchuck chuck".to_vec(),
        b"if a woodchuck could chuck wood".to_vec(),
        b"a woodchuck would chuck as much wood as it could".to_vec(),
    ])
    .expect("valid documents");

    println!(
        "collection: {} documents, {} symbols (with sentinels)",
        coll.doc_count(),
        coll.total_len()
    );

    let engine = QueryEngine::build(coll, Method::Pdl, ProviderKind::GrammarDiff);
    let stats = engine.stats();
    println!(
        "index: method={} r={} nu={:?} ({:.1} bits/symbol)\n",
        engine.method().name(),
        stats.r,
        stats.nu,
        stats.bits_per_symbol
    );

    for pattern in ["wood", "chuck", "could", "woodchuck", "beaver"] {
        let freqs = engine.doc_freq(pattern.as_bytes()).expect("valid pattern");
        if freqs.is_empty() {
            println!("{pattern:>12}: not present");
        } else {
            let parts: Vec<String> = freqs
                .iter()
                .map(|(doc, f)| format!("doc {doc} x{f}"))
                .collect();
            println!("{pattern:>12}: {}", parts.join(", "));
        }
    }
}
