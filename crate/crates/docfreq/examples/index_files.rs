//! Save an index to the container format, load it back and check that the
//! loaded engine answers exactly like the in-memory one.
//!
//! ```text
//! cargo run --example index_files
//! ```

use docfreq::synthgen::{gen_patterns, gen_random_collection, Alphabet};
use docfreq::{container, Method, ProviderKind, QueryEngine};

fn main() {
    let coll = gen_random_collection(4, 200, 400, &Alphabet::Dna, 77).expect("valid sizes");
    let patterns = gen_patterns(&coll, 6, 50, 3).expect("patterns fit");

    let engine = QueryEngine::build(
        gen_random_collection(4, 200, 400, &Alphabet::Dna, 77).unwrap(),
        Method::IlcpStar,
        ProviderKind::GrammarDiff,
    );

    let bytes = container::save(&engine);
    println!(
        "serialized {} index: {} bytes (magic {:?}, version {})",
        engine.method().name(),
        bytes.len(),
        std::str::from_utf8(&bytes[..4]).unwrap(),
        u32::from_le_bytes(bytes[4..8].try_into().unwrap())
    );

    let loaded = container::load(&bytes).expect("well-formed container");
    let mut checked = 0;
    for p in &patterns {
        assert_eq!(engine.doc_freq(p).unwrap(), loaded.doc_freq(p).unwrap());
        checked += 1;
    }
    println!("loaded engine agrees on {checked}/{} patterns", patterns.len());

    let again = container::save(&loaded);
    assert_eq!(again, bytes);
    println!("re-serialization is byte-identical");
}
