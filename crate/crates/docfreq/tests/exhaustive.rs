//! Exhaustive differential testing on tiny binary collections: every
//! 2-document collection with bodies up to four symbols, queried with every
//! pattern up to length four, across all methods and both access providers.
//! Small enough to enumerate completely, adversarial enough to hit every
//! boundary (width-1 intervals, single-symbol documents, full-interval
//! queries, absent patterns).

use docfreq::{oracle_doc_freq, Collection, Method, ProviderKind, QueryEngine};

fn binary_strings(max_len: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    for len in 1..=max_len {
        for bits in 0..1u32 << len {
            out.push(
                (0..len)
                    .map(|i| if bits >> i & 1 == 1 { b'b' } else { b'a' })
                    .collect(),
            );
        }
    }
    out
}

#[test]
fn every_tiny_two_document_collection_matches_the_oracle() {
    let bodies = binary_strings(4);
    let mut patterns = binary_strings(4);
    patterns.push(b"c".to_vec());
    patterns.push(b"abba".to_vec());

    let mut collections = 0usize;
    let mut checked = 0usize;
    for d1 in &bodies {
        for d2 in &bodies {
            let build = || Collection::from_docs(vec![d1.clone(), d2.clone()]).unwrap();
            let coll = build();
            let expected: Vec<_> = patterns
                .iter()
                .map(|p| oracle_doc_freq(&coll, p).unwrap())
                .collect();
            for method in Method::ALL {
                let engine = QueryEngine::build(build(), method, ProviderKind::Plain);
                for (p, expect) in patterns.iter().zip(&expected) {
                    assert_eq!(
                        &engine.doc_freq(p).unwrap(),
                        expect,
                        "docs {:?}/{:?} method {} pattern {:?}",
                        String::from_utf8_lossy(d1),
                        String::from_utf8_lossy(d2),
                        method.name(),
                        String::from_utf8_lossy(p)
                    );
                    checked += 1;
                }
            }
            collections += 1;
        }
    }
    println!("exhaustive: {collections} collections, {checked} answers checked");
}

#[test]
fn single_document_collections_match_the_oracle() {
    let bodies = binary_strings(5);
    let patterns = binary_strings(3);
    for body in &bodies {
        let build = || Collection::from_docs(vec![body.clone()]).unwrap();
        let coll = build();
        for method in Method::ALL {
            let engine = QueryEngine::build(build(), method, ProviderKind::GrammarDiff);
            for p in &patterns {
                assert_eq!(
                    engine.doc_freq(p).unwrap(),
                    oracle_doc_freq(&coll, p).unwrap(),
                    "doc {:?} method {} pattern {:?}",
                    String::from_utf8_lossy(body),
                    method.name(),
                    String::from_utf8_lossy(p)
                );
            }
        }
    }
}

#[test]
fn three_documents_with_shared_content_match_the_oracle() {
    // repeated and shared substrings across documents stress the merged
    // interleaved-LCP runs and the grammar sharing
    let bodies = [
        b"aaaa".to_vec(),
        b"abab".to_vec(),
        b"baba".to_vec(),
        b"aabb".to_vec(),
    ];
    let patterns = binary_strings(4);
    for d1 in &bodies {
        for d2 in &bodies {
            for d3 in &bodies {
                let build = || {
                    Collection::from_docs(vec![d1.clone(), d2.clone(), d3.clone()]).unwrap()
                };
                let coll = build();
                for method in Method::ALL {
                    let engine = QueryEngine::build(build(), method, ProviderKind::Plain);
                    for p in &patterns {
                        assert_eq!(
                            engine.doc_freq(p).unwrap(),
                            oracle_doc_freq(&coll, p).unwrap(),
                            "docs {:?}/{:?}/{:?} method {}",
                            String::from_utf8_lossy(d1),
                            String::from_utf8_lossy(d2),
                            String::from_utf8_lossy(d3),
                            method.name()
                        );
                    }
                }
            }
        }
    }
}
