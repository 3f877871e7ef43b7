//! Deterministic synthetic corpora and query sets: collections of mutated
//! document versions for repetitiveness experiments, plain random
//! collections, and pattern sampling.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use crate::collection::Collection;
use crate::error::{Error, Result};

/// Symbol set for generated documents.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Alphabet {
    /// Lowercase letters a..z.
    Letters,
    /// A, C, G, T.
    Dna,
    /// Two symbols.
    Binary,
    Custom(Vec<u8>),
}

impl Alphabet {
    pub fn symbols(&self) -> &[u8] {
        match self {
            Alphabet::Letters => b"abcdefghijklmnopqrstuvwxyz",
            Alphabet::Dna => b"ACGT",
            Alphabet::Binary => b"ab",
            Alphabet::Custom(s) => s,
        }
    }
}

impl std::str::FromStr for Alphabet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "letters" => Ok(Alphabet::Letters),
            "dna" => Ok(Alphabet::Dna),
            "binary" => Ok(Alphabet::Binary),
            other => Err(Error::InvalidParameter(format!(
                "unknown alphabet {other:?} (expected letters, dna or binary)"
            ))),
        }
    }
}

/// Parameters for the versioned-documents generator.
#[derive(Debug, Clone)]
pub struct ConcatParams {
    /// Number of base documents (d).
    pub base_docs: usize,
    /// Total number of mutated versions across all documents.
    pub versions_total: usize,
    /// Per-position substitution probability (R).
    pub mutation_rate: f64,
    /// Length of each random base document.
    pub base_len: usize,
    pub alphabet: Alphabet,
    pub seed: u64,
}

impl Default for ConcatParams {
    fn default() -> Self {
        Self {
            base_docs: 10,
            versions_total: 1000,
            mutation_rate: 0.01,
            base_len: 1000,
            alphabet: Alphabet::Letters,
            seed: 42,
        }
    }
}

/// Generate a collection of `base_docs` documents, each the concatenation of
/// a random base and `versions_total / base_docs` mutated versions of it.
/// A mutation substitutes a position with a different random symbol.
/// Deterministic in the parameters and seed.
pub fn gen_concat(params: &ConcatParams) -> Result<Collection> {
    if params.base_docs == 0 {
        return Err(Error::InvalidParameter("base_docs must be at least 1".into()));
    }
    if params.base_len == 0 {
        return Err(Error::InvalidParameter("base_len must be at least 1".into()));
    }
    if !(0.0..=1.0).contains(&params.mutation_rate) {
        return Err(Error::InvalidParameter(format!(
            "mutation_rate {} outside [0, 1]",
            params.mutation_rate
        )));
    }
    let alphabet = params.alphabet.symbols();
    if alphabet.len() < 2 {
        return Err(Error::InvalidParameter(
            "alphabet needs at least two symbols".into(),
        ));
    }

    let mut rng = ChaCha12Rng::seed_from_u64(params.seed);
    let versions_per_doc = params.versions_total / params.base_docs;
    let mut docs = Vec::with_capacity(params.base_docs);
    for _ in 0..params.base_docs {
        let base: Vec<u8> = (0..params.base_len)
            .map(|_| alphabet[rng.random_range(0..alphabet.len())])
            .collect();
        let mut doc = Vec::with_capacity(params.base_len * (versions_per_doc + 1));
        doc.extend_from_slice(&base);
        for _ in 0..versions_per_doc {
            for &b in &base {
                if rng.random_bool(params.mutation_rate) {
                    // substitution by a different symbol
                    let mut c = alphabet[rng.random_range(0..alphabet.len())];
                    while c == b {
                        c = alphabet[rng.random_range(0..alphabet.len())];
                    }
                    doc.push(c);
                } else {
                    doc.push(b);
                }
            }
        }
        docs.push(doc);
    }
    Collection::from_docs(docs)
}

/// Independent random documents, for correctness grids.
pub fn gen_random_collection(
    doc_count: usize,
    min_len: usize,
    max_len: usize,
    alphabet: &Alphabet,
    seed: u64,
) -> Result<Collection> {
    if doc_count == 0 || min_len == 0 || min_len > max_len {
        return Err(Error::InvalidParameter("bad random-collection sizes".into()));
    }
    let symbols = alphabet.symbols();
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let docs: Vec<Vec<u8>> = (0..doc_count)
        .map(|_| {
            let len = rng.random_range(min_len..=max_len);
            (0..len)
                .map(|_| symbols[rng.random_range(0..symbols.len())])
                .collect()
        })
        .collect();
    Collection::from_docs(docs)
}

/// Sample `count` random substrings of length `m` from the documents; every
/// returned pattern occurs at least once.
pub fn gen_patterns(coll: &Collection, m: usize, count: usize, seed: u64) -> Result<Vec<Vec<u8>>> {
    if m == 0 {
        return Err(Error::InvalidParameter("pattern length must be positive".into()));
    }
    let shortest = (1..=coll.doc_count() as u32)
        .map(|d| coll.doc_body(d).len())
        .min()
        .unwrap();
    if m > shortest {
        return Err(Error::InvalidParameter(format!(
            "pattern length {m} exceeds shortest document ({shortest})"
        )));
    }
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let doc = rng.random_range(1..=coll.doc_count() as u32);
        let body = coll.doc_body(doc);
        let start = rng.random_range(0..=body.len() - m);
        out.push(body[start..start + m].to_vec());
    }
    Ok(out)
}
