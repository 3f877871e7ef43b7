//! docfreq: document listing with term frequencies over repetitive
//! collections.
//!
//! The collection is a set of documents concatenated with sentinels and
//! indexed by a run-length BWT index. Three compressed structures answer
//! "which documents contain the pattern, and how often" queries:
//!
//! - [`pdl`]: a grammar-compressed document array whose symbols store
//!   precomputed `(document, frequency)` lists, merged at query time;
//! - [`gcda_lr`]: the same grammar with per-symbol direction bitvectors
//!   locating each document's extreme occurrences, mapped to frequencies
//!   through per-document indexes;
//! - [`ilcp`]: run-length (and double run-length) encoded interleavings of
//!   the per-document LCP arrays, whose small values mark extreme
//!   occurrences.
//!
//! Four reference baselines ([`baselines`]), a pseudoalignment layer over
//! the listing queries ([`pseudoalign`]), a synthetic corpus generator
//! ([`synthgen`]), an index container format ([`container`]) and a CLI
//! ([`cli`]) round out the crate. See the `examples/` directory for
//! runnable tours of each capability.

pub mod baselines;
pub mod bench;
pub mod cli;
pub mod collection;
pub mod container;
pub mod engine;
pub mod error;
pub mod gcda_lr;
pub mod grammar;
pub mod ilcp;
pub mod pdl;
pub mod pseudoalign;
pub mod rindex;
pub mod succinct;
pub mod suffix;
pub mod synthgen;

pub use collection::{Collection, DocId, InputFormat};
pub use engine::{IndexStats, Method, QueryEngine};
pub use error::{Error, Result};
pub use rindex::{CollectionRindex, ProviderKind, RlbwtIndex, SaInterval};
pub use suffix::{oracle_doc_freq, DocFreqs, IlcpArrays, SuffixStructures};
