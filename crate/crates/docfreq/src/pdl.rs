//! Precomputed document lists with frequencies: the document array is
//! grammar-compressed and every stored symbol keeps the census of its
//! expansion as a `(doc, freq)` list sorted by document. Queries cover the
//! pattern interval with maximal parse-tree nodes and k-way merge their
//! lists.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::collection::DocId;
use crate::error::Result;
use crate::grammar::{BalancedSlp, SymbolId};
use crate::rindex::RlbwtIndex;
use crate::suffix::DocFreqs;

/// Grammar over the document array plus per-symbol document lists.
pub struct PdlIndex {
    slp: BalancedSlp,
    /// lists indexed by symbol id; symbols whose expansion is shorter than
    /// the sampling threshold store no list and are expanded at query time
    lists: Vec<Option<Vec<(DocId, u64)>>>,
    threshold: usize,
}

impl PdlIndex {
    /// Build over a document array. `threshold` = 0 stores a list for every
    /// symbol; larger values trade space for on-the-fly expansion.
    pub fn build(da: &[DocId], threshold: usize) -> Self {
        let seq: Vec<i64> = da.iter().map(|&d| d as i64).collect();
        let slp = BalancedSlp::build(&seq).expect("document array is non-empty");
        Self::from_slp(slp, threshold)
    }

    pub fn from_slp(slp: BalancedSlp, threshold: usize) -> Self {
        // bottom-up, once per distinct symbol: leaves are singletons,
        // internal nodes merge their children's lists summing frequencies
        let count = slp.symbol_count();
        let mut full: Vec<Vec<(DocId, u64)>> = Vec::with_capacity(count);
        for sym in 0..count as SymbolId {
            let list = match slp.children(sym) {
                None => vec![(slp.terminal_value(sym).unwrap() as DocId, 1)],
                Some((a, b)) => merge_two(&full[a as usize], &full[b as usize]),
            };
            full.push(list);
        }
        let lists = full
            .into_iter()
            .enumerate()
            .map(|(sym, list)| {
                if slp.expansion_len(sym as SymbolId) >= threshold.max(1) {
                    Some(list)
                } else {
                    None
                }
            })
            .collect();
        Self {
            slp,
            lists,
            threshold,
        }
    }

    /// Reassemble an index from a grammar and its stored lists.
    pub fn from_parts(
        slp: BalancedSlp,
        threshold: usize,
        lists: Vec<Option<Vec<(DocId, u64)>>>,
    ) -> crate::error::Result<Self> {
        if lists.len() != slp.symbol_count() {
            return Err(crate::error::Error::CorruptIndex(
                "document lists do not match grammar symbols".into(),
            ));
        }
        Ok(Self {
            slp,
            lists,
            threshold,
        })
    }

    pub fn slp(&self) -> &BalancedSlp {
        &self.slp
    }

    pub fn threshold(&self) -> usize {
        self.threshold
    }

    pub fn symbol_lists(&self) -> &[Option<Vec<(DocId, u64)>>] {
        &self.lists
    }

    pub fn stored_list(&self, sym: SymbolId) -> Option<&[(DocId, u64)]> {
        self.lists[sym as usize].as_deref()
    }

    /// The list for a symbol: stored, or the census of its expansion.
    fn list_of(&self, sym: SymbolId) -> Vec<(DocId, u64)> {
        match &self.lists[sym as usize] {
            Some(list) => list.clone(),
            None => {
                let mut freqs = DocFreqs::new();
                for v in self.slp.expand(sym) {
                    *freqs.entry(v as DocId).or_insert(0) += 1;
                }
                freqs.into_iter().collect()
            }
        }
    }

    /// Per-document frequencies of `pattern`, using `global` for the
    /// pattern interval.
    pub fn query(&self, global: &RlbwtIndex, pattern: &[u8]) -> Result<DocFreqs> {
        let iv = match global.pattern_interval(pattern)? {
            Some(iv) => iv,
            None => return Ok(DocFreqs::new()),
        };
        let cover = self.slp.maximal_cover(iv.start, iv.end)?;
        let lists: Vec<Vec<(DocId, u64)>> =
            cover.iter().map(|&(sym, _)| self.list_of(sym)).collect();
        Ok(merge_many(&lists))
    }

    /// Rough in-memory footprint, for size reporting.
    pub fn size_bytes(&self) -> usize {
        let lists: usize = self
            .lists
            .iter()
            .flatten()
            .map(|l| l.len() * 12 + 8)
            .sum();
        self.slp.size_bytes() + lists
    }
}

fn merge_two(a: &[(DocId, u64)], b: &[(DocId, u64)]) -> Vec<(DocId, u64)> {
    let mut out = Vec::with_capacity(a.len().max(b.len()));
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                out.push((a[i].0, a[i].1 + b[j].1));
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// k-way merge with a binary min-heap keyed by (doc, list); equal documents
/// from different lists merge by summing their frequencies.
fn merge_many(lists: &[Vec<(DocId, u64)>]) -> DocFreqs {
    let mut heap: BinaryHeap<Reverse<(DocId, usize)>> = BinaryHeap::new();
    let mut cursors = vec![0usize; lists.len()];
    for (k, list) in lists.iter().enumerate() {
        if !list.is_empty() {
            heap.push(Reverse((list[0].0, k)));
        }
    }
    let mut out = DocFreqs::new();
    while let Some(Reverse((doc, k))) = heap.pop() {
        let (d, f) = lists[k][cursors[k]];
        debug_assert_eq!(d, doc);
        *out.entry(doc).or_insert(0) += f;
        cursors[k] += 1;
        if cursors[k] < lists[k].len() {
            heap.push(Reverse((lists[k][cursors[k]].0, k)));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::collection::Collection;
    use crate::rindex::ProviderKind;
    use crate::suffix::{oracle_doc_freq, SuffixStructures};
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn corpus_a() -> Collection {
        Collection::from_docs(vec![b"ata".to_vec(), b"tata".to_vec()]).unwrap()
    }

    #[test]
    fn leaf_and_node_lists() {
        let pdl = PdlIndex::build(&[1, 2, 1], 0);
        let slp = pdl.slp();
        // terminals store singletons
        for sym in 0..slp.symbol_count() as SymbolId {
            if let Some(doc) = slp.terminal_value(sym) {
                assert_eq!(pdl.stored_list(sym).unwrap(), &[(doc as DocId, 1)]);
            }
        }
        // the root censuses the whole expansion [1,2,1]
        assert_eq!(pdl.stored_list(slp.root()).unwrap(), &[(1, 2), (2, 1)]);
    }

    #[test]
    fn stored_lists_census_expansions() {
        let mut rng = StdRng::seed_from_u64(77);
        for _ in 0..10 {
            let n = rng.random_range(1..200);
            let t = rng.random_range(1..6);
            let da: Vec<DocId> = (0..n).map(|_| rng.random_range(1..=t)).collect();
            let pdl = PdlIndex::build(&da, 0);
            for sym in 0..pdl.slp().symbol_count() as SymbolId {
                let mut census = DocFreqs::new();
                for v in pdl.slp().expand(sym) {
                    *census.entry(v as DocId).or_insert(0) += 1;
                }
                let expect: Vec<(DocId, u64)> = census.into_iter().collect();
                assert_eq!(pdl.stored_list(sym).unwrap(), &expect[..]);
                // lists are strictly increasing with positive frequencies
                let list = pdl.stored_list(sym).unwrap();
                assert!(list.windows(2).all(|w| w[0].0 < w[1].0));
                assert!(list.iter().all(|&(_, f)| f >= 1));
            }
        }
    }

    #[test]
    fn query_examples() {
        let coll = corpus_a();
        let s = SuffixStructures::build(&coll);
        let global = RlbwtIndex::build(coll.concat(), ProviderKind::Plain);
        let pdl = PdlIndex::build(s.da(), 0);
        assert_eq!(
            pdl.query(&global, b"ta").unwrap(),
            DocFreqs::from([(1, 1), (2, 2)])
        );
        assert!(pdl.query(&global, b"g").unwrap().is_empty());
        assert_eq!(
            pdl.query(&global, b"a").unwrap(),
            DocFreqs::from([(1, 2), (2, 2)])
        );
    }

    #[test]
    fn query_matches_oracle_with_and_without_sampling() {
        let mut rng = StdRng::seed_from_u64(3);
        for threshold in [0, 4, 1 << 20] {
            for _ in 0..5 {
                let t = rng.random_range(1..5);
                let docs: Vec<Vec<u8>> = (0..t)
                    .map(|_| {
                        let len = rng.random_range(1..80);
                        (0..len).map(|_| b"ab"[rng.random_range(0..2)]).collect()
                    })
                    .collect();
                let coll = Collection::from_docs(docs).unwrap();
                let s = SuffixStructures::build(&coll);
                let global = RlbwtIndex::build(coll.concat(), ProviderKind::Plain);
                let pdl = PdlIndex::build(s.da(), threshold);
                for _ in 0..60 {
                    let len = rng.random_range(1..6);
                    let pattern: Vec<u8> =
                        (0..len).map(|_| b"ab"[rng.random_range(0..2)]).collect();
                    let got = pdl.query(&global, &pattern).unwrap();
                    assert_eq!(got, oracle_doc_freq(&coll, &pattern).unwrap());
                    // sum of frequencies equals the occurrence count
                    let occ = global.count(&pattern).unwrap() as u64;
                    assert_eq!(got.values().sum::<u64>(), occ);
                }
            }
        }
    }

    #[test]
    fn merge_input_bounded_by_cover() {
        let coll = corpus_a();
        let s = SuffixStructures::build(&coll);
        let global = RlbwtIndex::build(coll.concat(), ProviderKind::Plain);
        let pdl = PdlIndex::build(s.da(), 0);
        let iv = global.pattern_interval(b"a").unwrap().unwrap();
        let cover = pdl.slp().maximal_cover(iv.start, iv.end).unwrap();
        assert!(cover.len() <= 2 * pdl.slp().height().max(1));
    }
}
