//! Reference algorithms for correctness cross-checks and benchmarking:
//! distinct-document listing by range-minimum recursion over the
//! previous-same-document array, term frequencies from leftmost/rightmost
//! extremes, wavelet-tree rank counting, and the brute-force locate-and-tally
//! scan.

use std::collections::BTreeMap;

use crate::collection::{Collection, DocId};
use crate::error::{Error, Result};
use crate::rindex::{CollectionRindex, RlbwtIndex, SaInterval};
use crate::succinct::{SparseRmq, WaveletTree};
use crate::suffix::{DocFreqs, SuffixStructures};

/// Plain arrays and range-extremum structures used by the listing
/// baselines: the document array, the previous/next same-document arrays
/// and their min/max structures.
pub struct SadaIndex {
    da: Vec<DocId>,
    /// previous/next same-document arrays live inside their range structures
    rmq_min_prev: SparseRmq,
    rmq_max_next: SparseRmq,
    doc_count: usize,
}

impl SadaIndex {
    pub fn build(structures: &SuffixStructures, doc_count: usize) -> Self {
        Self {
            rmq_min_prev: SparseRmq::new_min_usize(structures.prev_same_doc()),
            rmq_max_next: SparseRmq::new_max_usize(structures.next_same_doc()),
            da: structures.da().to_vec(),
            doc_count,
        }
    }

    pub fn doc_count(&self) -> usize {
        self.doc_count
    }

    pub fn da_at(&self, row: usize) -> DocId {
        self.da[row - 1]
    }

    /// Distinct documents in `[iv.start..iv.end]`, ascending.
    ///
    /// Range-minimum recursion over the previous-same-document array: a
    /// minimum below the original interval start marks the leftmost
    /// occurrence of a new document; the recursion stops where no such
    /// position remains.
    pub fn muthu_list(&self, iv: &SaInterval) -> Result<Vec<DocId>> {
        if iv.start == 0 || iv.start > iv.end || iv.end > self.da.len() {
            return Err(Error::EmptyInterval);
        }
        let mut docs = Vec::new();
        let mut stack = vec![(iv.start, iv.end)];
        while let Some((lo, hi)) = stack.pop() {
            if lo > hi {
                continue;
            }
            let p = self.rmq_min_prev.query(lo, hi).expect("non-empty range");
            if self.rmq_min_prev.value_at(p) as usize >= iv.start {
                continue;
            }
            docs.push(self.da[p - 1]);
            stack.push((lo, p - 1));
            stack.push((p + 1, hi));
        }
        docs.sort_unstable();
        debug_assert!(docs.windows(2).all(|w| w[0] < w[1]), "each doc reported once");
        Ok(docs)
    }

    /// Leftmost occurrence row of each distinct document in the interval.
    ///
    /// Same recursion, but pruned by a reported-documents set instead of the
    /// interval start. Ranges left of a position are processed before ranges
    /// right of it, so a subrange whose minimum belongs to an already
    /// reported document contains no unreported one.
    pub fn leftmost_positions(&self, iv: &SaInterval) -> Result<Vec<(DocId, usize)>> {
        if iv.start == 0 || iv.start > iv.end || iv.end > self.da.len() {
            return Err(Error::EmptyInterval);
        }
        let mut seen = vec![false; self.doc_count + 1];
        let mut out = Vec::new();
        self.leftmost_rec(iv.start, iv.end, &mut seen, &mut out);
        out.sort_unstable();
        Ok(out)
    }

    fn leftmost_rec(
        &self,
        lo: usize,
        hi: usize,
        seen: &mut [bool],
        out: &mut Vec<(DocId, usize)>,
    ) {
        if lo > hi {
            return;
        }
        let p = self.rmq_min_prev.query(lo, hi).expect("non-empty range");
        let doc = self.da[p - 1];
        if seen[doc as usize] {
            return;
        }
        seen[doc as usize] = true;
        out.push((doc, p));
        self.leftmost_rec(lo, p - 1, seen, out);
        self.leftmost_rec(p + 1, hi, seen, out);
    }

    /// Rightmost occurrence row of each distinct document; the mirror of
    /// [`SadaIndex::leftmost_positions`] over the next-same-document array.
    pub fn rightmost_positions(&self, iv: &SaInterval) -> Result<Vec<(DocId, usize)>> {
        if iv.start == 0 || iv.start > iv.end || iv.end > self.da.len() {
            return Err(Error::EmptyInterval);
        }
        let mut seen = vec![false; self.doc_count + 1];
        let mut out = Vec::new();
        self.rightmost_rec(iv.start, iv.end, &mut seen, &mut out);
        out.sort_unstable();
        Ok(out)
    }

    fn rightmost_rec(
        &self,
        lo: usize,
        hi: usize,
        seen: &mut [bool],
        out: &mut Vec<(DocId, usize)>,
    ) {
        if lo > hi {
            return;
        }
        let p = self.rmq_max_next.query(lo, hi).expect("non-empty range");
        let doc = self.da[p - 1];
        if seen[doc as usize] {
            return;
        }
        seen[doc as usize] = true;
        out.push((doc, p));
        self.rightmost_rec(p + 1, hi, seen, out);
        self.rightmost_rec(lo, p - 1, seen, out);
    }

    /// Term frequencies via extreme positions and the per-document indexes.
    pub fn query(
        &self,
        coll: &Collection,
        crx: &CollectionRindex,
        pattern: &[u8],
    ) -> Result<DocFreqs> {
        let iv = match crx.global().pattern_interval(pattern)? {
            Some(iv) => iv,
            None => return Ok(DocFreqs::new()),
        };
        let lefts = self.leftmost_positions(&iv)?;
        let rights: BTreeMap<DocId, usize> = self.rightmost_positions(&iv)?.into_iter().collect();
        debug_assert_eq!(lefts.len(), rights.len());
        let mut out = DocFreqs::new();
        for (doc, lpos) in lefts {
            out.insert(doc, crx.freq_from_extremes(coll, doc, lpos, rights[&doc])?);
        }
        Ok(out)
    }

    pub fn size_bytes(&self) -> usize {
        let levels = if self.da.len() <= 1 {
            1
        } else {
            self.da.len().ilog2() as usize + 1
        };
        self.da.len() * 4 + 2 * self.da.len() * 8 + 2 * self.da.len() * 8 * levels
    }
}

/// Wavelet-tree frequencies: distinct documents from the listing recursion,
/// then two rank queries per document.
pub struct WtIndex {
    lister: SadaIndex,
    wt: WaveletTree,
}

impl WtIndex {
    pub fn build(structures: &SuffixStructures, doc_count: usize) -> Self {
        let wt = WaveletTree::new(structures.da(), doc_count as u32);
        Self {
            lister: SadaIndex::build(structures, doc_count),
            wt,
        }
    }

    pub fn wavelet(&self) -> &WaveletTree {
        &self.wt
    }

    pub fn query(&self, global: &RlbwtIndex, pattern: &[u8]) -> Result<DocFreqs> {
        let iv = match global.pattern_interval(pattern)? {
            Some(iv) => iv,
            None => return Ok(DocFreqs::new()),
        };
        let mut out = DocFreqs::new();
        for doc in self.lister.muthu_list(&iv)? {
            let f = self.wt.rank(doc, iv.end)? - self.wt.rank(doc, iv.start - 1)?;
            out.insert(doc, f as u64);
        }
        Ok(out)
    }

    pub fn size_bytes(&self) -> usize {
        self.lister.size_bytes() + self.wt.size_bytes()
    }
}

/// Brute-force baseline: locate every occurrence and tally per document.
pub fn scan_freq(coll: &Collection, global: &RlbwtIndex, pattern: &[u8]) -> Result<DocFreqs> {
    let iv = match global.pattern_interval(pattern)? {
        Some(iv) => iv,
        None => return Ok(DocFreqs::new()),
    };
    let mut out = DocFreqs::new();
    for pos in global.locate(&iv)? {
        *out.entry(coll.doc_of(pos)?).or_insert(0) += 1;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rindex::ProviderKind;
    use crate::suffix::oracle_doc_freq;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn corpus_a() -> Collection {
        Collection::from_docs(vec![b"ata".to_vec(), b"tata".to_vec()]).unwrap()
    }

    #[test]
    fn muthu_list_examples() {
        let coll = corpus_a();
        let s = SuffixStructures::build(&coll);
        let sada = SadaIndex::build(&s, coll.doc_count());
        let n = coll.total_len();
        // full interval reports every document
        assert_eq!(sada.muthu_list(&SaInterval::new(1, n)).unwrap(), vec![1, 2]);
        // width-1 intervals report exactly one
        for row in 1..=n {
            let got = sada.muthu_list(&SaInterval::new(row, row)).unwrap();
            assert_eq!(got, vec![sada.da_at(row)]);
        }
        assert!(sada.muthu_list(&SaInterval::new(3, 2)).is_err());
    }

    #[test]
    fn listing_and_extremes_match_scans() {
        let mut rng = StdRng::seed_from_u64(40);
        for _ in 0..8 {
            let t = rng.random_range(1..7);
            let docs: Vec<Vec<u8>> = (0..t)
                .map(|_| {
                    let len = rng.random_range(1..60);
                    (0..len).map(|_| b"ab"[rng.random_range(0..2)]).collect()
                })
                .collect();
            let coll = Collection::from_docs(docs).unwrap();
            let s = SuffixStructures::build(&coll);
            let sada = SadaIndex::build(&s, coll.doc_count());
            let n = coll.total_len();
            for _ in 0..60 {
                let lo = rng.random_range(1..=n);
                let hi = rng.random_range(lo..=n);
                let iv = SaInterval::new(lo, hi);
                let mut expect: BTreeMap<DocId, (usize, usize)> = BTreeMap::new();
                for row in lo..=hi {
                    let d = s.da_at(row);
                    let e = expect.entry(d).or_insert((row, row));
                    e.0 = e.0.min(row);
                    e.1 = e.1.max(row);
                }
                let docs: Vec<DocId> = expect.keys().copied().collect();
                assert_eq!(sada.muthu_list(&iv).unwrap(), docs);
                let lefts: Vec<(DocId, usize)> =
                    expect.iter().map(|(&d, &(l, _))| (d, l)).collect();
                let rights: Vec<(DocId, usize)> =
                    expect.iter().map(|(&d, &(_, r))| (d, r)).collect();
                assert_eq!(sada.leftmost_positions(&iv).unwrap(), lefts);
                assert_eq!(sada.rightmost_positions(&iv).unwrap(), rights);
            }
        }
    }

    #[test]
    fn query_examples() {
        let coll = corpus_a();
        let s = SuffixStructures::build(&coll);
        let crx = CollectionRindex::build(&coll, ProviderKind::Plain, true);
        let sada = SadaIndex::build(&s, coll.doc_count());
        let wt = WtIndex::build(&s, coll.doc_count());

        let expect = DocFreqs::from([(1, 1), (2, 2)]);
        assert_eq!(sada.query(&coll, &crx, b"ta").unwrap(), expect);
        assert_eq!(wt.query(crx.global(), b"ta").unwrap(), expect);
        assert_eq!(scan_freq(&coll, crx.global(), b"ta").unwrap(), expect);

        assert!(sada.query(&coll, &crx, b"g").unwrap().is_empty());
        assert!(wt.query(crx.global(), b"g").unwrap().is_empty());
        assert!(scan_freq(&coll, crx.global(), b"g").unwrap().is_empty());
    }

    #[test]
    fn single_document_collection_counts_occurrences() {
        let coll = Collection::from_docs(vec![b"abab".to_vec()]).unwrap();
        let s = SuffixStructures::build(&coll);
        let crx = CollectionRindex::build(&coll, ProviderKind::Plain, true);
        let sada = SadaIndex::build(&s, 1);
        let occ = crx.global().count(b"ab").unwrap() as u64;
        assert_eq!(sada.query(&coll, &crx, b"ab").unwrap(), DocFreqs::from([(1, occ)]));
    }

    #[test]
    fn all_baselines_match_oracle() {
        let mut rng = StdRng::seed_from_u64(41);
        for _ in 0..5 {
            let t = rng.random_range(1..6);
            let docs: Vec<Vec<u8>> = (0..t)
                .map(|_| {
                    let len = rng.random_range(1..70);
                    (0..len).map(|_| b"abc"[rng.random_range(0..3)]).collect()
                })
                .collect();
            let coll = Collection::from_docs(docs).unwrap();
            let s = SuffixStructures::build(&coll);
            let crx = CollectionRindex::build(&coll, ProviderKind::GrammarDiff, true);
            let sada = SadaIndex::build(&s, coll.doc_count());
            let wt = WtIndex::build(&s, coll.doc_count());
            for _ in 0..60 {
                let len = rng.random_range(1..6);
                let pattern: Vec<u8> = (0..len).map(|_| b"abc"[rng.random_range(0..3)]).collect();
                let expect = oracle_doc_freq(&coll, &pattern).unwrap();
                assert_eq!(sada.query(&coll, &crx, &pattern).unwrap(), expect);
                assert_eq!(wt.query(crx.global(), &pattern).unwrap(), expect);
                assert_eq!(scan_freq(&coll, crx.global(), &pattern).unwrap(), expect);
            }
        }
    }
}
