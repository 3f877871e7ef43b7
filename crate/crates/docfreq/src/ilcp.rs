//! Interleaved-LCP indexes: run-length encoding, the double run-length
//! variant that merges consecutive same-document runs keeping the minimum
//! value, and the range-minimum traversal that reports each document's
//! extreme positions in a pattern interval.
//!
//! Positions with interleaved-LCP value below the pattern length are exactly
//! the leftmost occurrences of the distinct documents (rightmost for the
//! right-LCP variant); runs broken by the interval boundaries and merged
//! same-document runs need the special cases handled in `collect_runs`.

use std::collections::BTreeMap;

use crate::collection::{Collection, DocId};
use crate::error::{Error, Result};
use crate::rindex::{CollectionRindex, RlbwtIndex, SaInterval};
use crate::succinct::{RankSelectBitvector, SparseRmq};
use crate::suffix::{DocFreqs, IlcpArrays, SuffixStructures};

/// Which per-document LCP flavor an index interleaves.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    /// Left LCP: value-below-m positions mark leftmost occurrences.
    Left,
    /// Right LCP: value-below-m positions mark rightmost occurrences.
    Right,
}

/// Plain run-length encoding of an array.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RleRuns {
    pub values: Vec<usize>,
    pub lengths: Vec<usize>,
}

impl RleRuns {
    pub fn run_count(&self) -> usize {
        self.values.len()
    }

    pub fn expand(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (v, l) in self.values.iter().zip(&self.lengths) {
            out.extend(std::iter::repeat_n(*v, *l));
        }
        out
    }
}

/// Run-length encode `values` exactly.
pub fn build_rle(values: &[usize]) -> RleRuns {
    let mut runs = RleRuns {
        values: Vec::new(),
        lengths: Vec::new(),
    };
    for &v in values {
        match runs.values.last() {
            Some(&last) if last == v => *runs.lengths.last_mut().unwrap() += 1,
            _ => {
                runs.values.push(v);
                runs.lengths.push(1);
            }
        }
    }
    runs
}

/// One interleaved-LCP index: run values, run-boundary bitvector, per-run
/// same-document flag and a range-minimum structure over the run values.
pub struct IlcpIndex {
    orientation: Orientation,
    starred: bool,
    n: usize,
    values: Vec<usize>,
    /// one bit at the first position of every run
    boundaries: RankSelectBitvector,
    /// run covers rows of a single document
    same_doc: Vec<bool>,
    rmq: SparseRmq,
}

impl IlcpIndex {
    /// `ilcp` is the interleaved array matching `orientation`; `da` is the
    /// document array. `starred` merges consecutive same-document runs,
    /// keeping the minimum as the run value.
    pub fn build(ilcp: &[usize], da: &[DocId], orientation: Orientation, starred: bool) -> Self {
        let n = ilcp.len();
        assert_eq!(n, da.len());
        let rle = build_rle(ilcp);

        // run spans and single-document classification
        let mut spans: Vec<(usize, usize, usize)> = Vec::with_capacity(rle.run_count()); // (value, start, end)
        let mut start = 1usize;
        for (&v, &l) in rle.values.iter().zip(&rle.lengths) {
            spans.push((v, start, start + l - 1));
            start += l;
        }
        let single_doc_of = |s: usize, e: usize| -> Option<DocId> {
            let d = da[s - 1];
            if da[s - 1..e].iter().all(|&x| x == d) {
                Some(d)
            } else {
                None
            }
        };

        let mut values = Vec::new();
        let mut starts = Vec::new();
        let mut same_doc = Vec::new();
        if starred {
            let mut i = 0;
            while i < spans.len() {
                let (v, s, e) = spans[i];
                match single_doc_of(s, e) {
                    None => {
                        values.push(v);
                        starts.push(s);
                        same_doc.push(false);
                        i += 1;
                    }
                    Some(d) => {
                        // greedy maximal merge of same-document runs,
                        // keeping the smallest value
                        let mut min_v = v;
                        let mut j = i;
                        while j + 1 < spans.len() {
                            let (v2, s2, e2) = spans[j + 1];
                            if single_doc_of(s2, e2) == Some(d) {
                                min_v = min_v.min(v2);
                                j += 1;
                            } else {
                                break;
                            }
                        }
                        values.push(min_v);
                        starts.push(s);
                        same_doc.push(true);
                        i = j + 1;
                    }
                }
            }
        } else {
            for &(v, s, e) in &spans {
                values.push(v);
                starts.push(s);
                same_doc.push(single_doc_of(s, e).is_some());
            }
        }

        let boundaries = RankSelectBitvector::from_set_positions(n, &starts);
        let rmq = SparseRmq::new_min_usize(&values);
        Self {
            orientation,
            starred,
            n,
            values,
            boundaries,
            same_doc,
            rmq,
        }
    }

    /// Reassemble an index from its runs.
    pub fn from_parts(
        orientation: Orientation,
        starred: bool,
        values: Vec<usize>,
        lengths: Vec<usize>,
        same_doc: Vec<bool>,
    ) -> Result<Self> {
        if values.is_empty() || values.len() != lengths.len() || values.len() != same_doc.len() {
            return Err(Error::CorruptIndex("inconsistent ILCP run payload".into()));
        }
        let n: usize = lengths.iter().sum();
        let mut starts = Vec::with_capacity(lengths.len());
        let mut pos = 1usize;
        for &l in &lengths {
            if l == 0 {
                return Err(Error::CorruptIndex("zero-length ILCP run".into()));
            }
            starts.push(pos);
            pos += l;
        }
        let boundaries = RankSelectBitvector::from_set_positions(n, &starts);
        let rmq = SparseRmq::new_min_usize(&values);
        Ok(Self {
            orientation,
            starred,
            n,
            values,
            boundaries,
            same_doc,
            rmq,
        })
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn starred(&self) -> bool {
        self.starred
    }

    /// Number of runs (rho, or rho-star when merged).
    pub fn run_count(&self) -> usize {
        self.values.len()
    }

    pub fn run_value(&self, j: usize) -> usize {
        self.values[j - 1]
    }

    pub fn run_same_doc(&self, j: usize) -> bool {
        self.same_doc[j - 1]
    }

    /// Positions covered by run `j` (1-based, inclusive).
    pub fn run_span(&self, j: usize) -> (usize, usize) {
        let start = self.boundaries.select1_raw(j);
        let end = if j == self.run_count() {
            self.n
        } else {
            self.boundaries.select1_raw(j + 1) - 1
        };
        (start, end)
    }

    pub fn run_values(&self) -> &[usize] {
        &self.values
    }

    pub fn run_lengths(&self) -> Vec<usize> {
        (1..=self.run_count())
            .map(|j| {
                let (s, e) = self.run_span(j);
                e - s + 1
            })
            .collect()
    }

    pub fn same_doc_flags(&self) -> &[bool] {
        &self.same_doc
    }

    /// Runs with value below `m` intersecting `[iv.start..iv.end]`, found by
    /// range-minimum recursion over the run values.
    fn qualifying_runs(&self, iv: &SaInterval, m: usize) -> Vec<usize> {
        let first = self.boundaries.rank1_raw(iv.start);
        let last = self.boundaries.rank1_raw(iv.end);
        let mut out = Vec::new();
        let mut stack = vec![(first, last)];
        while let Some((lo, hi)) = stack.pop() {
            if lo > hi {
                continue;
            }
            let p = self.rmq.query(lo, hi).expect("non-empty run range");
            if self.values[p - 1] >= m {
                continue;
            }
            out.push(p);
            if p > lo {
                stack.push((lo, p - 1));
            }
            if p < hi {
                stack.push((p + 1, hi));
            }
        }
        out
    }

    /// `(doc, extreme position)` for every document present in the interval
    /// of a pattern of length `m`. Leftmost positions for the left variant,
    /// rightmost for the right variant.
    ///
    /// For merged same-document runs only the clipped span boundary can be
    /// the extreme position: a run fully inside contributes its head (tail
    /// for the right variant), a run broken by the interval boundary
    /// contributes the boundary itself, and a document found in several runs
    /// keeps its extreme-most candidate.
    pub fn distinct_extremes(
        &self,
        coll: &Collection,
        global: &RlbwtIndex,
        iv: &SaInterval,
        m: usize,
    ) -> Result<Vec<(DocId, usize)>> {
        if iv.start == 0 || iv.start > iv.end || iv.end > self.n {
            return Err(Error::EmptyInterval);
        }
        let doc_at = |row: usize| -> Result<DocId> {
            coll.doc_of(global.sa_access(row)?)
        };
        let mut best: BTreeMap<DocId, usize> = BTreeMap::new();
        let mut offer = |doc: DocId, pos: usize, leftmost: bool| {
            best.entry(doc)
                .and_modify(|cur| {
                    if (leftmost && pos < *cur) || (!leftmost && pos > *cur) {
                        *cur = pos;
                    }
                })
                .or_insert(pos);
        };
        let leftmost = self.orientation == Orientation::Left;
        for j in self.qualifying_runs(iv, m) {
            let (s, e) = self.run_span(j);
            let a = s.max(iv.start);
            let b = e.min(iv.end);
            if self.starred && self.same_doc[j - 1] {
                let pos = if leftmost { a } else { b };
                offer(doc_at(pos)?, pos, leftmost);
            } else {
                // an unmerged run is a plain ILCP run: every clipped position
                // marks a distinct document's extreme occurrence
                for pos in a..=b {
                    offer(doc_at(pos)?, pos, leftmost);
                }
            }
        }
        Ok(best.into_iter().collect())
    }

    /// Rough in-memory footprint, for size reporting.
    pub fn size_bytes(&self) -> usize {
        self.values.len() * 8
            + self.n / 8
            + self.same_doc.len() / 8
            + self.values.len() * 8 * self.rmq_levels()
    }

    fn rmq_levels(&self) -> usize {
        if self.values.len() <= 1 {
            1
        } else {
            self.values.len().ilog2() as usize + 1
        }
    }
}

/// Both orientations of an interleaved-LCP index, answering full
/// document-listing-with-frequencies queries.
pub struct IlcpPair {
    left: IlcpIndex,
    right: IlcpIndex,
}

impl IlcpPair {
    pub fn build(structures: &SuffixStructures, arrays: &IlcpArrays, starred: bool) -> Self {
        let da = structures.da();
        Self {
            left: IlcpIndex::build(arrays.ilcp(), da, Orientation::Left, starred),
            right: IlcpIndex::build(arrays.rilcp(), da, Orientation::Right, starred),
        }
    }

    pub fn from_parts(left: IlcpIndex, right: IlcpIndex) -> Self {
        assert_eq!(left.orientation(), Orientation::Left);
        assert_eq!(right.orientation(), Orientation::Right);
        Self { left, right }
    }

    pub fn left(&self) -> &IlcpIndex {
        &self.left
    }

    pub fn right(&self) -> &IlcpIndex {
        &self.right
    }

    pub fn starred(&self) -> bool {
        self.left.starred()
    }

    /// Leftmost occurrences of the distinct documents in the interval.
    pub fn distinct_leftmost(
        &self,
        coll: &Collection,
        global: &RlbwtIndex,
        iv: &SaInterval,
        m: usize,
    ) -> Result<Vec<(DocId, usize)>> {
        self.left.distinct_extremes(coll, global, iv, m)
    }

    /// Rightmost occurrences of the distinct documents in the interval.
    pub fn distinct_rightmost(
        &self,
        coll: &Collection,
        global: &RlbwtIndex,
        iv: &SaInterval,
        m: usize,
    ) -> Result<Vec<(DocId, usize)>> {
        self.right.distinct_extremes(coll, global, iv, m)
    }

    /// Per-document frequencies: both extreme rows per document, mapped
    /// through the per-document indexes.
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
        let m = pattern.len();
        let lefts = self.distinct_leftmost(coll, crx.global(), &iv, m)?;
        let rights: BTreeMap<DocId, usize> = self
            .distinct_rightmost(coll, crx.global(), &iv, m)?
            .into_iter()
            .collect();
        debug_assert_eq!(
            lefts.iter().map(|&(d, _)| d).collect::<Vec<_>>(),
            rights.keys().copied().collect::<Vec<_>>(),
            "left and right variants must report the same documents"
        );
        let mut out = DocFreqs::new();
        for (doc, lpos) in lefts {
            let rpos = rights[&doc];
            out.insert(doc, crx.freq_from_extremes(coll, doc, lpos, rpos)?);
        }
        Ok(out)
    }

    pub fn size_bytes(&self) -> usize {
        self.left.size_bytes() + self.right.size_bytes()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::collection::Collection;
    use crate::rindex::ProviderKind;
    use crate::suffix::{build_ilcp, oracle_doc_freq};
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn corpus_a() -> Collection {
        Collection::from_docs(vec![b"ata".to_vec(), b"tata".to_vec()]).unwrap()
    }

    #[test]
    fn rle_examples() {
        let runs = build_rle(&[0, 2, 3, 0, 1]);
        assert_eq!(runs.run_count(), 5);
        assert_eq!(runs.values, vec![0, 2, 3, 0, 1]);

        let runs = build_rle(&[1, 1, 1]);
        assert_eq!(runs.run_count(), 1);
        assert_eq!(runs.lengths, vec![3]);

        let mut rng = StdRng::seed_from_u64(2);
        for _ in 0..20 {
            let n = rng.random_range(0..100);
            let a: Vec<usize> = (0..n).map(|_| rng.random_range(0..4)).collect();
            assert_eq!(build_rle(&a).expand(), a);
        }
    }

    #[test]
    fn double_rle_merges_same_document_runs() {
        let ilcp = [0usize, 2, 3, 0, 1];
        let da: Vec<DocId> = vec![1, 1, 1, 2, 2];
        let ix = IlcpIndex::build(&ilcp, &da, Orientation::Left, true);
        assert_eq!(ix.run_values(), &[0, 0]);
        assert_eq!(ix.run_lengths(), vec![3, 2]);
        assert_eq!(ix.same_doc_flags(), &[true, true]);
    }

    #[test]
    fn double_rle_without_mergeable_runs() {
        // adjacent positions always switch documents: nothing merges
        let ilcp = [0usize, 1, 0, 1];
        let da: Vec<DocId> = vec![1, 2, 1, 2];
        let plain = IlcpIndex::build(&ilcp, &da, Orientation::Left, false);
        let starred = IlcpIndex::build(&ilcp, &da, Orientation::Left, true);
        assert_eq!(plain.run_values(), starred.run_values());
        assert_eq!(plain.run_lengths(), starred.run_lengths());
    }

    /// Naive two-pass oracle: run-length encode, then greedily group
    /// consecutive runs covering one document.
    fn naive_double_rle(ilcp: &[usize], da: &[DocId]) -> (Vec<usize>, Vec<usize>) {
        let rle = build_rle(ilcp);
        let mut spans = Vec::new();
        let mut s = 0usize;
        for (&v, &l) in rle.values.iter().zip(&rle.lengths) {
            spans.push((v, s, s + l));
            s += l;
        }
        let one_doc = |s: usize, e: usize| -> Option<DocId> {
            let d = da[s];
            da[s..e].iter().all(|&x| x == d).then_some(d)
        };
        let mut values = Vec::new();
        let mut lengths = Vec::new();
        let mut i = 0;
        while i < spans.len() {
            let (mut v, s, mut e) = spans[i];
            if let Some(d) = one_doc(s, e) {
                while i + 1 < spans.len() && one_doc(spans[i + 1].1, spans[i + 1].2) == Some(d) {
                    i += 1;
                    v = v.min(spans[i].0);
                    e = spans[i].2;
                }
            }
            values.push(v);
            lengths.push(e - s);
            i += 1;
        }
        (values, lengths)
    }

    #[test]
    fn double_rle_single_document_collection() {
        let coll = Collection::from_docs(vec![b"abracadabra".to_vec()]).unwrap();
        let s = SuffixStructures::build(&coll);
        let arrays = build_ilcp(&coll, &s);
        let ix = IlcpIndex::build(arrays.ilcp(), s.da(), Orientation::Left, true);
        let (values, lengths) = naive_double_rle(arrays.ilcp(), s.da());
        assert_eq!(ix.run_values(), &values[..]);
        assert_eq!(ix.run_lengths(), lengths);
        // a single document merges everything into one run
        assert_eq!(ix.run_count(), 1);
        assert_eq!(ix.run_values(), &[0]);
    }

    #[test]
    fn rho_star_never_exceeds_rho() {
        let mut rng = StdRng::seed_from_u64(31);
        for _ in 0..10 {
            let t = rng.random_range(1..5);
            let docs: Vec<Vec<u8>> = (0..t)
                .map(|_| {
                    let len = rng.random_range(1..60);
                    (0..len).map(|_| b"ab"[rng.random_range(0..2)]).collect()
                })
                .collect();
            let coll = Collection::from_docs(docs).unwrap();
            let s = SuffixStructures::build(&coll);
            let arrays = build_ilcp(&coll, &s);
            let plain = IlcpIndex::build(arrays.ilcp(), s.da(), Orientation::Left, false);
            let starred = IlcpIndex::build(arrays.ilcp(), s.da(), Orientation::Left, true);
            assert!(starred.run_count() <= plain.run_count());
            let (values, lengths) = naive_double_rle(arrays.ilcp(), s.da());
            assert_eq!(starred.run_values(), &values[..]);
            assert_eq!(starred.run_lengths(), lengths);
        }
    }

    fn scan_extremes(
        s: &SuffixStructures,
        iv: &SaInterval,
        leftmost: bool,
    ) -> Vec<(DocId, usize)> {
        let mut best: BTreeMap<DocId, usize> = BTreeMap::new();
        for row in iv.start..=iv.end {
            let d = s.da_at(row);
            best.entry(d)
                .and_modify(|cur| {
                    if (leftmost && row < *cur) || (!leftmost && row > *cur) {
                        *cur = row;
                    }
                })
                .or_insert(row);
        }
        best.into_iter().collect()
    }

    #[test]
    fn distinct_extremes_examples() {
        let coll = corpus_a();
        let s = SuffixStructures::build(&coll);
        let arrays = build_ilcp(&coll, &s);
        let global = RlbwtIndex::build(coll.concat(), ProviderKind::Plain);
        for starred in [false, true] {
            let pair = IlcpPair::build(&s, &arrays, starred);
            for pattern in [b"ta".as_slice(), b"a"] {
                let iv = global.pattern_interval(pattern).unwrap().unwrap();
                let got = pair
                    .distinct_leftmost(&coll, &global, &iv, pattern.len())
                    .unwrap();
                assert_eq!(got, scan_extremes(&s, &iv, true), "pattern {pattern:?}");
                let got = pair
                    .distinct_rightmost(&coll, &global, &iv, pattern.len())
                    .unwrap();
                assert_eq!(got, scan_extremes(&s, &iv, false), "pattern {pattern:?}");
            }
            // width-1 interval reports exactly one document
            let iv = SaInterval::new(3, 3);
            let got = pair.distinct_leftmost(&coll, &global, &iv, 1).unwrap();
            assert_eq!(got.len(), 1);
            assert_eq!(got[0].1, 3);
        }
    }

    #[test]
    fn query_examples() {
        let coll = corpus_a();
        let s = SuffixStructures::build(&coll);
        let arrays = build_ilcp(&coll, &s);
        let crx = CollectionRindex::build(&coll, ProviderKind::Plain, true);
        for starred in [false, true] {
            let pair = IlcpPair::build(&s, &arrays, starred);
            assert_eq!(
                pair.query(&coll, &crx, b"ta").unwrap(),
                DocFreqs::from([(1, 1), (2, 2)])
            );
            assert_eq!(
                pair.query(&coll, &crx, b"a").unwrap(),
                DocFreqs::from([(1, 2), (2, 2)])
            );
            assert!(pair.query(&coll, &crx, b"g").unwrap().is_empty());
        }
    }

    #[test]
    fn extremes_match_scan_on_random_collections() {
        let mut rng = StdRng::seed_from_u64(13);
        for _ in 0..6 {
            let t = rng.random_range(1..6);
            let docs: Vec<Vec<u8>> = (0..t)
                .map(|_| {
                    let len = rng.random_range(1..70);
                    (0..len).map(|_| b"ab"[rng.random_range(0..2)]).collect()
                })
                .collect();
            let coll = Collection::from_docs(docs).unwrap();
            let s = SuffixStructures::build(&coll);
            let arrays = build_ilcp(&coll, &s);
            let crx = CollectionRindex::build(&coll, ProviderKind::Plain, true);
            let plain = IlcpPair::build(&s, &arrays, false);
            let starred = IlcpPair::build(&s, &arrays, true);
            for _ in 0..60 {
                let len = rng.random_range(1..6);
                let pattern: Vec<u8> = (0..len).map(|_| b"ab"[rng.random_range(0..2)]).collect();
                let Some(iv) = crx.global().pattern_interval(&pattern).unwrap() else {
                    continue;
                };
                let expect_l = scan_extremes(&s, &iv, true);
                let expect_r = scan_extremes(&s, &iv, false);
                for pair in [&plain, &starred] {
                    assert_eq!(
                        pair.distinct_leftmost(&coll, crx.global(), &iv, len).unwrap(),
                        expect_l,
                        "leftmost, starred={} pattern={pattern:?}",
                        pair.starred()
                    );
                    assert_eq!(
                        pair.distinct_rightmost(&coll, crx.global(), &iv, len).unwrap(),
                        expect_r,
                        "rightmost, starred={} pattern={pattern:?}",
                        pair.starred()
                    );
                    assert_eq!(
                        pair.query(&coll, &crx, &pattern).unwrap(),
                        oracle_doc_freq(&coll, &pattern).unwrap()
                    );
                }
            }
        }
    }
}
