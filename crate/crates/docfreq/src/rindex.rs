//! Run-length BWT full-text index: backward-search counting, locating via
//! run-boundary samples, and random access to SA/ISA through a pluggable
//! provider (plain arrays or grammar-compressed differential arrays).
//!
//! One index is built for the whole concatenation and, when frequencies are
//! mapped through per-document suffix arrays, one for every document.

use crate::collection::{Collection, DocId};
use crate::error::{Error, Result};
use crate::grammar::{BalancedSlp, SymbolId};
use crate::succinct::RankSelectBitvector;
use crate::suffix::{validate_pattern, TextSuffixes};

/// Inclusive interval of suffix-array rows (1-based).
///
/// Intervals produced by backward search carry the SA value of their last
/// row (the toehold), which seeds sample-based locating.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SaInterval {
    pub start: usize,
    pub end: usize,
    sa_at_end: Option<usize>,
}

impl SaInterval {
    pub fn new(start: usize, end: usize) -> Self {
        Self {
            start,
            end,
            sa_at_end: None,
        }
    }

    pub fn width(&self) -> usize {
        self.end - self.start + 1
    }
}

/// How SA/ISA random access is answered.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProviderKind {
    /// Full plain arrays; the oracle and test fixture.
    Plain,
    /// Grammar-compressed differential SA and ISA.
    GrammarDiff,
}

/// Grammar-compressed differential array: stores `d[i] = a[i] - a[i-1]`
/// as a balanced SLP plus per-symbol expansion sums, so `a[i]` is the
/// prefix sum of `d[1..=i]`, recovered in one root-to-leaf descent.
#[derive(Debug, Clone)]
pub struct DiffGrammar {
    slp: BalancedSlp,
    sums: Vec<i64>,
}

impl DiffGrammar {
    pub fn build(values: &[usize]) -> Self {
        let mut diffs = Vec::with_capacity(values.len());
        let mut prev = 0i64;
        for &v in values {
            diffs.push(v as i64 - prev);
            prev = v as i64;
        }
        let slp = BalancedSlp::build(&diffs).expect("non-empty array");
        Self::from_slp(slp)
    }

    pub fn from_slp(slp: BalancedSlp) -> Self {
        let mut sums = vec![0i64; slp.symbol_count()];
        for sym in 0..slp.symbol_count() as SymbolId {
            sums[sym as usize] = match slp.children(sym) {
                None => slp.terminal_value(sym).unwrap(),
                Some((a, b)) => sums[a as usize] + sums[b as usize],
            };
        }
        Self { slp, sums }
    }

    pub fn len(&self) -> usize {
        self.slp.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn slp(&self) -> &BalancedSlp {
        &self.slp
    }

    /// Original array value at 1-based index `i`.
    pub fn access(&self, i: usize) -> Result<usize> {
        if i == 0 || i > self.slp.len() {
            return Err(Error::OutOfRange {
                what: "array index",
                value: i,
                limit: self.slp.len(),
            });
        }
        let mut acc = 0i64;
        let mut sym = self.slp.root();
        let mut remaining = i;
        loop {
            match self.slp.children(sym) {
                None => {
                    debug_assert_eq!(remaining, 1);
                    acc += self.slp.terminal_value(sym).unwrap();
                    debug_assert!(acc >= 0);
                    return Ok(acc as usize);
                }
                Some((a, b)) => {
                    let left_len = self.slp.expansion_len(a);
                    if remaining > left_len {
                        acc += self.sums[a as usize];
                        remaining -= left_len;
                        sym = b;
                    } else {
                        sym = a;
                    }
                }
            }
        }
    }

    pub fn size_bytes(&self) -> usize {
        self.slp.size_bytes() + self.sums.len() * 8
    }
}

enum SaProvider {
    Plain { sa: Vec<usize>, isa: Vec<usize> },
    GrammarDiff { sa: DiffGrammar, isa: DiffGrammar },
}

/// Borrowed view of a provider's payload, for serialization.
pub enum ProviderView<'a> {
    Plain { sa: &'a [usize], isa: &'a [usize] },
    GrammarDiff { sa: &'a BalancedSlp, isa: &'a BalancedSlp },
}

/// Owned provider payload, for deserialization.
pub enum ProviderParts {
    Plain { sa: Vec<usize>, isa: Vec<usize> },
    GrammarDiff { sa: BalancedSlp, isa: BalancedSlp },
}

struct Run {
    sym: u8,
    len: usize,
    /// SA values at the first and last row of the run.
    sa_first: usize,
    sa_last: usize,
}

/// Run-length BWT index of one sentinel-terminated text.
pub struct RlbwtIndex {
    n: usize,
    runs: Vec<Run>,
    /// one bit at the first BWT row of every run
    run_starts: RankSelectBitvector,
    /// c_table[c] = number of text symbols smaller than c
    c_table: Vec<usize>,
    /// per symbol: indices of its runs, and cumulative run lengths
    sym_runs: Vec<Vec<u32>>,
    sym_cum: Vec<Vec<usize>>,
    /// (SA[first row of run k], SA[last row of run k-1]), sorted by position;
    /// evaluates phi(p) = SA[ISA[p] - 1] by predecessor search
    phi_anchors: Vec<(usize, usize)>,
    provider: SaProvider,
}

impl RlbwtIndex {
    /// Build over `text`, which must end with its unique smallest symbol.
    pub fn build(text: &[u8], kind: ProviderKind) -> Self {
        let ts = TextSuffixes::build(text);
        Self::build_from_suffixes(text, &ts, kind)
    }

    /// Build when the plain suffix structures are already available.
    pub fn build_from_suffixes(text: &[u8], ts: &TextSuffixes, kind: ProviderKind) -> Self {
        let n = text.len();
        assert_eq!(ts.len(), n);

        let bwt_at = |row: usize| -> u8 {
            let p = ts.sa_at(row);
            if p == 1 {
                text[n - 1]
            } else {
                text[p - 2]
            }
        };

        let mut runs: Vec<Run> = Vec::new();
        let mut start_rows = Vec::new();
        for row in 1..=n {
            let c = bwt_at(row);
            match runs.last_mut() {
                Some(run) if run.sym == c => {
                    run.len += 1;
                    run.sa_last = ts.sa_at(row);
                }
                _ => {
                    start_rows.push(row);
                    runs.push(Run {
                        sym: c,
                        len: 1,
                        sa_first: ts.sa_at(row),
                        sa_last: ts.sa_at(row),
                    });
                }
            }
        }
        let run_starts = RankSelectBitvector::from_set_positions(n, &start_rows);

        let mut counts = vec![0usize; 256];
        for &b in text {
            counts[b as usize] += 1;
        }
        let mut c_table = vec![0usize; 257];
        for c in 0..256 {
            c_table[c + 1] = c_table[c] + counts[c];
        }

        let mut sym_runs: Vec<Vec<u32>> = vec![Vec::new(); 256];
        let mut sym_cum: Vec<Vec<usize>> = vec![vec![0]; 256];
        for (k, run) in runs.iter().enumerate() {
            let c = run.sym as usize;
            sym_runs[c].push(k as u32);
            let prev = *sym_cum[c].last().unwrap();
            sym_cum[c].push(prev + run.len);
        }

        let mut phi_anchors: Vec<(usize, usize)> = runs
            .windows(2)
            .map(|w| (w[1].sa_first, w[0].sa_last))
            .collect();
        phi_anchors.sort_unstable();

        let provider = match kind {
            ProviderKind::Plain => SaProvider::Plain {
                sa: ts.sa().to_vec(),
                isa: ts.isa().to_vec(),
            },
            ProviderKind::GrammarDiff => SaProvider::GrammarDiff {
                sa: DiffGrammar::build(ts.sa()),
                isa: DiffGrammar::build(ts.isa()),
            },
        };

        Self {
            n,
            runs,
            run_starts,
            c_table,
            sym_runs,
            sym_cum,
            phi_anchors,
            provider,
        }
    }

    /// Reassemble an index from runs with their samples and a provider
    /// payload. Everything else is derived.
    pub fn from_parts(
        n: usize,
        runs: Vec<(u8, usize, usize, usize)>,
        provider: ProviderParts,
    ) -> Result<Self> {
        if n == 0 || runs.is_empty() {
            return Err(Error::CorruptIndex("empty r-index payload".into()));
        }
        let total: usize = runs.iter().map(|&(_, len, _, _)| len).sum();
        if total != n {
            return Err(Error::CorruptIndex(format!(
                "run lengths sum to {total}, text length is {n}"
            )));
        }
        if runs.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::CorruptIndex("adjacent runs share a symbol".into()));
        }
        let provider = match provider {
            ProviderParts::Plain { sa, isa } => {
                if sa.len() != n || isa.len() != n {
                    return Err(Error::CorruptIndex("provider arrays mismatch text".into()));
                }
                SaProvider::Plain { sa, isa }
            }
            ProviderParts::GrammarDiff { sa, isa } => {
                if sa.len() != n || isa.len() != n {
                    return Err(Error::CorruptIndex("provider grammars mismatch text".into()));
                }
                SaProvider::GrammarDiff {
                    sa: DiffGrammar::from_slp(sa),
                    isa: DiffGrammar::from_slp(isa),
                }
            }
        };

        let runs: Vec<Run> = runs
            .into_iter()
            .map(|(sym, len, sa_first, sa_last)| Run {
                sym,
                len,
                sa_first,
                sa_last,
            })
            .collect();
        let mut start_rows = Vec::with_capacity(runs.len());
        let mut row = 1usize;
        for run in &runs {
            start_rows.push(row);
            row += run.len;
        }
        let run_starts = RankSelectBitvector::from_set_positions(n, &start_rows);

        let mut c_table = vec![0usize; 257];
        for run in &runs {
            c_table[run.sym as usize + 1] += run.len;
        }
        for c in 0..256 {
            c_table[c + 1] += c_table[c];
        }

        let mut sym_runs: Vec<Vec<u32>> = vec![Vec::new(); 256];
        let mut sym_cum: Vec<Vec<usize>> = vec![vec![0]; 256];
        for (k, run) in runs.iter().enumerate() {
            let c = run.sym as usize;
            sym_runs[c].push(k as u32);
            let prev = *sym_cum[c].last().unwrap();
            sym_cum[c].push(prev + run.len);
        }

        let mut phi_anchors: Vec<(usize, usize)> = runs
            .windows(2)
            .map(|w| (w[1].sa_first, w[0].sa_last))
            .collect();
        phi_anchors.sort_unstable();

        Ok(Self {
            n,
            runs,
            run_starts,
            c_table,
            sym_runs,
            sym_cum,
            phi_anchors,
            provider,
        })
    }

    /// Borrowed provider payload.
    pub fn provider_view(&self) -> ProviderView<'_> {
        match &self.provider {
            SaProvider::Plain { sa, isa } => ProviderView::Plain { sa, isa },
            SaProvider::GrammarDiff { sa, isa } => ProviderView::GrammarDiff {
                sa: sa.slp(),
                isa: isa.slp(),
            },
        }
    }

    /// Indexed text length.
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Number of BWT runs (the r statistic).
    pub fn run_count(&self) -> usize {
        self.runs.len()
    }

    pub fn provider_kind(&self) -> ProviderKind {
        match self.provider {
            SaProvider::Plain { .. } => ProviderKind::Plain,
            SaProvider::GrammarDiff { .. } => ProviderKind::GrammarDiff,
        }
    }

    /// Runs as `(symbol, length, sa_first, sa_last)`.
    pub fn run_parts(&self, k: usize) -> (u8, usize, usize, usize) {
        let r = &self.runs[k];
        (r.sym, r.len, r.sa_first, r.sa_last)
    }

    fn run_of(&self, row: usize) -> usize {
        self.run_starts.rank1_raw(row) - 1
    }

    fn run_start_row(&self, run_idx: usize) -> usize {
        self.run_starts.select1_raw(run_idx + 1)
    }

    /// BWT symbol at a row.
    pub fn bwt_at(&self, row: usize) -> u8 {
        self.runs[self.run_of(row)].sym
    }

    /// Occurrences of `c` in BWT rows `1..=i`.
    fn rank_sym(&self, c: u8, i: usize) -> usize {
        if i == 0 {
            return 0;
        }
        let run_idx = self.run_of(i);
        let c = c as usize;
        let pos = self.sym_runs[c].partition_point(|&k| (k as usize) < run_idx);
        let mut total = self.sym_cum[c][pos];
        let run = &self.runs[run_idx];
        if run.sym as usize == c {
            total += i - self.run_start_row(run_idx) + 1;
        }
        total
    }

    /// Row of the j-th occurrence of `c` in the BWT.
    fn select_sym(&self, c: u8, j: usize) -> usize {
        let c = c as usize;
        debug_assert!(j >= 1 && j <= *self.sym_cum[c].last().unwrap());
        let pos = self.sym_cum[c].partition_point(|&cum| cum < j);
        let run_idx = self.sym_runs[c][pos - 1] as usize;
        self.run_start_row(run_idx) + (j - self.sym_cum[c][pos - 1]) - 1
    }

    /// LF mapping: the row of the suffix starting one position earlier.
    pub fn lf(&self, row: usize) -> usize {
        let c = self.bwt_at(row);
        self.c_table[c as usize] + self.rank_sym(c, row)
    }

    /// The interval of all rows, seeded with the stored last sample.
    pub fn full_interval(&self) -> SaInterval {
        SaInterval {
            start: 1,
            end: self.n,
            sa_at_end: Some(self.runs.last().unwrap().sa_last),
        }
    }

    /// One backward-search step: the interval of `c` followed by the current
    /// match. `None` when the extended pattern does not occur.
    pub fn extend_backward(&self, iv: &SaInterval, c: u8) -> Option<SaInterval> {
        let before = self.rank_sym(c, iv.start - 1);
        let through = self.rank_sym(c, iv.end);
        if before >= through {
            return None;
        }
        let sa_at_end = {
            let last_c_row = self.select_sym(c, through);
            debug_assert!(last_c_row >= iv.start && last_c_row <= iv.end);
            if last_c_row == iv.end {
                iv.sa_at_end.map(|v| v - 1)
            } else {
                // the next row holds a different symbol, so this row ends a
                // run and carries a sample
                let run = &self.runs[self.run_of(last_c_row)];
                debug_assert_eq!(run.sym, c);
                Some(run.sa_last - 1)
            }
        };
        Some(SaInterval {
            start: self.c_table[c as usize] + before + 1,
            end: self.c_table[c as usize] + through,
            sa_at_end,
        })
    }

    /// Maximal SA interval of suffixes prefixed by `pattern`; `None` when the
    /// pattern does not occur. O(m log r).
    pub fn pattern_interval(&self, pattern: &[u8]) -> Result<Option<SaInterval>> {
        validate_pattern(pattern)?;
        let mut iv = self.full_interval();
        for &c in pattern.iter().rev() {
            match self.extend_backward(&iv, c) {
                Some(next) => iv = next,
                None => return Ok(None),
            }
        }
        Ok(Some(iv))
    }

    /// Number of occurrences of `pattern`.
    pub fn count(&self, pattern: &[u8]) -> Result<usize> {
        Ok(self.pattern_interval(pattern)?.map_or(0, |iv| iv.width()))
    }

    /// phi(p) = SA[ISA[p] - 1], answered from the run-boundary samples by
    /// predecessor search. Undefined for the position at SA row 1.
    fn phi(&self, p: usize) -> usize {
        let idx = self.phi_anchors.partition_point(|&(pos, _)| pos <= p);
        debug_assert!(idx > 0, "phi predecessor must exist");
        let (anchor, prev) = self.phi_anchors[idx - 1];
        prev + (p - anchor)
    }

    /// `SA[start..=end]` in interval order. Walks phi from the toehold when
    /// the interval came from backward search, otherwise seeds from the
    /// access provider.
    pub fn locate(&self, iv: &SaInterval) -> Result<Vec<usize>> {
        if iv.start == 0 || iv.start > iv.end || iv.end > self.n {
            return Err(Error::OutOfRange {
                what: "sa interval end",
                value: iv.end,
                limit: self.n,
            });
        }
        let mut cur = match iv.sa_at_end {
            Some(v) => v,
            None => self.sa_access(iv.end)?,
        };
        let mut out = Vec::with_capacity(iv.width());
        out.push(cur);
        for _ in 1..iv.width() {
            cur = self.phi(cur);
            out.push(cur);
        }
        out.reverse();
        Ok(out)
    }

    /// SA value at `row` via the access provider.
    pub fn sa_access(&self, row: usize) -> Result<usize> {
        if row == 0 || row > self.n {
            return Err(Error::OutOfRange {
                what: "sa row",
                value: row,
                limit: self.n,
            });
        }
        match &self.provider {
            SaProvider::Plain { sa, .. } => Ok(sa[row - 1]),
            SaProvider::GrammarDiff { sa, .. } => sa.access(row),
        }
    }

    /// ISA value at text position `p` via the access provider.
    pub fn isa_access(&self, p: usize) -> Result<usize> {
        if p == 0 || p > self.n {
            return Err(Error::OutOfRange {
                what: "text position",
                value: p,
                limit: self.n,
            });
        }
        match &self.provider {
            SaProvider::Plain { isa, .. } => Ok(isa[p - 1]),
            SaProvider::GrammarDiff { isa, .. } => isa.access(p),
        }
    }

    /// Reconstruct the indexed text by walking the LF mapping.
    pub fn invert(&self) -> Vec<u8> {
        let n = self.n;
        let mut out = vec![0u8; n];
        let mut row = 1;
        for k in 1..=n {
            let c = self.bwt_at(row);
            let pos = if k == n { n } else { n - k };
            out[pos - 1] = c;
            row = self.lf(row);
        }
        out
    }

    /// Rough in-memory footprint, for size reporting.
    pub fn size_bytes(&self) -> usize {
        let runs = self.runs.len() * (1 + 3 * 8);
        let scaffolding = self.n / 8 + self.phi_anchors.len() * 16 + 257 * 8;
        let provider = match &self.provider {
            SaProvider::Plain { sa, isa } => (sa.len() + isa.len()) * 8,
            SaProvider::GrammarDiff { sa, isa } => sa.size_bytes() + isa.size_bytes(),
        };
        runs + scaffolding + provider
    }
}

/// The r-indexes of a collection: one over the concatenation and, when
/// frequency mapping is needed, one per document.
pub struct CollectionRindex {
    global: RlbwtIndex,
    per_doc: Vec<RlbwtIndex>,
}

impl CollectionRindex {
    pub fn build(coll: &Collection, kind: ProviderKind, with_doc_indexes: bool) -> Self {
        let global = RlbwtIndex::build(coll.concat(), kind);
        Self::with_global(coll, global, kind, with_doc_indexes)
    }

    /// Reuse an already-built global index.
    pub fn with_global(
        coll: &Collection,
        global: RlbwtIndex,
        kind: ProviderKind,
        with_doc_indexes: bool,
    ) -> Self {
        let per_doc = if with_doc_indexes {
            (1..=coll.doc_count() as DocId)
                .map(|d| RlbwtIndex::build(&coll.doc_text(d), kind))
                .collect()
        } else {
            Vec::new()
        };
        Self { global, per_doc }
    }

    pub fn from_parts(global: RlbwtIndex, per_doc: Vec<RlbwtIndex>) -> Self {
        Self { global, per_doc }
    }

    pub fn global(&self) -> &RlbwtIndex {
        &self.global
    }

    pub fn has_doc_indexes(&self) -> bool {
        !self.per_doc.is_empty()
    }

    pub fn doc_index(&self, doc: DocId) -> &RlbwtIndex {
        &self.per_doc[doc as usize - 1]
    }

    pub fn doc_indexes(&self) -> &[RlbwtIndex] {
        &self.per_doc
    }

    /// Sum of per-document run counts (the R statistic).
    pub fn doc_run_total(&self) -> usize {
        self.per_doc.iter().map(|ix| ix.run_count()).sum()
    }

    /// Map the SA rows of a document's leftmost and rightmost suffix inside
    /// a pattern interval to its term frequency: both rows resolve to local
    /// positions, the document's ISA turns them into an interval in its own
    /// suffix array, and the interval width is the frequency.
    pub fn freq_from_extremes(
        &self,
        coll: &Collection,
        doc: DocId,
        left_row: usize,
        right_row: usize,
    ) -> Result<u64> {
        let doc_ix = &self.per_doc[doc as usize - 1];
        let local = |row: usize| -> Result<usize> {
            let p = self.global.sa_access(row)?;
            let (d, j) = coll.to_local(p)?;
            if d != doc {
                return Err(Error::DocMismatch { doc, position: p });
            }
            Ok(j)
        };
        let l_local = local(left_row)?;
        let r_local = local(right_row)?;
        let l_row = doc_ix.isa_access(l_local)?;
        let r_row = doc_ix.isa_access(r_local)?;
        debug_assert!(r_row >= l_row, "per-document order must be preserved");
        Ok((r_row - l_row + 1) as u64)
    }

    pub fn size_bytes(&self) -> usize {
        self.global.size_bytes() + self.per_doc.iter().map(|d| d.size_bytes()).sum::<usize>()
    }
}
