//! Plain (uncompressed) suffix structures: suffix array via induced sorting,
//! inverse, LCP arrays, document array, previous/next same-document arrays,
//! the interleaved LCP arrays, and the brute-force per-document frequency
//! oracle used as ground truth.
//!
//! Positions and rows are 1-based in the public API; vectors store row `i`
//! at index `i - 1`.

use std::collections::BTreeMap;

use crate::collection::{Collection, DocId, MIN_SYMBOL};
use crate::error::{Error, Result};

/// Per-document term frequencies, keyed by ascending document id.
pub type DocFreqs = BTreeMap<DocId, u64>;

const EMPTY: usize = usize::MAX;

/// Suffix array of `text` as 1-based positions. The last symbol of `text`
/// must be its unique minimum.
pub fn suffix_array(text: &[u8]) -> Vec<usize> {
    debug_assert!(!text.is_empty());
    debug_assert!(
        text[..text.len() - 1].iter().all(|&b| b > text[text.len() - 1]),
        "text must end with its unique smallest symbol"
    );
    let s: Vec<usize> = text.iter().map(|&b| b as usize).collect();
    let mut sa = sa_is(&s, 256);
    for p in &mut sa {
        *p += 1;
    }
    sa
}

/// SA-IS induced-sorting construction, linear in the input length.
/// `s` must end with its unique smallest symbol; returns 0-based positions.
fn sa_is(s: &[usize], sigma: usize) -> Vec<usize> {
    let n = s.len();
    if n == 1 {
        return vec![0];
    }
    if n == 2 {
        return vec![1, 0];
    }

    // suffix types: true = S-type (smaller than the following suffix)
    let mut is_s = vec![false; n];
    is_s[n - 1] = true;
    for i in (0..n - 1).rev() {
        is_s[i] = s[i] < s[i + 1] || (s[i] == s[i + 1] && is_s[i + 1]);
    }
    let is_lms = |i: usize| i > 0 && is_s[i] && !is_s[i - 1];

    let mut bucket = vec![0usize; sigma];
    for &c in s {
        bucket[c] += 1;
    }
    let heads_of = |bucket: &[usize]| {
        let mut heads = vec![0usize; sigma];
        let mut sum = 0;
        for c in 0..sigma {
            heads[c] = sum;
            sum += bucket[c];
        }
        heads
    };
    let tails_of = |bucket: &[usize]| {
        let mut tails = vec![0usize; sigma];
        let mut sum = 0;
        for c in 0..sigma {
            sum += bucket[c];
            tails[c] = sum;
        }
        tails
    };

    // Place the given LMS suffixes at bucket tails, then induce L-type
    // entries left-to-right and S-type entries right-to-left.
    let induce = |lms: &[usize]| -> Vec<usize> {
        let mut sa = vec![EMPTY; n];
        let mut tails = tails_of(&bucket);
        for &p in lms.iter().rev() {
            let c = s[p];
            tails[c] -= 1;
            sa[tails[c]] = p;
        }
        let mut heads = heads_of(&bucket);
        for i in 0..n {
            let p = sa[i];
            if p != EMPTY && p > 0 && !is_s[p - 1] {
                let c = s[p - 1];
                sa[heads[c]] = p - 1;
                heads[c] += 1;
            }
        }
        let mut tails = tails_of(&bucket);
        for i in (0..n).rev() {
            let p = sa[i];
            if p != EMPTY && p > 0 && is_s[p - 1] {
                let c = s[p - 1];
                tails[c] -= 1;
                sa[tails[c]] = p - 1;
            }
        }
        sa
    };

    let lms_positions: Vec<usize> = (0..n).filter(|&i| is_lms(i)).collect();
    if lms_positions.len() == 1 {
        // only the sentinel is LMS; one induction suffices
        return induce(&lms_positions);
    }

    // first induction sorts the LMS substrings
    let sa0 = induce(&lms_positions);
    let sorted_lms: Vec<usize> = sa0.into_iter().filter(|&p| p != EMPTY && is_lms(p)).collect();

    // name LMS substrings in sorted order; equal substrings share a name
    let lms_substring_eq = |a: usize, b: usize| -> bool {
        if a == b {
            return true;
        }
        let mut k = 0;
        loop {
            let (pa, pb) = (a + k, b + k);
            if pa >= n || pb >= n {
                return false;
            }
            if s[pa] != s[pb] {
                return false;
            }
            if k > 0 {
                let (la, lb) = (is_lms(pa), is_lms(pb));
                if la != lb {
                    return false;
                }
                if la {
                    return true;
                }
            }
            k += 1;
        }
    };
    let mut names = vec![EMPTY; n];
    let mut next_name = 0usize;
    let mut prev = EMPTY;
    for &p in &sorted_lms {
        if prev != EMPTY && !lms_substring_eq(prev, p) {
            next_name += 1;
        }
        names[p] = next_name;
        prev = p;
    }
    let name_count = next_name + 1;

    let lms_in_suffix_order: Vec<usize> = if name_count == sorted_lms.len() {
        // all LMS substrings distinct: substring order is suffix order
        sorted_lms
    } else {
        let reduced: Vec<usize> = lms_positions.iter().map(|&p| names[p]).collect();
        let sa1 = sa_is(&reduced, name_count);
        sa1.into_iter().map(|idx| lms_positions[idx]).collect()
    };

    induce(&lms_in_suffix_order)
}

/// LCP array by the ISA-based linear scan. `lcp[i]` (1-based) is the longest
/// common prefix of the suffixes at SA rows `i - 1` and `i`; `lcp[1] = 0`.
fn kasai_lcp(text: &[u8], sa: &[usize], isa: &[usize]) -> Vec<usize> {
    let n = text.len();
    let mut lcp = vec![0usize; n];
    let mut h = 0usize;
    for p in 1..=n {
        let row = isa[p - 1];
        if row > 1 {
            let q = sa[row - 2];
            while p + h <= n && q + h <= n && text[p + h - 1] == text[q + h - 1] {
                h += 1;
            }
            lcp[row - 1] = h;
            h = h.saturating_sub(1);
        } else {
            h = 0;
        }
    }
    lcp
}

/// Suffix array, its inverse and the two LCP arrays of a single text.
pub struct TextSuffixes {
    sa: Vec<usize>,
    isa: Vec<usize>,
    lcp: Vec<usize>,
    rlcp: Vec<usize>,
}

impl TextSuffixes {
    /// `text` must end with its unique smallest symbol.
    pub fn build(text: &[u8]) -> Self {
        let sa = suffix_array(text);
        let n = sa.len();
        let mut isa = vec![0usize; n];
        for (row0, &p) in sa.iter().enumerate() {
            isa[p - 1] = row0 + 1;
        }
        let lcp = kasai_lcp(text, &sa, &isa);
        let mut rlcp = vec![0usize; n];
        rlcp[..n - 1].copy_from_slice(&lcp[1..]);
        Self { sa, isa, lcp, rlcp }
    }

    pub fn len(&self) -> usize {
        self.sa.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sa.is_empty()
    }

    /// Text position (1-based) of the suffix at SA row `i`.
    pub fn sa_at(&self, i: usize) -> usize {
        self.sa[i - 1]
    }

    /// SA row (1-based) of the suffix starting at text position `p`.
    pub fn isa_at(&self, p: usize) -> usize {
        self.isa[p - 1]
    }

    pub fn lcp_at(&self, i: usize) -> usize {
        self.lcp[i - 1]
    }

    pub fn rlcp_at(&self, i: usize) -> usize {
        self.rlcp[i - 1]
    }

    pub fn sa(&self) -> &[usize] {
        &self.sa
    }

    pub fn isa(&self) -> &[usize] {
        &self.isa
    }

    pub fn lcp(&self) -> &[usize] {
        &self.lcp
    }
}

/// Full plain suffix structures of a collection's concatenation, including
/// the document array and the previous/next same-document arrays.
pub struct SuffixStructures {
    text: TextSuffixes,
    da: Vec<DocId>,
    /// largest row `j < i` with the same document, 0 when absent
    prev_same_doc: Vec<usize>,
    /// smallest row `j > i` with the same document, n + 1 when absent
    next_same_doc: Vec<usize>,
}

impl SuffixStructures {
    pub fn is_empty(&self) -> bool {
        self.text.is_empty()
    }

    pub fn build(coll: &Collection) -> Self {
        let text = TextSuffixes::build(coll.concat());
        let n = text.len();
        let mut da = Vec::with_capacity(n);
        for row in 1..=n {
            da.push(coll.doc_of(text.sa_at(row)).expect("SA position in range"));
        }
        let t = coll.doc_count();
        let mut prev_same_doc = vec![0usize; n];
        let mut last = vec![0usize; t + 1];
        for row in 1..=n {
            let d = da[row - 1] as usize;
            prev_same_doc[row - 1] = last[d];
            last[d] = row;
        }
        let mut next_same_doc = vec![n + 1; n];
        let mut next = vec![n + 1; t + 1];
        for row in (1..=n).rev() {
            let d = da[row - 1] as usize;
            next_same_doc[row - 1] = next[d];
            next[d] = row;
        }
        Self {
            text,
            da,
            prev_same_doc,
            next_same_doc,
        }
    }

    pub fn len(&self) -> usize {
        self.text.len()
    }

    pub fn sa_at(&self, i: usize) -> usize {
        self.text.sa_at(i)
    }

    pub fn isa_at(&self, p: usize) -> usize {
        self.text.isa_at(p)
    }

    pub fn lcp_at(&self, i: usize) -> usize {
        self.text.lcp_at(i)
    }

    pub fn rlcp_at(&self, i: usize) -> usize {
        self.text.rlcp_at(i)
    }

    /// Document of the suffix at SA row `i`.
    pub fn da_at(&self, i: usize) -> DocId {
        self.da[i - 1]
    }

    pub fn c_at(&self, i: usize) -> usize {
        self.prev_same_doc[i - 1]
    }

    pub fn cnext_at(&self, i: usize) -> usize {
        self.next_same_doc[i - 1]
    }

    /// Document array in row order; entry `i` holds the document of row `i + 1`.
    pub fn da(&self) -> &[DocId] {
        &self.da
    }

    pub fn prev_same_doc(&self) -> &[usize] {
        &self.prev_same_doc
    }

    pub fn next_same_doc(&self) -> &[usize] {
        &self.next_same_doc
    }

    pub fn text_suffixes(&self) -> &TextSuffixes {
        &self.text
    }
}

/// The interleavings of the per-document LCP arrays in global SA order,
/// using the left LCP (`ilcp`) and the right LCP (`rilcp`).
pub struct IlcpArrays {
    ilcp: Vec<usize>,
    rilcp: Vec<usize>,
}

impl IlcpArrays {
    pub fn ilcp(&self) -> &[usize] {
        &self.ilcp
    }

    pub fn rilcp(&self) -> &[usize] {
        &self.rilcp
    }

    pub fn ilcp_at(&self, i: usize) -> usize {
        self.ilcp[i - 1]
    }

    pub fn rilcp_at(&self, i: usize) -> usize {
        self.rilcp[i - 1]
    }
}

/// Interleave the per-document LCP arrays in global SA order.
///
/// The suffix of the global sentinel is attributed to the last document (it
/// is not a suffix of that document's own text), so the last document
/// contributes one extra leading-zero entry.
pub fn build_ilcp(coll: &Collection, structures: &SuffixStructures) -> IlcpArrays {
    let n = structures.len();
    let t = coll.doc_count();

    // per-document LCP arrays, 1-based values at index j-1; the last
    // document gets a zero prepended for the global-sentinel suffix
    let mut doc_lcp: Vec<Vec<usize>> = Vec::with_capacity(t);
    for doc in 1..=t as DocId {
        let text = coll.doc_text(doc);
        let ts = TextSuffixes::build(&text);
        let mut lcp = ts.lcp;
        if doc as usize == t {
            lcp.insert(0, 0);
        }
        doc_lcp.push(lcp);
    }

    let mut ilcp = vec![0usize; n];
    let mut rilcp = vec![0usize; n];
    let mut seen = vec![0usize; t + 1];
    for row in 1..=n {
        let d = structures.da_at(row) as usize;
        seen[d] += 1;
        let j = seen[d];
        let lcp_d = &doc_lcp[d - 1];
        ilcp[row - 1] = lcp_d[j - 1];
        rilcp[row - 1] = if j < lcp_d.len() { lcp_d[j] } else { 0 };
    }
    debug_assert!((1..=t).all(|d| seen[d] == doc_lcp[d - 1].len()));
    IlcpArrays { ilcp, rilcp }
}

/// Validate a query pattern: non-empty, all bytes above the sentinels.
pub fn validate_pattern(pattern: &[u8]) -> Result<()> {
    if pattern.is_empty() {
        return Err(Error::EmptyPattern);
    }
    if let Some(pos) = pattern.iter().position(|&b| b < MIN_SYMBOL) {
        return Err(Error::InvalidPatternByte {
            byte: pattern[pos],
            position: pos + 1,
        });
    }
    Ok(())
}

/// Exact per-document occurrence counts by sliding-window scan of every
/// document body. Ground truth for all index-based query paths.
pub fn oracle_doc_freq(coll: &Collection, pattern: &[u8]) -> Result<DocFreqs> {
    validate_pattern(pattern)?;
    let mut freqs = DocFreqs::new();
    for doc in 1..=coll.doc_count() as DocId {
        let body = coll.doc_body(doc);
        if body.len() < pattern.len() {
            continue;
        }
        let count = body.windows(pattern.len()).filter(|w| *w == pattern).count();
        if count > 0 {
            freqs.insert(doc, count as u64);
        }
    }
    Ok(freqs)
}
