//! Succinct building blocks: rank/select bitvectors, range min/max queries
//! and a wavelet tree over small integer alphabets.
//!
//! All positions are 1-based to match the conventions used by the index
//! modules; storage is 0-based internally.

use crate::error::{Error, Result};

/// Plain bitvector with rank and select support.
///
/// `rank1(i)` counts ones in positions `1..=i`, `select1(j)` returns the
/// position of the j-th one. Rank uses per-word cumulative counts; select
/// binary-searches them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankSelectBitvector {
    words: Vec<u64>,
    len: usize,
    // ones in all words strictly before word w
    cum_ones: Vec<usize>,
    total_ones: usize,
}

impl RankSelectBitvector {
    pub fn from_bools(bits: &[bool]) -> Self {
        let len = bits.len();
        let mut words = vec![0u64; len.div_ceil(64)];
        for (i, &b) in bits.iter().enumerate() {
            if b {
                words[i / 64] |= 1 << (i % 64);
            }
        }
        Self::from_words(words, len)
    }

    /// Build from 1-based positions of set bits.
    pub fn from_set_positions(len: usize, ones: &[usize]) -> Self {
        let mut words = vec![0u64; len.div_ceil(64)];
        for &p in ones {
            assert!(p >= 1 && p <= len, "set position out of range");
            words[(p - 1) / 64] |= 1 << ((p - 1) % 64);
        }
        Self::from_words(words, len)
    }

    fn from_words(words: Vec<u64>, len: usize) -> Self {
        let mut cum_ones = Vec::with_capacity(words.len() + 1);
        let mut total = 0usize;
        for &w in &words {
            cum_ones.push(total);
            total += w.count_ones() as usize;
        }
        cum_ones.push(total);
        Self {
            words,
            len,
            cum_ones,
            total_ones: total,
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn count_ones(&self) -> usize {
        self.total_ones
    }

    /// Bit at 1-based position `i`.
    pub fn get(&self, i: usize) -> Result<bool> {
        self.check_pos(i)?;
        Ok(self.words[(i - 1) / 64] >> ((i - 1) % 64) & 1 == 1)
    }

    fn check_pos(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.len {
            return Err(Error::OutOfRange {
                what: "bit position",
                value: i,
                limit: self.len,
            });
        }
        Ok(())
    }

    /// Number of ones in positions `1..=i`; `i` may be 0 (yielding 0).
    pub fn rank1(&self, i: usize) -> Result<usize> {
        if i > self.len {
            return Err(Error::OutOfRange {
                what: "rank position",
                value: i,
                limit: self.len,
            });
        }
        Ok(self.rank1_raw(i))
    }

    /// Number of zeros in positions `1..=i`.
    pub fn rank0(&self, i: usize) -> Result<usize> {
        Ok(i - self.rank1(i)?)
    }

    pub(crate) fn rank1_raw(&self, i: usize) -> usize {
        if i == 0 {
            return 0;
        }
        let w = (i - 1) / 64;
        let off = (i - 1) % 64;
        let mask = if off == 63 { !0u64 } else { (1u64 << (off + 1)) - 1 };
        self.cum_ones[w] + (self.words[w] & mask).count_ones() as usize
    }

    /// 1-based position of the j-th one.
    pub fn select1(&self, j: usize) -> Result<usize> {
        if j == 0 || j > self.total_ones {
            return Err(Error::SelectOverflow {
                requested: j,
                available: self.total_ones,
            });
        }
        Ok(self.select1_raw(j))
    }

    pub(crate) fn select1_raw(&self, j: usize) -> usize {
        // find the word whose cumulative count first reaches j
        let mut lo = 0usize;
        let mut hi = self.words.len();
        while lo + 1 < hi {
            let mid = (lo + hi) / 2;
            if self.cum_ones[mid] < j {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let mut remaining = j - self.cum_ones[lo];
        let mut w = self.words[lo];
        let mut bit = 0usize;
        loop {
            if w & 1 == 1 {
                remaining -= 1;
                if remaining == 0 {
                    return lo * 64 + bit + 1;
                }
            }
            w >>= 1;
            bit += 1;
        }
    }

    /// 1-based position of the j-th zero.
    pub fn select0(&self, j: usize) -> Result<usize> {
        let zeros = self.len - self.total_ones;
        if j == 0 || j > zeros {
            return Err(Error::SelectOverflow {
                requested: j,
                available: zeros,
            });
        }
        // zeros in all words strictly before word w: 64*w - cum_ones[w]
        let mut lo = 0usize;
        let mut hi = self.words.len();
        while lo + 1 < hi {
            let mid = (lo + hi) / 2;
            if 64 * mid - self.cum_ones[mid] < j {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let mut remaining = j - (64 * lo - self.cum_ones[lo]);
        let mut w = self.words[lo];
        let mut bit = 0usize;
        loop {
            if w & 1 == 0 {
                remaining -= 1;
                if remaining == 0 {
                    return Ok(lo * 64 + bit + 1);
                }
            }
            w >>= 1;
            bit += 1;
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Extremum {
    Min,
    Max,
}

/// Sparse-table range extremum queries returning the leftmost extremal
/// position. O(n log n) words of space, O(1) query.
#[derive(Debug, Clone)]
pub struct SparseRmq {
    values: Vec<u64>,
    // table[k][i] = position (0-based) of the extremum in [i, i + 2^k)
    table: Vec<Vec<u32>>,
    kind: Extremum,
}

impl SparseRmq {
    pub fn new_min(values: &[u64]) -> Self {
        Self::build(values, Extremum::Min)
    }

    pub fn new_max(values: &[u64]) -> Self {
        Self::build(values, Extremum::Max)
    }

    pub fn new_min_usize(values: &[usize]) -> Self {
        let v: Vec<u64> = values.iter().map(|&x| x as u64).collect();
        Self::build(&v, Extremum::Min)
    }

    pub fn new_max_usize(values: &[usize]) -> Self {
        let v: Vec<u64> = values.iter().map(|&x| x as u64).collect();
        Self::build(&v, Extremum::Max)
    }

    fn build(values: &[u64], kind: Extremum) -> Self {
        let n = values.len();
        let levels = if n <= 1 { 1 } else { n.ilog2() as usize + 1 };
        let mut table: Vec<Vec<u32>> = Vec::with_capacity(levels);
        table.push((0..n as u32).collect());
        let mut k = 1;
        while (1 << k) <= n {
            let half = 1 << (k - 1);
            let prev = &table[k - 1];
            let mut row = Vec::with_capacity(n - (1 << k) + 1);
            for i in 0..=(n - (1 << k)) {
                let a = prev[i];
                let b = prev[i + half];
                row.push(Self::pick(values, kind, a, b));
            }
            table.push(row);
            k += 1;
        }
        Self {
            values: values.to_vec(),
            table,
            kind,
        }
    }

    // a is the leftmost candidate, so ties resolve to it
    fn pick(values: &[u64], kind: Extremum, a: u32, b: u32) -> u32 {
        let (va, vb) = (values[a as usize], values[b as usize]);
        let a_wins = match kind {
            Extremum::Min => va <= vb,
            Extremum::Max => va >= vb,
        };
        if a_wins {
            a
        } else {
            b
        }
    }

    /// Leftmost extremal position in 1-based `[l..r]`, inclusive.
    pub fn query(&self, l: usize, r: usize) -> Result<usize> {
        if l == 0 || l > r || r > self.values.len() {
            return Err(Error::EmptyRange);
        }
        let (l0, r0) = (l - 1, r - 1);
        let span = r0 - l0 + 1;
        let k = span.ilog2() as usize;
        let a = self.table[k][l0];
        let b = self.table[k][r0 + 1 - (1 << k)];
        // overlapping halves; compare left first to keep the leftmost tie
        Ok(Self::pick(&self.values, self.kind, a, b) as usize + 1)
    }

    pub fn value_at(&self, pos: usize) -> u64 {
        self.values[pos - 1]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Position of the leftmost minimum of `values[l..=r]` (1-based).
pub fn rmq_min(rmq: &SparseRmq, l: usize, r: usize) -> Result<usize> {
    debug_assert_eq!(rmq.kind, Extremum::Min);
    rmq.query(l, r)
}

/// Position of the leftmost maximum of `values[l..=r]` (1-based).
pub fn rmq_max(rmq: &SparseRmq, l: usize, r: usize) -> Result<usize> {
    debug_assert_eq!(rmq.kind, Extremum::Max);
    rmq.query(l, r)
}

enum WaveletNode {
    Internal {
        bits: RankSelectBitvector,
        left: Box<WaveletNode>,
        right: Box<WaveletNode>,
    },
    Leaf {
        symbol: u32,
    },
}

/// Wavelet tree over a sequence of symbols `1..=sigma`.
pub struct WaveletTree {
    root: WaveletNode,
    len: usize,
    sigma: u32,
}

impl WaveletTree {
    /// `sigma` is the largest symbol value that can be queried.
    pub fn new(seq: &[u32], sigma: u32) -> Self {
        assert!(sigma >= 1);
        debug_assert!(seq.iter().all(|&s| s >= 1 && s <= sigma));
        let root = Self::build(seq, 1, sigma);
        Self {
            root,
            len: seq.len(),
            sigma,
        }
    }

    fn build(seq: &[u32], lo: u32, hi: u32) -> WaveletNode {
        if lo == hi {
            return WaveletNode::Leaf { symbol: lo };
        }
        let mid = lo + (hi - lo) / 2;
        let bits: Vec<bool> = seq.iter().map(|&s| s > mid).collect();
        let left_seq: Vec<u32> = seq.iter().copied().filter(|&s| s <= mid).collect();
        let right_seq: Vec<u32> = seq.iter().copied().filter(|&s| s > mid).collect();
        WaveletNode::Internal {
            bits: RankSelectBitvector::from_bools(&bits),
            left: Box::new(Self::build(&left_seq, lo, mid)),
            right: Box::new(Self::build(&right_seq, mid + 1, hi)),
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Occurrences of `symbol` in the 1-based prefix `[1..=i]`.
    /// Symbols above `sigma` simply never occur.
    pub fn rank(&self, symbol: u32, i: usize) -> Result<usize> {
        if symbol == 0 {
            return Err(Error::OutOfRange {
                what: "wavelet symbol",
                value: 0,
                limit: self.sigma as usize,
            });
        }
        if i > self.len {
            return Err(Error::OutOfRange {
                what: "wavelet prefix length",
                value: i,
                limit: self.len,
            });
        }
        if symbol > self.sigma {
            return Ok(0);
        }
        let mut node = &self.root;
        let mut lo = 1u32;
        let mut hi = self.sigma;
        let mut i = i;
        loop {
            match node {
                WaveletNode::Leaf { symbol: s, .. } => {
                    debug_assert_eq!(*s, symbol);
                    return Ok(i);
                }
                WaveletNode::Internal { bits, left, right } => {
                    let mid = lo + (hi - lo) / 2;
                    if symbol <= mid {
                        i -= bits.rank1_raw(i);
                        node = left;
                        hi = mid;
                    } else {
                        i = bits.rank1_raw(i);
                        node = right;
                        lo = mid + 1;
                    }
                }
            }
        }
    }

    /// Symbol at 1-based position `i`.
    pub fn access(&self, i: usize) -> Result<u32> {
        if i == 0 || i > self.len {
            return Err(Error::OutOfRange {
                what: "wavelet position",
                value: i,
                limit: self.len,
            });
        }
        let mut node = &self.root;
        let mut i = i;
        loop {
            match node {
                WaveletNode::Leaf { symbol, .. } => return Ok(*symbol),
                WaveletNode::Internal { bits, left, right } => {
                    if bits.get(i)? {
                        i = bits.rank1_raw(i);
                        node = right;
                    } else {
                        i -= bits.rank1_raw(i);
                        node = left;
                    }
                }
            }
        }
    }

    /// Rough in-memory footprint, for size reporting.
    pub fn size_bytes(&self) -> usize {
        fn node_size(n: &WaveletNode) -> usize {
            match n {
                WaveletNode::Leaf { .. } => 16,
                WaveletNode::Internal { bits, left, right } => {
                    bits.words.len() * 8 + bits.cum_ones.len() * 8 + node_size(left) + node_size(right)
                }
            }
        }
        node_size(&self.root)
    }
}
