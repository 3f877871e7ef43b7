//! Grammar-compressed document array with per-symbol direction bitvectors.
//!
//! Every grammar symbol stores two bit arrays of length t: `L[i] = 0` iff
//! document i occurs in the symbol's expansion with its leftmost occurrence
//! in the left child, and `R[i] = 1` iff its rightmost occurrence is in the
//! right child. A document is absent exactly when `(L, R) = (1, 0)`. Queries
//! build a temporary balanced tree over the cover of the pattern interval,
//! lift the bitvectors to its root with the same recurrences, and descend
//! twice per present document to its extreme positions.

use crate::collection::{Collection, DocId};
use crate::error::Result;
use crate::grammar::{BalancedSlp, SymbolId};
use crate::rindex::{CollectionRindex, SaInterval};
use crate::suffix::DocFreqs;

/// L/R bitvectors for all grammar symbols, word-packed t bits per symbol.
pub struct LrIndex {
    slp: BalancedSlp,
    doc_count: usize,
    words_per_doc: usize,
    /// flat: symbol id * words_per_doc
    l_bits: Vec<u64>,
    r_bits: Vec<u64>,
}

impl LrIndex {
    pub fn build(da: &[DocId], doc_count: usize) -> Self {
        let seq: Vec<i64> = da.iter().map(|&d| d as i64).collect();
        let slp = BalancedSlp::build(&seq).expect("document array is non-empty");
        Self::from_slp(slp, doc_count)
    }

    pub fn from_slp(slp: BalancedSlp, doc_count: usize) -> Self {
        let wpd = doc_count.div_ceil(64).max(1);
        let count = slp.symbol_count();
        let mut l_bits = vec![0u64; count * wpd];
        let mut r_bits = vec![0u64; count * wpd];

        // bottom up, once per distinct symbol (children have smaller ids)
        for sym in 0..count {
            let (l, r) = match slp.children(sym as SymbolId) {
                None => {
                    // leaf: the present document gets (0, 1), others (1, 0)
                    let doc = slp.terminal_value(sym as SymbolId).unwrap() as usize;
                    debug_assert!(doc >= 1 && doc <= doc_count);
                    let mut l = vec![!0u64; wpd];
                    let mut r = vec![0u64; wpd];
                    l[(doc - 1) / 64] &= !(1 << ((doc - 1) % 64));
                    r[(doc - 1) / 64] |= 1 << ((doc - 1) % 64);
                    (l, r)
                }
                Some((a, b)) => {
                    let mut l = vec![0u64; wpd];
                    let mut r = vec![0u64; wpd];
                    let (a0, b0) = (a as usize * wpd, b as usize * wpd);
                    for w in 0..wpd {
                        l[w] = l_bits[a0 + w] & !r_bits[a0 + w];
                        r[w] = !l_bits[b0 + w] | r_bits[b0 + w];
                    }
                    (l, r)
                }
            };
            let base = sym * wpd;
            l_bits[base..base + wpd].copy_from_slice(&l);
            r_bits[base..base + wpd].copy_from_slice(&r);
        }

        Self {
            slp,
            doc_count,
            words_per_doc: wpd,
            l_bits,
            r_bits,
        }
    }

    /// Reassemble an index from a grammar and its packed bitvectors.
    pub fn from_parts(
        slp: BalancedSlp,
        doc_count: usize,
        l_bits: Vec<u64>,
        r_bits: Vec<u64>,
    ) -> crate::error::Result<Self> {
        let wpd = doc_count.div_ceil(64).max(1);
        let expect = slp.symbol_count() * wpd;
        if l_bits.len() != expect || r_bits.len() != expect {
            return Err(crate::error::Error::CorruptIndex(
                "direction bitvectors do not match grammar symbols".into(),
            ));
        }
        Ok(Self {
            slp,
            doc_count,
            words_per_doc: wpd,
            l_bits,
            r_bits,
        })
    }

    pub fn slp(&self) -> &BalancedSlp {
        &self.slp
    }

    pub fn doc_count(&self) -> usize {
        self.doc_count
    }

    pub fn l_bits_raw(&self) -> &[u64] {
        &self.l_bits
    }

    pub fn r_bits_raw(&self) -> &[u64] {
        &self.r_bits
    }

    pub fn words_per_doc(&self) -> usize {
        self.words_per_doc
    }

    pub fn l_words(&self, sym: SymbolId) -> &[u64] {
        let base = sym as usize * self.words_per_doc;
        &self.l_bits[base..base + self.words_per_doc]
    }

    pub fn r_words(&self, sym: SymbolId) -> &[u64] {
        let base = sym as usize * self.words_per_doc;
        &self.r_bits[base..base + self.words_per_doc]
    }

    pub fn l_bit(&self, sym: SymbolId, doc: DocId) -> bool {
        bit(self.l_words(sym), doc)
    }

    pub fn r_bit(&self, sym: SymbolId, doc: DocId) -> bool {
        bit(self.r_words(sym), doc)
    }

    /// Leftmost and rightmost DA positions of every document present in
    /// `[iv.start..iv.end]`, as `(doc, leftmost row, rightmost row)`.
    pub fn extremes(&self, iv: &SaInterval) -> Result<Vec<(DocId, usize, usize)>> {
        let cover = self.slp.maximal_cover(iv.start, iv.end)?;

        // temporary balanced tree over the cover nodes, bitvectors lifted
        // bottom-up by the same recurrences
        let wpd = self.words_per_doc;
        let mut nodes: Vec<TpNode> = cover
            .iter()
            .map(|&(sym, start)| TpNode {
                l: self.l_words(sym).to_vec(),
                r: self.r_words(sym).to_vec(),
                kind: TpKind::Leaf { sym, start },
            })
            .collect();
        let mut level: Vec<usize> = (0..nodes.len()).collect();
        while level.len() > 1 {
            let mut next = Vec::with_capacity(level.len() / 2 + 1);
            let mut i = 0;
            while i + 1 < level.len() {
                let (a, b) = (level[i], level[i + 1]);
                let mut l = vec![0u64; wpd];
                let mut r = vec![0u64; wpd];
                for w in 0..wpd {
                    l[w] = nodes[a].l[w] & !nodes[a].r[w];
                    r[w] = !nodes[b].l[w] | nodes[b].r[w];
                }
                nodes.push(TpNode {
                    l,
                    r,
                    kind: TpKind::Internal { left: a, right: b },
                });
                next.push(nodes.len() - 1);
                i += 2;
            }
            if i < level.len() {
                next.push(level[i]);
            }
            level = next;
        }
        let root = level[0];

        let mut out = Vec::new();
        for w in 0..wpd {
            let mut present = !(nodes[root].l[w] & !nodes[root].r[w]);
            if w == wpd - 1 && !self.doc_count.is_multiple_of(64) {
                present &= (1u64 << (self.doc_count % 64)) - 1;
            }
            while present != 0 {
                let b = present.trailing_zeros() as usize;
                present &= present - 1;
                let doc = (w * 64 + b + 1) as DocId;
                let left = self.descend(&nodes, root, doc, true);
                let right = self.descend(&nodes, root, doc, false);
                debug_assert!(left >= iv.start && right <= iv.end && left <= right);
                out.push((doc, left.max(iv.start), right.min(iv.end)));
            }
        }
        Ok(out)
    }

    /// One root-to-leaf descent to the extreme position of `doc`:
    /// for the leftmost follow `L = 0` left, for the rightmost follow
    /// `R = 1` right.
    fn descend(&self, nodes: &[TpNode], root: usize, doc: DocId, leftmost: bool) -> usize {
        let mut node = root;
        loop {
            match nodes[node].kind {
                TpKind::Internal { left, right } => {
                    let go_left = if leftmost {
                        !bit(&nodes[node].l, doc)
                    } else {
                        !bit(&nodes[node].r, doc)
                    };
                    node = if go_left { left } else { right };
                }
                TpKind::Leaf { sym, start } => {
                    let mut cur = sym;
                    let mut pos = start;
                    while let Some((a, b)) = self.slp.children(cur) {
                        let go_left = if leftmost {
                            !self.l_bit(cur, doc)
                        } else {
                            !self.r_bit(cur, doc)
                        };
                        if go_left {
                            cur = a;
                        } else {
                            pos += self.slp.expansion_len(a);
                            cur = b;
                        }
                    }
                    debug_assert_eq!(self.slp.terminal_value(cur), Some(doc as i64));
                    return pos;
                }
            }
        }
    }

    /// Per-document frequencies of `pattern`: extreme rows per present
    /// document, mapped through the per-document indexes.
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
        let mut out = DocFreqs::new();
        for (doc, left, right) in self.extremes(&iv)? {
            let freq = crx.freq_from_extremes(coll, doc, left, right)?;
            out.insert(doc, freq);
        }
        Ok(out)
    }

    /// Rough in-memory footprint, for size reporting.
    pub fn size_bytes(&self) -> usize {
        self.slp.size_bytes() + (self.l_bits.len() + self.r_bits.len()) * 8
    }
}

struct TpNode {
    l: Vec<u64>,
    r: Vec<u64>,
    kind: TpKind,
}

enum TpKind {
    Leaf { sym: SymbolId, start: usize },
    Internal { left: usize, right: usize },
}

fn bit(words: &[u64], doc: DocId) -> bool {
    let i = doc as usize - 1;
    words[i / 64] >> (i % 64) & 1 == 1
}
