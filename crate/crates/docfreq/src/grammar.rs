//! Binary, balanced straight-line grammar over an integer sequence, with
//! parse-tree navigation and maximal-node cover of an interval.
//!
//! Construction uses pairing rounds: each round greedily pairs adjacent
//! symbols left to right, hash-consing repeated pairs into one nonterminal;
//! an odd leftover symbol is carried to the next round unchanged. Each round
//! halves the sequence, so the parse tree has height at most ceil(log2 n),
//! and repeated substrings of the input share sub-derivations.

use std::collections::HashMap;

use crate::error::{Error, Result};

/// Grammar symbol identifier. Children always have smaller ids than their
/// parents, so symbol order is a topological order of the parse DAG.
pub type SymbolId = u32;

/// One entry of the symbol table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SlpSymbol {
    Terminal(i64),
    NonTerminal(SymbolId, SymbolId),
}

/// A straight-line grammar whose root expands to exactly the input sequence.
#[derive(Debug, Clone)]
pub struct BalancedSlp {
    symbols: Vec<SlpSymbol>,
    /// expansion length per symbol
    lengths: Vec<usize>,
    /// subtree height per symbol; terminals are 0
    levels: Vec<u32>,
    root: SymbolId,
    len: usize,
}

impl BalancedSlp {
    pub fn build(seq: &[i64]) -> Result<Self> {
        if seq.is_empty() {
            return Err(Error::EmptyInput);
        }
        let mut symbols = Vec::new();
        let mut lengths = Vec::new();
        let mut levels = Vec::new();

        let mut terminal_ids: HashMap<i64, SymbolId> = HashMap::new();
        let mut current: Vec<SymbolId> = Vec::with_capacity(seq.len());
        for &v in seq {
            let id = *terminal_ids.entry(v).or_insert_with(|| {
                symbols.push(SlpSymbol::Terminal(v));
                lengths.push(1);
                levels.push(0);
                (symbols.len() - 1) as SymbolId
            });
            current.push(id);
        }

        let mut pair_ids: HashMap<(SymbolId, SymbolId), SymbolId> = HashMap::new();
        while current.len() > 1 {
            let mut next = Vec::with_capacity(current.len() / 2 + 1);
            let mut i = 0;
            while i + 1 < current.len() {
                let key = (current[i], current[i + 1]);
                let id = *pair_ids.entry(key).or_insert_with(|| {
                    symbols.push(SlpSymbol::NonTerminal(key.0, key.1));
                    lengths.push(lengths[key.0 as usize] + lengths[key.1 as usize]);
                    levels.push(1 + levels[key.0 as usize].max(levels[key.1 as usize]));
                    (symbols.len() - 1) as SymbolId
                });
                next.push(id);
                i += 2;
            }
            if i < current.len() {
                next.push(current[i]);
            }
            current = next;
        }

        Ok(Self {
            root: current[0],
            len: seq.len(),
            symbols,
            lengths,
            levels,
        })
    }

    /// Reassemble a grammar from its symbol table; children must precede
    /// their parents.
    pub fn from_parts(symbols: Vec<SlpSymbol>, root: SymbolId) -> Result<Self> {
        if symbols.is_empty() {
            return Err(Error::EmptyInput);
        }
        if root as usize >= symbols.len() {
            return Err(Error::CorruptIndex("grammar root out of range".into()));
        }
        let mut lengths = Vec::with_capacity(symbols.len());
        let mut levels = Vec::with_capacity(symbols.len());
        for (id, sym) in symbols.iter().enumerate() {
            match *sym {
                SlpSymbol::Terminal(_) => {
                    lengths.push(1);
                    levels.push(0);
                }
                SlpSymbol::NonTerminal(a, b) => {
                    if a as usize >= id || b as usize >= id {
                        return Err(Error::CorruptIndex(
                            "grammar child does not precede parent".into(),
                        ));
                    }
                    lengths.push(lengths[a as usize] + lengths[b as usize]);
                    levels.push(1 + levels[a as usize].max(levels[b as usize]));
                }
            }
        }
        let len = lengths[root as usize];
        Ok(Self {
            symbols,
            lengths,
            levels,
            root,
            len,
        })
    }

    /// The symbol-table entry for `sym`.
    pub fn symbol(&self, sym: SymbolId) -> SlpSymbol {
        self.symbols[sym as usize]
    }

    /// Length of the input sequence.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn root(&self) -> SymbolId {
        self.root
    }

    /// Total number of symbols (terminals + nonterminals).
    pub fn symbol_count(&self) -> usize {
        self.symbols.len()
    }

    /// Number of nonterminals (the grammar size nu).
    pub fn nonterminal_count(&self) -> usize {
        self.symbols
            .iter()
            .filter(|s| matches!(s, SlpSymbol::NonTerminal(..)))
            .count()
    }

    /// Parse-tree height.
    pub fn height(&self) -> usize {
        self.levels[self.root as usize] as usize
    }

    pub fn expansion_len(&self, sym: SymbolId) -> usize {
        self.lengths[sym as usize]
    }

    pub fn level(&self, sym: SymbolId) -> u32 {
        self.levels[sym as usize]
    }

    /// Children of a nonterminal, `None` for terminals.
    pub fn children(&self, sym: SymbolId) -> Option<(SymbolId, SymbolId)> {
        match self.symbols[sym as usize] {
            SlpSymbol::Terminal(_) => None,
            SlpSymbol::NonTerminal(a, b) => Some((a, b)),
        }
    }

    /// The value of a terminal symbol, `None` for nonterminals.
    pub fn terminal_value(&self, sym: SymbolId) -> Option<i64> {
        match self.symbols[sym as usize] {
            SlpSymbol::Terminal(v) => Some(v),
            SlpSymbol::NonTerminal(..) => None,
        }
    }

    /// Expand a symbol to the subsequence it derives.
    pub fn expand(&self, sym: SymbolId) -> Vec<i64> {
        let mut out = Vec::with_capacity(self.lengths[sym as usize]);
        let mut stack = vec![sym];
        while let Some(s) = stack.pop() {
            match self.symbols[s as usize] {
                SlpSymbol::Terminal(v) => out.push(v),
                SlpSymbol::NonTerminal(a, b) => {
                    stack.push(b);
                    stack.push(a);
                }
            }
        }
        out
    }

    /// Sequence value at 1-based position `i`, by one root-to-leaf descent.
    pub fn random_access(&self, i: usize) -> Result<i64> {
        if i == 0 || i > self.len {
            return Err(Error::OutOfRange {
                what: "sequence position",
                value: i,
                limit: self.len,
            });
        }
        let mut sym = self.root;
        let mut offset = i;
        loop {
            match self.symbols[sym as usize] {
                SlpSymbol::Terminal(v) => return Ok(v),
                SlpSymbol::NonTerminal(a, b) => {
                    let left_len = self.lengths[a as usize];
                    if offset <= left_len {
                        sym = a;
                    } else {
                        offset -= left_len;
                        sym = b;
                    }
                }
            }
        }
    }

    /// Maximal parse-tree nodes tiling exactly the 1-based interval `[l..r]`:
    /// the expansions of the returned symbols concatenate to `seq[l..=r]` and
    /// no returned node's parent lies fully inside the interval. Each entry
    /// carries the absolute start position of the node's span.
    pub fn maximal_cover(&self, l: usize, r: usize) -> Result<Vec<(SymbolId, usize)>> {
        if l == 0 || l > r || r > self.len {
            return Err(Error::EmptyRange);
        }
        let mut out = Vec::new();
        self.cover_rec(self.root, 1, l, r, &mut out);
        Ok(out)
    }

    fn cover_rec(
        &self,
        sym: SymbolId,
        start: usize,
        l: usize,
        r: usize,
        out: &mut Vec<(SymbolId, usize)>,
    ) {
        let end = start + self.lengths[sym as usize] - 1;
        debug_assert!(start <= r && end >= l, "caller guarantees overlap");
        if l <= start && end <= r {
            out.push((sym, start));
            return;
        }
        match self.symbols[sym as usize] {
            SlpSymbol::Terminal(_) => unreachable!("length-1 overlap is containment"),
            SlpSymbol::NonTerminal(a, b) => {
                let a_end = start + self.lengths[a as usize] - 1;
                if l <= a_end {
                    self.cover_rec(a, start, l, r, out);
                }
                if r > a_end {
                    self.cover_rec(b, a_end + 1, l, r, out);
                }
            }
        }
    }

    /// Rough in-memory footprint, for size reporting.
    pub fn size_bytes(&self) -> usize {
        self.symbols.len() * (12 + 8 + 4)
    }
}
