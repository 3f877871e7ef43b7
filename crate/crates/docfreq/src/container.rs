//! Index container file format.
//!
//! Layout: magic `DLFQ`, format version (u32), then tagged sections of
//! `4-byte tag | u64 payload length | payload`. Multi-byte integers are
//! little-endian and bit arrays are packed least-significant-bit first.
//! Unknown sections are skipped so newer writers stay readable.
//!
//! Sections: `META` (method, provider, sampling threshold), `COLL` (raw
//! documents), `RIDX` (repeated: the concatenation's index, then one per
//! document), `GRMR` (document-array grammar), `PDLX` (precomputed lists),
//! `GLRX` (direction bitvectors), `ILCP`/`ILCS` (plain/merged interleaved
//! LCP runs, left and right variants).

use std::fs;
use std::path::Path;

use crate::collection::{Collection, DocId};
use crate::engine::{Method, QueryEngine};
use crate::error::{Error, Result};
use crate::gcda_lr::LrIndex;
use crate::grammar::{BalancedSlp, SlpSymbol, SymbolId};
use crate::ilcp::{IlcpIndex, IlcpPair, Orientation};
use crate::pdl::PdlIndex;
use crate::rindex::{CollectionRindex, ProviderKind, ProviderParts, ProviderView, RlbwtIndex};

const MAGIC: &[u8; 4] = b"DLFQ";
const VERSION: u32 = 1;

type StoredLists = Vec<Option<Vec<(DocId, u64)>>>;

fn method_code(m: Method) -> u8 {
    match m {
        Method::Pdl => 0,
        Method::GcdaLr => 1,
        Method::Ilcp => 2,
        Method::IlcpStar => 3,
        Method::Sada => 4,
        Method::Wt => 5,
        Method::Scan => 6,
    }
}

fn method_from_code(c: u8) -> Result<Method> {
    Ok(match c {
        0 => Method::Pdl,
        1 => Method::GcdaLr,
        2 => Method::Ilcp,
        3 => Method::IlcpStar,
        4 => Method::Sada,
        5 => Method::Wt,
        6 => Method::Scan,
        other => return Err(Error::CorruptIndex(format!("unknown method code {other}"))),
    })
}

struct Writer {
    buf: Vec<u8>,
}

impl Writer {
    fn new() -> Self {
        Self { buf: Vec::new() }
    }

    fn u8(&mut self, v: u8) {
        self.buf.push(v);
    }

    fn u32(&mut self, v: u32) {
        self.buf.extend_from_slice(&v.to_le_bytes());
    }

    fn u64(&mut self, v: u64) {
        self.buf.extend_from_slice(&v.to_le_bytes());
    }

    fn i64(&mut self, v: i64) {
        self.buf.extend_from_slice(&v.to_le_bytes());
    }

    fn bytes(&mut self, v: &[u8]) {
        self.buf.extend_from_slice(v);
    }

    fn section(&mut self, tag: &[u8; 4], payload: &[u8]) {
        self.buf.extend_from_slice(tag);
        self.u64(payload.len() as u64);
        self.bytes(payload);
    }
}

struct Reader<'a> {
    buf: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn new(buf: &'a [u8]) -> Self {
        Self { buf, pos: 0 }
    }

    fn remaining(&self) -> usize {
        self.buf.len() - self.pos
    }

    fn take(&mut self, n: usize) -> Result<&'a [u8]> {
        if self.remaining() < n {
            return Err(Error::CorruptIndex("unexpected end of file".into()));
        }
        let s = &self.buf[self.pos..self.pos + n];
        self.pos += n;
        Ok(s)
    }

    fn u8(&mut self) -> Result<u8> {
        Ok(self.take(1)?[0])
    }

    fn u32(&mut self) -> Result<u32> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().unwrap()))
    }

    fn u64(&mut self) -> Result<u64> {
        Ok(u64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }

    fn usize(&mut self) -> Result<usize> {
        Ok(self.u64()? as usize)
    }

    fn i64(&mut self) -> Result<i64> {
        Ok(i64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }
}

fn write_slp(w: &mut Writer, slp: &BalancedSlp) {
    w.u64(slp.symbol_count() as u64);
    for sym in 0..slp.symbol_count() as SymbolId {
        match slp.symbol(sym) {
            SlpSymbol::Terminal(v) => {
                w.u8(0);
                w.i64(v);
            }
            SlpSymbol::NonTerminal(a, b) => {
                w.u8(1);
                w.u64(a as u64);
                w.u64(b as u64);
            }
        }
    }
    w.u64(slp.root() as u64);
}

fn read_slp(r: &mut Reader) -> Result<BalancedSlp> {
    let count = r.usize()?;
    let mut symbols = Vec::with_capacity(count);
    for _ in 0..count {
        symbols.push(match r.u8()? {
            0 => SlpSymbol::Terminal(r.i64()?),
            1 => SlpSymbol::NonTerminal(r.u64()? as SymbolId, r.u64()? as SymbolId),
            other => {
                return Err(Error::CorruptIndex(format!("unknown symbol tag {other}")))
            }
        });
    }
    let root = r.u64()? as SymbolId;
    BalancedSlp::from_parts(symbols, root)
}

fn write_rindex(w: &mut Writer, owner: u64, ix: &RlbwtIndex) {
    w.u64(owner);
    w.u64(ix.len() as u64);
    w.u64(ix.run_count() as u64);
    for k in 0..ix.run_count() {
        let (sym, len, first, last) = ix.run_parts(k);
        w.u8(sym);
        w.u64(len as u64);
        w.u64(first as u64);
        w.u64(last as u64);
    }
    match ix.provider_view() {
        ProviderView::Plain { sa, isa } => {
            w.u8(0);
            for &v in sa {
                w.u64(v as u64);
            }
            for &v in isa {
                w.u64(v as u64);
            }
        }
        ProviderView::GrammarDiff { sa, isa } => {
            w.u8(1);
            write_slp(w, sa);
            write_slp(w, isa);
        }
    }
}

fn read_rindex(r: &mut Reader) -> Result<(u64, RlbwtIndex)> {
    let owner = r.u64()?;
    let n = r.usize()?;
    let run_count = r.usize()?;
    let mut runs = Vec::with_capacity(run_count);
    for _ in 0..run_count {
        let sym = r.u8()?;
        let len = r.usize()?;
        let first = r.usize()?;
        let last = r.usize()?;
        runs.push((sym, len, first, last));
    }
    let provider = match r.u8()? {
        0 => {
            let mut sa = Vec::with_capacity(n);
            for _ in 0..n {
                sa.push(r.usize()?);
            }
            let mut isa = Vec::with_capacity(n);
            for _ in 0..n {
                isa.push(r.usize()?);
            }
            ProviderParts::Plain { sa, isa }
        }
        1 => ProviderParts::GrammarDiff {
            sa: read_slp(r)?,
            isa: read_slp(r)?,
        },
        other => return Err(Error::CorruptIndex(format!("unknown provider tag {other}"))),
    };
    Ok((owner, RlbwtIndex::from_parts(n, runs, provider)?))
}

fn write_flags(w: &mut Writer, flags: &[bool]) {
    let mut bytes = vec![0u8; flags.len().div_ceil(8)];
    for (i, &f) in flags.iter().enumerate() {
        if f {
            bytes[i / 8] |= 1 << (i % 8);
        }
    }
    w.bytes(&bytes);
}

fn read_flags(r: &mut Reader, count: usize) -> Result<Vec<bool>> {
    let bytes = r.take(count.div_ceil(8))?;
    Ok((0..count).map(|i| bytes[i / 8] >> (i % 8) & 1 == 1).collect())
}

fn write_ilcp_variant(w: &mut Writer, ix: &IlcpIndex) {
    w.u64(ix.run_count() as u64);
    for &v in ix.run_values() {
        w.u64(v as u64);
    }
    for l in ix.run_lengths() {
        w.u64(l as u64);
    }
    write_flags(w, ix.same_doc_flags());
}

fn read_ilcp_variant(r: &mut Reader, orientation: Orientation, starred: bool) -> Result<IlcpIndex> {
    let count = r.usize()?;
    let mut values = Vec::with_capacity(count);
    for _ in 0..count {
        values.push(r.usize()?);
    }
    let mut lengths = Vec::with_capacity(count);
    for _ in 0..count {
        lengths.push(r.usize()?);
    }
    let same_doc = read_flags(r, count)?;
    IlcpIndex::from_parts(orientation, starred, values, lengths, same_doc)
}

/// Serialize an engine to the container format.
pub fn save(engine: &QueryEngine) -> Vec<u8> {
    let mut w = Writer::new();
    w.bytes(MAGIC);
    w.u32(VERSION);

    let mut meta = Writer::new();
    meta.u8(method_code(engine.method()));
    meta.u8(match engine.provider() {
        ProviderKind::Plain => 0,
        ProviderKind::GrammarDiff => 1,
    });
    meta.u64(engine.pdl_threshold() as u64);
    w.section(b"META", &meta.buf);

    let coll = engine.collection();
    let mut cw = Writer::new();
    cw.u64(coll.doc_count() as u64);
    for d in 1..=coll.doc_count() as DocId {
        let body = coll.doc_body(d);
        cw.u64(body.len() as u64);
        cw.bytes(body);
    }
    w.section(b"COLL", &cw.buf);

    let mut rw = Writer::new();
    write_rindex(&mut rw, 0, engine.global());
    w.section(b"RIDX", &rw.buf);
    for (i, ix) in engine.rindexes().doc_indexes().iter().enumerate() {
        let mut rw = Writer::new();
        write_rindex(&mut rw, i as u64 + 1, ix);
        w.section(b"RIDX", &rw.buf);
    }

    if let Some(pdl) = engine.pdl_index() {
        let mut gw = Writer::new();
        write_slp(&mut gw, pdl.slp());
        w.section(b"GRMR", &gw.buf);

        let mut pw = Writer::new();
        pw.u64(pdl.threshold() as u64);
        pw.u64(pdl.symbol_lists().len() as u64);
        for list in pdl.symbol_lists() {
            match list {
                None => pw.u8(0),
                Some(entries) => {
                    pw.u8(1);
                    pw.u64(entries.len() as u64);
                    for &(doc, freq) in entries {
                        pw.u32(doc);
                        pw.u64(freq);
                    }
                }
            }
        }
        w.section(b"PDLX", &pw.buf);
    }

    if let Some(lr) = engine.lr_index() {
        let mut gw = Writer::new();
        write_slp(&mut gw, lr.slp());
        w.section(b"GRMR", &gw.buf);

        let mut lw = Writer::new();
        lw.u64(lr.doc_count() as u64);
        lw.u64(lr.words_per_doc() as u64);
        lw.u64(lr.slp().symbol_count() as u64);
        for &word in lr.l_bits_raw() {
            lw.u64(word);
        }
        for &word in lr.r_bits_raw() {
            lw.u64(word);
        }
        w.section(b"GLRX", &lw.buf);
    }

    if let Some(pair) = engine.ilcp_pair() {
        let mut iw = Writer::new();
        write_ilcp_variant(&mut iw, pair.left());
        write_ilcp_variant(&mut iw, pair.right());
        let tag = if pair.starred() { b"ILCS" } else { b"ILCP" };
        w.section(tag, &iw.buf);
    }

    w.buf
}

pub fn save_to_path(engine: &QueryEngine, path: &Path) -> Result<()> {
    fs::write(path, save(engine))?;
    Ok(())
}

/// Deserialize an engine from container bytes.
pub fn load(bytes: &[u8]) -> Result<QueryEngine> {
    let mut r = Reader::new(bytes);
    if r.take(4)? != MAGIC {
        return Err(Error::CorruptIndex("bad magic".into()));
    }
    let version = r.u32()?;
    if version != VERSION {
        return Err(Error::CorruptIndex(format!(
            "unsupported format version {version}"
        )));
    }

    let mut meta: Option<(Method, ProviderKind, usize)> = None;
    let mut docs: Option<Vec<Vec<u8>>> = None;
    let mut global: Option<RlbwtIndex> = None;
    let mut per_doc: Vec<(u64, RlbwtIndex)> = Vec::new();
    let mut grmr: Option<BalancedSlp> = None;
    let mut pdl_raw: Option<(usize, StoredLists)> = None;
    let mut glrx_raw: Option<(usize, usize, Vec<u64>, Vec<u64>)> = None;
    let mut ilcp_pair: Option<IlcpPair> = None;

    while r.remaining() > 0 {
        let tag: [u8; 4] = r.take(4)?.try_into().unwrap();
        let len = r.usize()?;
        let payload = r.take(len)?;
        let mut pr = Reader::new(payload);
        match &tag {
            b"META" => {
                let method = method_from_code(pr.u8()?)?;
                let provider = match pr.u8()? {
                    0 => ProviderKind::Plain,
                    1 => ProviderKind::GrammarDiff,
                    other => {
                        return Err(Error::CorruptIndex(format!(
                            "unknown provider code {other}"
                        )))
                    }
                };
                let threshold = pr.usize()?;
                meta = Some((method, provider, threshold));
            }
            b"COLL" => {
                let t = pr.usize()?;
                let mut bodies = Vec::with_capacity(t);
                for _ in 0..t {
                    let len = pr.usize()?;
                    bodies.push(pr.take(len)?.to_vec());
                }
                docs = Some(bodies);
            }
            b"RIDX" => {
                let (owner, ix) = read_rindex(&mut pr)?;
                if owner == 0 {
                    global = Some(ix);
                } else {
                    per_doc.push((owner, ix));
                }
            }
            b"GRMR" => grmr = Some(read_slp(&mut pr)?),
            b"PDLX" => {
                let threshold = pr.usize()?;
                let count = pr.usize()?;
                let mut lists = Vec::with_capacity(count);
                for _ in 0..count {
                    match pr.u8()? {
                        0 => lists.push(None),
                        1 => {
                            let entries = pr.usize()?;
                            let mut list = Vec::with_capacity(entries);
                            for _ in 0..entries {
                                let doc = pr.u32()?;
                                let freq = pr.u64()?;
                                list.push((doc, freq));
                            }
                            lists.push(Some(list));
                        }
                        other => {
                            return Err(Error::CorruptIndex(format!(
                                "unknown list presence tag {other}"
                            )))
                        }
                    }
                }
                pdl_raw = Some((threshold, lists));
            }
            b"GLRX" => {
                let doc_count = pr.usize()?;
                let wpd = pr.usize()?;
                let count = pr.usize()?;
                let mut l_bits = Vec::with_capacity(count * wpd);
                for _ in 0..count * wpd {
                    l_bits.push(pr.u64()?);
                }
                let mut r_bits = Vec::with_capacity(count * wpd);
                for _ in 0..count * wpd {
                    r_bits.push(pr.u64()?);
                }
                glrx_raw = Some((doc_count, wpd, l_bits, r_bits));
            }
            b"ILCP" | b"ILCS" => {
                let starred = &tag == b"ILCS";
                let left = read_ilcp_variant(&mut pr, Orientation::Left, starred)?;
                let right = read_ilcp_variant(&mut pr, Orientation::Right, starred)?;
                ilcp_pair = Some(IlcpPair::from_parts(left, right));
            }
            _ => {} // forward compatibility: unknown sections are skipped
        }
    }

    let (method, provider, threshold) =
        meta.ok_or_else(|| Error::CorruptIndex("missing META section".into()))?;
    let docs = docs.ok_or_else(|| Error::CorruptIndex("missing COLL section".into()))?;
    let coll = Collection::from_docs(docs)?;
    let global = global.ok_or_else(|| Error::CorruptIndex("missing global RIDX".into()))?;
    if global.len() != coll.total_len() {
        return Err(Error::CorruptIndex("global index length mismatch".into()));
    }

    per_doc.sort_by_key(|&(owner, _)| owner);
    if method.needs_doc_indexes() {
        let expect: Vec<u64> = (1..=coll.doc_count() as u64).collect();
        let got: Vec<u64> = per_doc.iter().map(|&(o, _)| o).collect();
        if got != expect {
            return Err(Error::CorruptIndex("per-document indexes incomplete".into()));
        }
    }
    let crx = CollectionRindex::from_parts(global, per_doc.into_iter().map(|(_, ix)| ix).collect());

    let mut pdl = None;
    let mut lr = None;
    match method {
        Method::Pdl => {
            let slp = grmr.ok_or_else(|| Error::CorruptIndex("missing GRMR section".into()))?;
            let (thr, lists) =
                pdl_raw.ok_or_else(|| Error::CorruptIndex("missing PDLX section".into()))?;
            if thr != threshold {
                return Err(Error::CorruptIndex("threshold mismatch".into()));
            }
            pdl = Some(PdlIndex::from_parts(slp, thr, lists)?);
        }
        Method::GcdaLr => {
            let slp = grmr.ok_or_else(|| Error::CorruptIndex("missing GRMR section".into()))?;
            let (doc_count, wpd, l_bits, r_bits) =
                glrx_raw.ok_or_else(|| Error::CorruptIndex("missing GLRX section".into()))?;
            if doc_count != coll.doc_count() || wpd != doc_count.div_ceil(64).max(1) {
                return Err(Error::CorruptIndex("direction bitvector shape mismatch".into()));
            }
            lr = Some(LrIndex::from_parts(slp, doc_count, l_bits, r_bits)?);
        }
        Method::Ilcp | Method::IlcpStar => {
            let pair =
                ilcp_pair.ok_or_else(|| Error::CorruptIndex("missing ILCP runs".into()))?;
            if pair.starred() != (method == Method::IlcpStar) {
                return Err(Error::CorruptIndex("ILCP variant mismatch".into()));
            }
            return Ok(QueryEngine::from_parts(
                method,
                provider,
                threshold,
                coll,
                crx,
                crate::engine::LoadedPayload {
                    pdl: None,
                    lr: None,
                    ilcp: Some(pair),
                },
            ));
        }
        Method::Sada | Method::Wt | Method::Scan => {}
    }

    Ok(QueryEngine::from_parts(
        method,
        provider,
        threshold,
        coll,
        crx,
        crate::engine::LoadedPayload {
            pdl,
            lr,
            ilcp: None,
        },
    ))
}

pub fn load_from_path(path: &Path) -> Result<QueryEngine> {
    let bytes = fs::read(path)?;
    load(&bytes)
}
