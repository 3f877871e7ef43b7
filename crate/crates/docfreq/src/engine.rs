//! One queryable engine per listing method: owns the collection, the
//! r-indexes and the method-specific structures, and dispatches
//! document-listing-with-frequencies queries.

use std::str::FromStr;

use crate::baselines::{scan_freq, SadaIndex, WtIndex};
use crate::collection::Collection;
use crate::error::{Error, Result};
use crate::gcda_lr::LrIndex;
use crate::ilcp::{build_rle, IlcpIndex, IlcpPair, Orientation};
use crate::pdl::PdlIndex;
use crate::pseudoalign::DocFreqQuery;
use crate::rindex::{CollectionRindex, ProviderKind, RlbwtIndex};
use crate::suffix::{build_ilcp, DocFreqs, SuffixStructures};

/// The document-listing-with-frequencies methods.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    /// Precomputed document lists at grammar symbols.
    Pdl,
    /// Grammar-compressed document array with L/R bitvectors.
    GcdaLr,
    /// Run-length interleaved LCP.
    Ilcp,
    /// Double run-length interleaved LCP.
    IlcpStar,
    /// Extreme positions by range-extremum recursion over the
    /// previous/next same-document arrays.
    Sada,
    /// Wavelet-tree rank counting.
    Wt,
    /// Locate every occurrence and tally.
    Scan,
}

impl Method {
    pub const ALL: [Method; 7] = [
        Method::Pdl,
        Method::GcdaLr,
        Method::Ilcp,
        Method::IlcpStar,
        Method::Sada,
        Method::Wt,
        Method::Scan,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Method::Pdl => "pdl",
            Method::GcdaLr => "gcda",
            Method::Ilcp => "ilcp",
            Method::IlcpStar => "ilcp-star",
            Method::Sada => "sada",
            Method::Wt => "wt",
            Method::Scan => "scan",
        }
    }

    /// Whether the method maps frequencies through per-document indexes.
    pub fn needs_doc_indexes(&self) -> bool {
        matches!(
            self,
            Method::GcdaLr | Method::Ilcp | Method::IlcpStar | Method::Sada
        )
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pdl" => Ok(Method::Pdl),
            "gcda" => Ok(Method::GcdaLr),
            "ilcp" => Ok(Method::Ilcp),
            "ilcp-star" => Ok(Method::IlcpStar),
            "sada" => Ok(Method::Sada),
            "wt" => Ok(Method::Wt),
            "scan" => Ok(Method::Scan),
            other => Err(Error::InvalidParameter(format!(
                "unknown method {other:?} (expected pdl, gcda, ilcp, ilcp-star, sada, wt or scan)"
            ))),
        }
    }
}

/// Construction statistics reported by the build command.
#[derive(Debug, Clone, Default)]
pub struct IndexStats {
    pub n: usize,
    pub t: usize,
    /// BWT runs of the concatenation.
    pub r: usize,
    /// Sum of per-document run counts, when per-document indexes exist.
    pub big_r: Option<usize>,
    /// Grammar nonterminals, for the grammar-compressed methods.
    pub nu: Option<usize>,
    /// Interleaved-LCP runs.
    pub rho: Option<usize>,
    /// Merged interleaved-LCP runs.
    pub rho_star: Option<usize>,
    pub bits_per_symbol: f64,
}

impl IndexStats {
    pub fn to_json(&self) -> String {
        fn opt(v: Option<usize>) -> String {
            v.map_or("null".into(), |x| x.to_string())
        }
        format!(
            "{{\"n\":{},\"t\":{},\"r\":{},\"R\":{},\"nu\":{},\"rho\":{},\"rho_star\":{},\"bits_per_symbol\":{:.4}}}",
            self.n,
            self.t,
            self.r,
            opt(self.big_r),
            opt(self.nu),
            opt(self.rho),
            opt(self.rho_star),
            self.bits_per_symbol,
        )
    }
}

/// Method-specific structures recovered from a container file.
pub(crate) struct LoadedPayload {
    pub pdl: Option<PdlIndex>,
    pub lr: Option<LrIndex>,
    pub ilcp: Option<IlcpPair>,
}

/// A built index for one method over one collection.
pub struct QueryEngine {
    method: Method,
    provider: ProviderKind,
    pdl_threshold: usize,
    coll: Collection,
    crx: CollectionRindex,
    pdl: Option<PdlIndex>,
    lr: Option<LrIndex>,
    ilcp: Option<IlcpPair>,
    sada: Option<SadaIndex>,
    wt: Option<WtIndex>,
    stats: IndexStats,
}

impl QueryEngine {
    pub fn build(coll: Collection, method: Method, provider: ProviderKind) -> Self {
        Self::build_with_threshold(coll, method, provider, 0)
    }

    pub fn build_with_threshold(
        coll: Collection,
        method: Method,
        provider: ProviderKind,
        pdl_threshold: usize,
    ) -> Self {
        let structures = SuffixStructures::build(&coll);
        let global =
            RlbwtIndex::build_from_suffixes(coll.concat(), structures.text_suffixes(), provider);
        let crx =
            CollectionRindex::with_global(&coll, global, provider, method.needs_doc_indexes());

        let mut pdl = None;
        let mut lr = None;
        let mut ilcp = None;
        let mut sada = None;
        let mut wt = None;
        let mut nu = None;
        let mut rho = None;
        let mut rho_star = None;
        match method {
            Method::Pdl => {
                let ix = PdlIndex::build(structures.da(), pdl_threshold);
                nu = Some(ix.slp().nonterminal_count());
                pdl = Some(ix);
            }
            Method::GcdaLr => {
                let ix = LrIndex::build(structures.da(), coll.doc_count());
                nu = Some(ix.slp().nonterminal_count());
                lr = Some(ix);
            }
            Method::Ilcp | Method::IlcpStar => {
                let arrays = build_ilcp(&coll, &structures);
                let starred = method == Method::IlcpStar;
                let pair = IlcpPair::build(&structures, &arrays, starred);
                rho = Some(build_rle(arrays.ilcp()).run_count());
                rho_star = Some(
                    IlcpIndex::build(arrays.ilcp(), structures.da(), Orientation::Left, true)
                        .run_count(),
                );
                ilcp = Some(pair);
            }
            Method::Sada => {
                sada = Some(SadaIndex::build(&structures, coll.doc_count()));
            }
            Method::Wt => {
                wt = Some(WtIndex::build(&structures, coll.doc_count()));
            }
            Method::Scan => {}
        }

        let mut engine = Self {
            method,
            provider,
            pdl_threshold,
            coll,
            crx,
            pdl,
            lr,
            ilcp,
            sada,
            wt,
            stats: IndexStats::default(),
        };
        engine.stats = IndexStats {
            n: engine.coll.total_len(),
            t: engine.coll.doc_count(),
            r: engine.crx.global().run_count(),
            big_r: engine
                .crx
                .has_doc_indexes()
                .then(|| engine.crx.doc_run_total()),
            nu,
            rho,
            rho_star,
            bits_per_symbol: engine.size_bytes() as f64 * 8.0 / engine.coll.total_len() as f64,
        };
        engine
    }

    /// Reassemble a deserialized engine; structures the container does not
    /// store (the listing baselines) are rebuilt from the collection.
    pub(crate) fn from_parts(
        method: Method,
        provider: ProviderKind,
        pdl_threshold: usize,
        coll: Collection,
        crx: CollectionRindex,
        payload: LoadedPayload,
    ) -> Self {
        let LoadedPayload { pdl, lr, ilcp } = payload;
        let mut sada = None;
        let mut wt = None;
        if matches!(method, Method::Sada | Method::Wt) {
            let structures = SuffixStructures::build(&coll);
            match method {
                Method::Sada => sada = Some(SadaIndex::build(&structures, coll.doc_count())),
                Method::Wt => wt = Some(WtIndex::build(&structures, coll.doc_count())),
                _ => unreachable!(),
            }
        }
        let mut engine = Self {
            method,
            provider,
            pdl_threshold,
            coll,
            crx,
            pdl,
            lr,
            ilcp,
            sada,
            wt,
            stats: IndexStats::default(),
        };
        engine.stats = IndexStats {
            n: engine.coll.total_len(),
            t: engine.coll.doc_count(),
            r: engine.crx.global().run_count(),
            big_r: engine
                .crx
                .has_doc_indexes()
                .then(|| engine.crx.doc_run_total()),
            nu: engine
                .pdl
                .as_ref()
                .map(|p| p.slp().nonterminal_count())
                .or_else(|| engine.lr.as_ref().map(|l| l.slp().nonterminal_count())),
            rho: engine
                .ilcp
                .as_ref()
                .filter(|p| !p.starred())
                .map(|p| p.left().run_count()),
            rho_star: engine
                .ilcp
                .as_ref()
                .filter(|p| p.starred())
                .map(|p| p.left().run_count()),
            bits_per_symbol: engine.size_bytes() as f64 * 8.0 / engine.coll.total_len() as f64,
        };
        engine
    }

    pub fn method(&self) -> Method {
        self.method
    }

    pub fn provider(&self) -> ProviderKind {
        self.provider
    }

    pub fn pdl_threshold(&self) -> usize {
        self.pdl_threshold
    }

    pub fn collection(&self) -> &Collection {
        &self.coll
    }

    pub fn rindexes(&self) -> &CollectionRindex {
        &self.crx
    }

    pub fn global(&self) -> &RlbwtIndex {
        self.crx.global()
    }

    pub fn pdl_index(&self) -> Option<&PdlIndex> {
        self.pdl.as_ref()
    }

    pub fn lr_index(&self) -> Option<&LrIndex> {
        self.lr.as_ref()
    }

    pub fn ilcp_pair(&self) -> Option<&IlcpPair> {
        self.ilcp.as_ref()
    }

    pub fn stats(&self) -> &IndexStats {
        &self.stats
    }

    /// In-memory footprint of the query-time structures (indexes, not the
    /// raw documents).
    pub fn size_bytes(&self) -> usize {
        self.crx.size_bytes()
            + self.pdl.as_ref().map_or(0, |x| x.size_bytes())
            + self.lr.as_ref().map_or(0, |x| x.size_bytes())
            + self.ilcp.as_ref().map_or(0, |x| x.size_bytes())
            + self.sada.as_ref().map_or(0, |x| x.size_bytes())
            + self.wt.as_ref().map_or(0, |x| x.size_bytes())
    }

    /// Per-document frequencies of `pattern` by this engine's method.
    pub fn doc_freq(&self, pattern: &[u8]) -> Result<DocFreqs> {
        match self.method {
            Method::Pdl => self.pdl.as_ref().unwrap().query(self.crx.global(), pattern),
            Method::GcdaLr => self
                .lr
                .as_ref()
                .unwrap()
                .query(&self.coll, &self.crx, pattern),
            Method::Ilcp | Method::IlcpStar => self
                .ilcp
                .as_ref()
                .unwrap()
                .query(&self.coll, &self.crx, pattern),
            Method::Sada => self
                .sada
                .as_ref()
                .unwrap()
                .query(&self.coll, &self.crx, pattern),
            Method::Wt => self.wt.as_ref().unwrap().query(self.crx.global(), pattern),
            Method::Scan => scan_freq(&self.coll, self.crx.global(), pattern),
        }
    }
}

impl DocFreqQuery for QueryEngine {
    fn doc_freq(&self, pattern: &[u8]) -> Result<DocFreqs> {
        QueryEngine::doc_freq(self, pattern)
    }
}
