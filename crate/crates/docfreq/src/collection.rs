//! Document collection: sentinel-terminated concatenation, boundary
//! bitvector and global/local coordinate mappings.
//!
//! Every document body is followed by the per-document sentinel 0x01 and the
//! whole concatenation ends with the single global sentinel 0x00. The two
//! sentinel levels keep the global terminator unique, prevent matches from
//! crossing document boundaries, and preserve the relative order of a
//! document's suffixes between the global and per-document suffix arrays.

use std::fs;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::succinct::RankSelectBitvector;

/// Separates a document body from its successor.
pub const DOC_SENTINEL: u8 = 0x01;
/// Terminates the whole concatenation.
pub const GLOBAL_SENTINEL: u8 = 0x00;
/// Smallest byte allowed in document bodies and query patterns.
pub const MIN_SYMBOL: u8 = 0x02;

/// 1-based document identifier.
pub type DocId = u32;

/// Input format accepted by [`Collection::ingest`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InputFormat {
    /// Raw bytes, one document per file.
    Plain,
    /// FASTA; headers are stripped and all sequence lines of a file are
    /// concatenated into one document.
    Fasta,
}

/// An ordered set of byte documents and their sentinel-terminated
/// concatenation. Immutable once built.
#[derive(Debug)]
pub struct Collection {
    docs: Vec<Vec<u8>>,
    concat: Vec<u8>,
    /// 1-based start offset of each document in the concatenation.
    doc_starts: Vec<usize>,
    boundary: RankSelectBitvector,
    sigma: usize,
}

impl Collection {
    /// Build a collection from in-memory document bodies.
    pub fn from_docs(docs: Vec<Vec<u8>>) -> Result<Self> {
        if docs.is_empty() {
            return Err(Error::EmptyManifest);
        }
        for (k, d) in docs.iter().enumerate() {
            if d.is_empty() {
                return Err(Error::InvalidParameter(format!("document {} is empty", k + 1)));
            }
            if let Some(off) = d.iter().position(|&b| b < MIN_SYMBOL) {
                return Err(Error::SentinelByteInInput {
                    file: format!("document {}", k + 1),
                    offset: off,
                });
            }
        }
        if docs.len() >= u32::MAX as usize {
            return Err(Error::InvalidParameter("too many documents".into()));
        }

        let total: usize = docs.iter().map(|d| d.len()).sum();
        let n = total + docs.len() + 1;
        let mut concat = Vec::with_capacity(n);
        let mut doc_starts = Vec::with_capacity(docs.len());
        for d in &docs {
            doc_starts.push(concat.len() + 1);
            concat.extend_from_slice(d);
            concat.push(DOC_SENTINEL);
        }
        concat.push(GLOBAL_SENTINEL);
        debug_assert_eq!(concat.len(), n);

        let boundary = RankSelectBitvector::from_set_positions(n, &doc_starts);

        let mut seen = [false; 256];
        for d in &docs {
            for &b in d {
                seen[b as usize] = true;
            }
        }
        let sigma = seen.iter().filter(|&&s| s).count();

        Ok(Self {
            docs,
            concat,
            doc_starts,
            boundary,
            sigma,
        })
    }

    /// Read a manifest (UTF-8, one path per line, `#` comments) and build a
    /// collection with one document per listed file, order preserved.
    /// Relative paths are resolved against the manifest's directory.
    pub fn ingest(manifest: &Path, format: InputFormat) -> Result<Self> {
        let text = fs::read_to_string(manifest).map_err(|e| Error::UnreadableFile {
            file: manifest.display().to_string(),
            source: e,
        })?;
        let base = manifest.parent().unwrap_or_else(|| Path::new("."));
        let mut paths = Vec::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let p = PathBuf::from(line);
            paths.push(if p.is_absolute() { p } else { base.join(p) });
        }
        Self::ingest_paths(&paths, format)
    }

    /// Build a collection from explicit file paths.
    pub fn ingest_paths(paths: &[PathBuf], format: InputFormat) -> Result<Self> {
        if paths.is_empty() {
            return Err(Error::EmptyManifest);
        }
        let mut docs = Vec::with_capacity(paths.len());
        for p in paths {
            let name = p.display().to_string();
            let raw = fs::read(p).map_err(|e| Error::UnreadableFile {
                file: name.clone(),
                source: e,
            })?;
            let body = match format {
                InputFormat::Plain => {
                    if let Some(off) = raw.iter().position(|&b| b < MIN_SYMBOL) {
                        return Err(Error::SentinelByteInInput {
                            file: name,
                            offset: off,
                        });
                    }
                    raw
                }
                InputFormat::Fasta => parse_fasta(&name, &raw)?,
            };
            if body.is_empty() {
                return Err(Error::InvalidParameter(format!("{name}: empty document")));
            }
            docs.push(body);
        }
        Self::from_docs(docs)
    }

    /// Number of documents `t`.
    pub fn doc_count(&self) -> usize {
        self.docs.len()
    }

    /// Length `n` of the sentinel-terminated concatenation.
    pub fn total_len(&self) -> usize {
        self.concat.len()
    }

    /// Number of distinct symbols in the document bodies.
    pub fn sigma(&self) -> usize {
        self.sigma
    }

    /// The concatenation including sentinels.
    pub fn concat(&self) -> &[u8] {
        &self.concat
    }

    /// Body of `doc` (1-based), without its sentinel.
    pub fn doc_body(&self, doc: DocId) -> &[u8] {
        &self.docs[doc as usize - 1]
    }

    pub fn doc_bodies(&self) -> &[Vec<u8>] {
        &self.docs
    }

    /// Body of `doc` followed by the per-document sentinel; the text the
    /// per-document index is built on.
    pub fn doc_text(&self, doc: DocId) -> Vec<u8> {
        let mut t = self.docs[doc as usize - 1].clone();
        t.push(DOC_SENTINEL);
        t
    }

    /// 1-based start offset of `doc` in the concatenation.
    pub fn doc_start(&self, doc: DocId) -> usize {
        self.doc_starts[doc as usize - 1]
    }

    /// Bitvector with a one at the first position of each document.
    pub fn boundary_bitvector(&self) -> &RankSelectBitvector {
        &self.boundary
    }

    fn check_global(&self, global_pos: usize) -> Result<()> {
        if global_pos == 0 || global_pos > self.concat.len() {
            return Err(Error::OutOfRange {
                what: "global position",
                value: global_pos,
                limit: self.concat.len(),
            });
        }
        Ok(())
    }

    /// Document owning `global_pos`; the trailing global sentinel belongs to
    /// the last document.
    pub fn doc_of(&self, global_pos: usize) -> Result<DocId> {
        self.check_global(global_pos)?;
        Ok(self.boundary.rank1_raw(global_pos) as DocId)
    }

    /// Map a global position to `(doc, local)` with a 1-based local offset.
    pub fn to_local(&self, global_pos: usize) -> Result<(DocId, usize)> {
        let doc = self.doc_of(global_pos)?;
        Ok((doc, global_pos - self.doc_start(doc) + 1))
    }

    /// Inverse of [`Collection::to_local`].
    pub fn to_global(&self, doc: DocId, local: usize) -> Result<usize> {
        if doc == 0 || doc as usize > self.docs.len() {
            return Err(Error::OutOfRange {
                what: "document id",
                value: doc as usize,
                limit: self.docs.len(),
            });
        }
        // the local range covers body + sentinel, plus the global sentinel
        // for the last document
        let mut limit = self.docs[doc as usize - 1].len() + 1;
        if doc as usize == self.docs.len() {
            limit += 1;
        }
        if local == 0 || local > limit {
            return Err(Error::OutOfRange {
                what: "local position",
                value: local,
                limit,
            });
        }
        Ok(self.doc_start(doc) + local - 1)
    }
}

fn parse_fasta(file: &str, raw: &[u8]) -> Result<Vec<u8>> {
    let mut body = Vec::new();
    let mut saw_header = false;
    for line in raw.split(|&b| b == b'\n') {
        let line = match line.last() {
            Some(b'\r') => &line[..line.len() - 1],
            _ => line,
        };
        if line.is_empty() {
            continue;
        }
        if line[0] == b'>' {
            saw_header = true;
            continue;
        }
        if !saw_header {
            return Err(Error::InvalidFasta {
                file: file.into(),
                reason: "sequence data before first header".into(),
            });
        }
        if let Some(off) = line.iter().position(|&b| b < MIN_SYMBOL) {
            return Err(Error::SentinelByteInInput {
                file: file.into(),
                offset: off,
            });
        }
        body.extend_from_slice(line);
    }
    if !saw_header {
        return Err(Error::InvalidFasta {
            file: file.into(),
            reason: "no FASTA header found".into(),
        });
    }
    Ok(body)
}
