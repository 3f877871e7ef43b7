//! Read assignment over the document-listing indexes: the k-mer criterion
//! (a document qualifies when some k-mer of the read occurs in it and every
//! other k-mer occurs in it or nowhere) and the maximal-run criterion
//! (backward-search the read, report the frequencies of every maximal
//! matching segment of length at least k).

use std::collections::BTreeSet;

use crate::collection::{DocId, MIN_SYMBOL};
use crate::error::{Error, Result};
use crate::rindex::RlbwtIndex;
use crate::suffix::DocFreqs;

/// A queryable document-listing-with-frequencies method.
pub trait DocFreqQuery {
    fn doc_freq(&self, pattern: &[u8]) -> Result<DocFreqs>;
}

/// Assignment outcome for one read.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Status {
    /// Exactly one document satisfies the criterion.
    Assigned(DocId),
    /// Several documents satisfy it.
    Ambiguous(Vec<DocId>),
    Unassigned,
}

/// Term frequencies of one evidence segment of the read (1-based, inclusive
/// coordinates in the read).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SegmentEvidence {
    pub start: usize,
    pub end: usize,
    pub freqs: DocFreqs,
    /// the segment contained a k-mer treated as never matching (an 'N' or
    /// reserved byte)
    pub contains_n: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assignment {
    pub status: Status,
    pub evidence: Vec<SegmentEvidence>,
}

/// Which criterion decides the assignment.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Criterion {
    Kmer,
    MaxRun,
}

fn revcomp(read: &[u8]) -> Vec<u8> {
    read.iter()
        .rev()
        .map(|&b| match b {
            b'A' => b'T',
            b'T' => b'A',
            b'C' => b'G',
            b'G' => b'C',
            b'a' => b't',
            b't' => b'a',
            b'c' => b'g',
            b'g' => b'c',
            other => other,
        })
        .collect()
}

/// k-mers containing 'N' (or a reserved byte) are treated as occurring
/// nowhere and flagged in the evidence.
fn kmer_is_searchable(kmer: &[u8]) -> bool {
    kmer.iter().all(|&b| b >= MIN_SYMBOL && b != b'N' && b != b'n')
}

/// Assign a read by the k-mer criterion: document i qualifies iff some
/// k-mer of the read occurs in it and every other k-mer occurs in it or
/// occurs nowhere. The per-k-mer document sets come from full-pattern
/// queries against `method`, so the outcome is independent of which
/// listing method backs it.
pub fn kmer_assign(
    method: &dyn DocFreqQuery,
    read: &[u8],
    k: usize,
    rc: bool,
) -> Result<Assignment> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be positive".into()));
    }
    if read.len() < k {
        return Err(Error::ReadShorterThanK {
            read_len: read.len(),
            k,
        });
    }

    let mut kmer_docs: Vec<DocFreqs> = Vec::with_capacity(read.len() - k + 1);
    let mut kmer_flags: Vec<bool> = Vec::with_capacity(read.len() - k + 1);
    for i in 0..=read.len() - k {
        let kmer = &read[i..i + k];
        let mut freqs = DocFreqs::new();
        let mut flagged = false;
        if kmer_is_searchable(kmer) {
            freqs = method.doc_freq(kmer)?;
            if rc {
                for (d, f) in method.doc_freq(&revcomp(kmer))? {
                    *freqs.entry(d).or_insert(0) += f;
                }
            }
        } else {
            flagged = true;
        }
        kmer_docs.push(freqs);
        kmer_flags.push(flagged);
    }

    let candidates: BTreeSet<DocId> = kmer_docs.iter().flat_map(|f| f.keys().copied()).collect();
    let qualifying: Vec<DocId> = candidates
        .into_iter()
        .filter(|d| {
            kmer_docs
                .iter()
                .all(|docs| docs.is_empty() || docs.contains_key(d))
        })
        .collect();

    // evidence: maximal runs of consecutive k-mers with the same document set
    let mut evidence: Vec<SegmentEvidence> = Vec::new();
    for (i, freqs) in kmer_docs.iter().enumerate() {
        let docs: Vec<DocId> = freqs.keys().copied().collect();
        match evidence.last_mut() {
            Some(seg)
                if seg.end == i + k - 1 + 1 - 1
                    && seg.freqs.keys().copied().collect::<Vec<_>>() == docs
                    && seg.contains_n == kmer_flags[i] =>
            {
                seg.end = i + k;
                for (d, f) in freqs {
                    *seg.freqs.entry(*d).or_insert(0) += f;
                }
            }
            _ => evidence.push(SegmentEvidence {
                start: i + 1,
                end: i + k,
                freqs: freqs.clone(),
                contains_n: kmer_flags[i],
            }),
        }
    }

    Ok(Assignment {
        status: status_of(&qualifying),
        evidence,
    })
}

/// Assign a read by maximal runs of matches: backward-search the read until
/// the interval empties, report the frequencies of the matched suffix when
/// it is at least k long, and restart on the remaining prefix. The read is
/// assigned when every reported segment lists the same single document.
pub fn maxrun_assign(
    global: &RlbwtIndex,
    method: &dyn DocFreqQuery,
    read: &[u8],
    k: usize,
    rc: bool,
) -> Result<Assignment> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be positive".into()));
    }
    if read.len() < k {
        return Err(Error::ReadShorterThanK {
            read_len: read.len(),
            k,
        });
    }

    let mut evidence = maxrun_segments(global, method, read, k)?;
    if rc {
        let rc_read = revcomp(read);
        let n = read.len();
        for seg in maxrun_segments(global, method, &rc_read, k)? {
            // translate back to forward-read coordinates
            evidence.push(SegmentEvidence {
                start: n - seg.end + 1,
                end: n - seg.start + 1,
                freqs: seg.freqs,
                contains_n: seg.contains_n,
            });
        }
        evidence.sort_by_key(|s| (s.start, s.end));
    }

    let status = if evidence.is_empty() {
        Status::Unassigned
    } else {
        let single: BTreeSet<DocId> = evidence
            .iter()
            .filter(|s| s.freqs.len() == 1)
            .map(|s| *s.freqs.keys().next().unwrap())
            .collect();
        if single.len() == 1 && evidence.iter().all(|s| s.freqs.len() == 1) {
            Status::Assigned(*single.iter().next().unwrap())
        } else {
            let union: BTreeSet<DocId> =
                evidence.iter().flat_map(|s| s.freqs.keys().copied()).collect();
            Status::Ambiguous(union.into_iter().collect())
        }
    };
    Ok(Assignment { status, evidence })
}

fn maxrun_segments(
    global: &RlbwtIndex,
    method: &dyn DocFreqQuery,
    read: &[u8],
    k: usize,
) -> Result<Vec<SegmentEvidence>> {
    let mut segments = Vec::new();
    let mut hi = read.len();
    while hi >= 1 {
        let mut j = hi;
        let mut iv = global.full_interval();
        while j >= 1 {
            let b = read[j - 1];
            if b < MIN_SYMBOL {
                break;
            }
            match global.extend_backward(&iv, b) {
                Some(next) => {
                    iv = next;
                    j -= 1;
                }
                None => break,
            }
        }
        // matched segment is read[j+1..=hi]
        if hi - j >= k {
            let freqs = method.doc_freq(&read[j..hi])?;
            segments.push(SegmentEvidence {
                start: j + 1,
                end: hi,
                freqs,
                contains_n: false,
            });
        }
        hi = if j == hi { hi - 1 } else { j };
    }
    segments.reverse();
    Ok(segments)
}

fn status_of(qualifying: &[DocId]) -> Status {
    match qualifying.len() {
        0 => Status::Unassigned,
        1 => Status::Assigned(qualifying[0]),
        _ => Status::Ambiguous(qualifying.to_vec()),
    }
}
