//! Crate-wide error type.

use std::fmt;
use std::io;

/// Errors surfaced by index construction, queries and the CLI.
#[derive(Debug)]
pub enum Error {
    /// The manifest file contained no document paths.
    EmptyManifest,
    /// A document body contains a reserved sentinel byte (0x00 or 0x01).
    SentinelByteInInput { file: String, offset: usize },
    /// A manifest entry could not be read.
    UnreadableFile { file: String, source: io::Error },
    /// A FASTA input is structurally invalid.
    InvalidFasta { file: String, reason: String },
    /// An index, position or document id is outside its valid range.
    OutOfRange {
        what: &'static str,
        value: usize,
        limit: usize,
    },
    /// select(j) was asked for more occurrences than the sequence holds.
    SelectOverflow { requested: usize, available: usize },
    /// A range query was given an empty range.
    EmptyRange,
    /// A range operation was given an empty input sequence.
    EmptyInput,
    /// A document-listing operation received an empty suffix-array interval.
    EmptyInterval,
    /// The query pattern is empty.
    EmptyPattern,
    /// The query pattern contains a byte below 0x02.
    InvalidPatternByte { byte: u8, position: usize },
    /// A suffix-array position mapped outside the expected document.
    DocMismatch { doc: u32, position: usize },
    /// A read is shorter than the requested k-mer length.
    ReadShorterThanK { read_len: usize, k: usize },
    /// A generator or CLI parameter is out of its accepted range.
    InvalidParameter(String),
    /// An index file is malformed.
    CorruptIndex(String),
    /// Underlying I/O failure.
    Io(io::Error),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::EmptyManifest => write!(f, "manifest contains no document paths"),
            Error::SentinelByteInInput { file, offset } => {
                write!(f, "{file}: reserved sentinel byte at offset {offset}")
            }
            Error::UnreadableFile { file, source } => write!(f, "{file}: {source}"),
            Error::InvalidFasta { file, reason } => write!(f, "{file}: invalid FASTA: {reason}"),
            Error::OutOfRange { what, value, limit } => {
                write!(f, "{what} {value} out of range (limit {limit})")
            }
            Error::SelectOverflow {
                requested,
                available,
            } => write!(f, "select for occurrence {requested} of {available}"),
            Error::EmptyRange => write!(f, "empty range"),
            Error::EmptyInput => write!(f, "empty input sequence"),
            Error::EmptyInterval => write!(f, "empty suffix-array interval"),
            Error::EmptyPattern => write!(f, "empty pattern"),
            Error::InvalidPatternByte { byte, position } => {
                write!(f, "pattern byte {byte:#04x} at position {position} is reserved")
            }
            Error::DocMismatch { doc, position } => {
                write!(f, "position {position} does not belong to document {doc}")
            }
            Error::ReadShorterThanK { read_len, k } => {
                write!(f, "read of length {read_len} is shorter than k = {k}")
            }
            Error::InvalidParameter(msg) => write!(f, "invalid parameter: {msg}"),
            Error::CorruptIndex(msg) => write!(f, "corrupt index file: {msg}"),
            Error::Io(e) => write!(f, "I/O error: {e}"),
        }
    }
}

impl std::error::Error for Error {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            Error::UnreadableFile { source, .. } => Some(source),
            Error::Io(e) => Some(e),
            _ => None,
        }
    }
}

impl From<io::Error> for Error {
    fn from(e: io::Error) -> Self {
        Error::Io(e)
    }
}

pub type Result<T> = std::result::Result<T, Error>;
