//! A full-text index answering count queries by backward search over
//! variable-length q-grams instead of single symbols, trading space for
//! far fewer cache misses per query.
//!
//! Two variants are provided:
//!
//! * [`superlinear`]: stores, for every text position, the preceding
//!   q-grams of every power-of-2 (or Fibonacci) length. A pattern of
//!   length m is consumed in O(log m) backward steps.
//! * [`linear`]: partitions the text at (q, p)-minimizer positions and
//!   stores only the gap q-grams plus all unigrams.
//!
//! Both variants keep, per stored q-gram, its count-table value and the
//! ascending list of suffix-array ranks preceded by it; the predecessor
//! (`Occ`) query on a list runs as a linear scan, or a quick-access-list
//! assisted binary search for long lists.

pub mod bench;
mod build;
pub mod format;
pub mod linear;
mod search;
pub mod store;
pub mod superlinear;
pub mod text;

pub use search::{CountResult, SearchRange};

use text::Pattern;

/// Errors across the library. I/O, format and usage problems are kept
/// distinct so the CLI can map them to separate exit codes.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("duplicate q-gram key")]
    DuplicateKey,
    #[error("text too large: n + 1 must fit in 32 bits")]
    TextTooLarge,
    #[error("bad magic: not an index file")]
    BadMagic,
    #[error("unsupported format version {0}")]
    UnsupportedVersion(u8),
    #[error("truncated index stream")]
    Truncated,
    #[error("corrupt index: {0}")]
    Corrupt(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Either index variant, as loaded from a serialized file.
#[derive(Debug)]
pub enum Index {
    Superlinear(superlinear::SuperlinearIndex),
    Linear(linear::LinearIndex),
}

impl Index {
    pub fn count(&self, pattern: &Pattern) -> CountResult {
        match self {
            Index::Superlinear(idx) => idx.count(pattern),
            Index::Linear(idx) => idx.count(pattern),
        }
    }

    pub fn text(&self) -> &text::Text {
        match self {
            Index::Superlinear(idx) => &idx.text,
            Index::Linear(idx) => &idx.text,
        }
    }

    pub fn store(&self) -> &store::QGramStore {
        match self {
            Index::Superlinear(idx) => &idx.store,
            Index::Linear(idx) => &idx.store,
        }
    }
}
