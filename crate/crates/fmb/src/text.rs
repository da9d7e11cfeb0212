//! Sentinel-terminated text, suffix array construction and the brute-force
//! counting oracle used to cross-check every index variant.

use std::cmp::Ordering;
use std::path::Path;

use crate::{Error, Result};

/// The unique smallest symbol appended to every text. Payload bytes must be
/// in 1..=255 so the sentinel sorts before everything else.
pub const SENTINEL: u8 = 0;

/// An indexed byte sequence. The sentinel is stored at position `n + 1`
/// (positions are 1-based throughout).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Text {
    bytes: Vec<u8>, // payload followed by SENTINEL
}

impl Text {
    pub fn from_bytes(payload: impl Into<Vec<u8>>) -> Result<Self> {
        let mut bytes = payload.into();
        if bytes.is_empty() {
            return Err(Error::InvalidInput("text payload is empty".into()));
        }
        if bytes.contains(&SENTINEL) {
            return Err(Error::InvalidInput(
                "text payload contains a zero byte".into(),
            ));
        }
        bytes.push(SENTINEL);
        Ok(Text { bytes })
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        let payload = std::fs::read(path)?;
        Self::from_bytes(payload)
    }

    /// Payload length `n` (sentinel excluded).
    pub fn len(&self) -> usize {
        self.bytes.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        false // n >= 1 by construction
    }

    pub fn payload(&self) -> &[u8] {
        &self.bytes[..self.bytes.len() - 1]
    }

    /// Payload plus sentinel, length `n + 1`.
    pub fn with_sentinel(&self) -> &[u8] {
        &self.bytes
    }

    /// Substring `T[pos ... pos+len-1]` with a 1-based start position.
    /// May reach into the sentinel.
    pub fn slice(&self, pos: u32, len: usize) -> &[u8] {
        let start = pos as usize - 1;
        &self.bytes[start..start + len]
    }

    /// Suffix starting at the 1-based position `pos`, sentinel included.
    pub fn suffix(&self, pos: u32) -> &[u8] {
        &self.bytes[pos as usize - 1..]
    }
}

/// A pattern to count; sentinel-free and non-empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pattern {
    bytes: Vec<u8>,
}

impl Pattern {
    pub fn new(bytes: impl Into<Vec<u8>>) -> Result<Self> {
        let bytes = bytes.into();
        if bytes.is_empty() {
            return Err(Error::InvalidInput("pattern is empty".into()));
        }
        if bytes.contains(&SENTINEL) {
            return Err(Error::InvalidInput(
                "pattern contains a zero byte".into(),
            ));
        }
        Ok(Pattern { bytes })
    }

    pub fn len(&self) -> usize {
        self.bytes.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn bytes(&self) -> &[u8] {
        &self.bytes
    }
}

/// Sorted suffix order of the sentinel-terminated text plus its inverse.
///
/// `sa` holds 1-based start positions; rank `r` (1-based) is the r-th
/// smallest suffix. `rank_of(sa[r]) == r` for every rank.
#[derive(Debug, Clone)]
pub struct SuffixArray {
    sa: Vec<u32>,   // sa[r-1] = 1-based start position of the rank-r suffix
    rank: Vec<u32>, // rank[pos-1] = 1-based rank of the suffix at pos
}

impl SuffixArray {
    /// Prefix-doubling construction, O(n log^2 n) worst case. Deterministic.
    pub fn build(text: &Text) -> SuffixArray {
        let s = text.with_sentinel();
        let n1 = s.len();
        let mut sa: Vec<u32> = (0..n1 as u32).collect();
        let mut rank: Vec<u32> = s.iter().map(|&b| b as u32).collect();
        let mut next = vec![0u32; n1];

        let mut k = 1usize;
        loop {
            let key = |i: u32| -> u64 {
                let i = i as usize;
                let hi = rank[i] as u64;
                let lo = if i + k < n1 { rank[i + k] as u64 + 1 } else { 0 };
                (hi << 32) | lo
            };
            sa.sort_unstable_by_key(|&i| key(i));

            next[sa[0] as usize] = 0;
            let mut prev_key = key(sa[0]);
            for w in 1..n1 {
                let cur_key = key(sa[w]);
                next[sa[w] as usize] =
                    next[sa[w - 1] as usize] + u32::from(cur_key != prev_key);
                prev_key = cur_key;
            }
            std::mem::swap(&mut rank, &mut next);
            if rank[sa[n1 - 1] as usize] as usize == n1 - 1 {
                break;
            }
            k <<= 1;
        }

        // Shift to the 1-based convention.
        for v in sa.iter_mut() {
            *v += 1;
        }
        for v in rank.iter_mut() {
            *v += 1;
        }
        SuffixArray { sa, rank }
    }

    /// 1-based start positions in rank order.
    pub fn positions(&self) -> &[u32] {
        &self.sa
    }

    /// 1-based rank of the suffix starting at `pos`.
    pub fn rank_of(&self, pos: u32) -> u32 {
        self.rank[pos as usize - 1]
    }

    /// Start position of the suffix with the given 1-based rank.
    pub fn suffix_at(&self, rank: u32) -> u32 {
        self.sa[rank as usize - 1]
    }

    pub fn len(&self) -> usize {
        self.sa.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sa.is_empty()
    }

    /// Maximal rank interval `[lo, hi]` (1-based, inclusive) of suffixes
    /// prefixed by `needle`, or `None` when the string does not occur.
    pub fn range_of(&self, text: &Text, needle: &[u8]) -> Option<(u32, u32)> {
        debug_assert!(!needle.is_empty());
        let lo = self
            .sa
            .partition_point(|&p| prefix_cmp(text.suffix(p), needle) == Ordering::Less);
        let hi = self
            .sa
            .partition_point(|&p| prefix_cmp(text.suffix(p), needle) != Ordering::Greater);
        if lo == hi {
            None
        } else {
            Some((lo as u32 + 1, hi as u32))
        }
    }

    /// Kasai LCP array: `lcp[r-1]` is the longest common prefix length of the
    /// suffixes at ranks `r` and `r-1`; `lcp[0] = 0`.
    pub fn lcp_array(&self, text: &Text) -> Vec<u32> {
        let s = text.with_sentinel();
        let n1 = s.len();
        let mut lcp = vec![0u32; n1];
        let mut h = 0usize;
        for pos0 in 0..n1 {
            let r = self.rank[pos0] as usize; // 1-based
            if r == 1 {
                h = 0;
                continue;
            }
            let prev0 = self.sa[r - 2] as usize - 1;
            while pos0 + h < n1 && prev0 + h < n1 && s[pos0 + h] == s[prev0 + h] {
                h += 1;
            }
            lcp[r - 1] = h as u32;
            h = h.saturating_sub(1);
        }
        lcp
    }
}

/// Compare a (sentinel-terminated) suffix against a plain needle, treating
/// the needle as a prefix: equal means the suffix starts with the needle.
fn prefix_cmp(suffix: &[u8], needle: &[u8]) -> Ordering {
    let l = suffix.len().min(needle.len());
    match suffix[..l].cmp(&needle[..l]) {
        Ordering::Equal if suffix.len() < needle.len() => Ordering::Less,
        ord => ord,
    }
}

/// Number of (possibly overlapping) occurrences of `p` in the payload, by
/// direct sliding comparison. The independent oracle for everything else.
pub fn naive_count(text: &Text, p: &Pattern) -> usize {
    let needle = p.bytes();
    text.payload()
        .windows(needle.len())
        .filter(|w| *w == needle)
        .count()
}
