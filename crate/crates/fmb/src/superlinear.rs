//! Superlinear-space variant: for every text position, the preceding
//! q-grams of every scheme length (powers of two or Fibonacci numbers) are
//! stored, so a pattern is consumed in O(log m) backward steps.

use crate::build::insert_lists_for_length;
use crate::search::{backward_step, CountResult, SearchRange};
use crate::store::{QGramStore, StoreConfig};
use crate::text::{Pattern, SuffixArray, Text};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SchemeKind {
    Pow2,
    Fibonacci,
}

/// q-gram length scheme: which lengths are stored, capped at `max_len` so
/// lengths fit the 8-bit key field.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Scheme {
    pub kind: SchemeKind,
    pub max_len: u8,
}

/// Fibonacci lengths starting 1, 2, 3, 5, ... up to 233.
pub const FIBONACCI_LENGTHS: [u16; 12] = [1, 2, 3, 5, 8, 13, 21, 34, 55, 89, 144, 233];

impl Scheme {
    pub fn new(kind: SchemeKind, max_len: u16) -> Result<Scheme> {
        let valid = match kind {
            SchemeKind::Pow2 => max_len.is_power_of_two() && max_len <= 128,
            SchemeKind::Fibonacci => FIBONACCI_LENGTHS.contains(&max_len) && max_len <= 233,
        };
        if !valid {
            return Err(Error::InvalidInput(format!(
                "max_len {max_len} is not a valid scheme length"
            )));
        }
        Ok(Scheme { kind, max_len: max_len as u8 })
    }

    pub fn pow2(max_len: u16) -> Result<Scheme> {
        Scheme::new(SchemeKind::Pow2, max_len)
    }

    pub fn fibonacci(max_len: u16) -> Result<Scheme> {
        Scheme::new(SchemeKind::Fibonacci, max_len)
    }

    /// All scheme lengths <= max_len, ascending.
    pub fn length_set(&self) -> Vec<usize> {
        match self.kind {
            SchemeKind::Pow2 => (0..8)
                .map(|e| 1usize << e)
                .take_while(|&l| l <= self.max_len as usize)
                .collect(),
            SchemeKind::Fibonacci => FIBONACCI_LENGTHS
                .iter()
                .map(|&l| l as usize)
                .take_while(|&l| l <= self.max_len as usize)
                .collect(),
        }
    }

    /// Lengths of the q-grams stored for the suffix following position `i`:
    /// all scheme lengths <= min(i, max_len), ascending.
    pub fn lengths_at(&self, i: u32) -> Vec<usize> {
        self.length_set()
            .into_iter()
            .take_while(|&l| l <= i as usize)
            .collect()
    }

    /// Largest scheme length <= min(remaining, max_len); the greedy rule of
    /// the backward search.
    pub fn chunk_len(&self, remaining: usize) -> usize {
        debug_assert!(remaining >= 1);
        let cap = remaining.min(self.max_len as usize);
        match self.kind {
            SchemeKind::Pow2 => 1 << cap.ilog2(),
            SchemeKind::Fibonacci => FIBONACCI_LENGTHS
                .iter()
                .map(|&l| l as usize)
                .take_while(|&l| l <= cap)
                .last()
                .unwrap(),
        }
    }
}

/// Greedy right-to-left pattern decomposition. Chunks are returned in
/// left-to-right order as (1-based start, length) pairs; the search
/// processes them back to front.
pub fn decompose(m: usize, scheme: &Scheme) -> Vec<(usize, usize)> {
    let mut chunks = Vec::new();
    let mut remaining = m;
    while remaining >= 1 {
        let q = scheme.chunk_len(remaining);
        chunks.push((remaining - q + 1, q));
        remaining -= q;
    }
    chunks.reverse();
    chunks
}

/// Index over all scheme-length q-grams of a text.
#[derive(Debug)]
pub struct SuperlinearIndex {
    pub text: Text,
    pub store: QGramStore,
    pub scheme: Scheme,
}

pub fn build_superlinear(
    text: Text,
    scheme: Scheme,
    config: StoreConfig,
) -> Result<SuperlinearIndex> {
    config.validate()?;
    if text.len() + 1 >= u32::MAX as usize {
        return Err(Error::TextTooLarge);
    }
    let sa = SuffixArray::build(&text);
    let lcp = sa.lcp_array(&text);
    let mut store = QGramStore::new(config);
    for len in scheme.length_set() {
        if len <= text.len() {
            insert_lists_for_length(&mut store, &text, &sa, &lcp, len)?;
        }
    }
    Ok(SuperlinearIndex { text, store, scheme })
}

impl SuperlinearIndex {
    /// Backward count over greedy scheme-length chunks.
    pub fn count(&self, pattern: &Pattern) -> CountResult {
        let m = pattern.len();
        let n = self.text.len();
        if m > n {
            return CountResult::rejected();
        }
        let p = pattern.bytes();
        let config = *self.store.config();
        let mut range = SearchRange::full(n);
        let mut steps = 0usize;
        let mut i = m; // unprocessed prefix length
        while i >= 1 {
            let q = self.scheme.chunk_len(i);
            let chunk = &p[i - q..i];
            steps += 1;
            let Some(list) = self.store.lookup(&self.text, chunk) else {
                return CountResult { count: 0, steps, sp: range.sp, ep: range.ep };
            };
            if !backward_step(list, &mut range, &config) {
                return CountResult::from_range(range, steps);
            }
            i -= q;
        }
        CountResult::from_range(range, steps)
    }
}
