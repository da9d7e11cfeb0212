//! Hash table from q-gram keys to occurrence lists.
//!
//! Keys are stored as (position, length) pointers into the original text;
//! equality is byte-wise equality of the referenced substrings. Open
//! addressing with linear probing over a power-of-two bucket array.

use crate::text::Text;
use crate::{Error, Result};

/// Pointer to a representative occurrence of a q-gram in the text.
/// 1-based start position, length in 1..=255.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QGramKey {
    pub text_pos: u32,
    pub len: u8,
}

impl QGramKey {
    pub fn bytes<'t>(&self, text: &'t Text) -> &'t [u8] {
        text.slice(self.text_pos, self.len as usize)
    }
}

/// One sampled entry of a quick-access list: the value at a percentile of
/// the positions array together with its 1-based index.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QaEntry {
    pub value: u32,
    pub index: u32,
}

/// Count-table value and occurrence list of a single q-gram.
///
/// `positions` holds, in ascending order, the suffix-array ranks of the
/// suffixes immediately preceded by an occurrence of the q-gram.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct OccList {
    pub count_base: u32,
    pub positions: Vec<u32>,
    qa: Vec<QaEntry>,
}

impl OccList {
    pub fn new(count_base: u32, positions: Vec<u32>) -> OccList {
        debug_assert!(positions.windows(2).all(|w| w[0] < w[1]));
        OccList {
            count_base,
            positions,
            qa: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn qa(&self) -> &[QaEntry] {
        &self.qa
    }

    /// Sample `qa_len` (value, index) pairs at consecutive percentiles:
    /// the k-th sample sits at 1-based index ceil(k * len / (qa_len + 1)).
    pub fn build_qa(positions: &[u32], qa_len: usize) -> Vec<QaEntry> {
        if positions.is_empty() || qa_len == 0 {
            return Vec::new();
        }
        let len = positions.len();
        (1..=qa_len)
            .map(|k| {
                let idx = (k * len).div_ceil(qa_len + 1).max(1);
                QaEntry {
                    value: positions[idx - 1],
                    index: idx as u32,
                }
            })
            .collect()
    }

    fn attach_qa(&mut self, config: &StoreConfig) {
        if self.positions.len() >= config.bs_threshold {
            self.qa = Self::build_qa(&self.positions, config.qa_len);
        } else {
            self.qa.clear();
        }
    }

    /// Number of entries <= `pos` (the predecessor count). Dispatches on
    /// the configured strategy; every strategy returns the same value.
    pub fn occ(&self, pos: u32, config: &StoreConfig) -> u32 {
        if self.positions.len() < config.bs_threshold {
            self.occ_linear(pos)
        } else {
            self.occ_qa(pos)
        }
    }

    pub fn occ_linear(&self, pos: u32) -> u32 {
        let mut count = 0;
        for &v in &self.positions {
            if v > pos {
                break;
            }
            count += 1;
        }
        count
    }

    pub fn occ_binary(&self, pos: u32) -> u32 {
        self.positions.partition_point(|&v| v <= pos) as u32
    }

    /// Linear scan of the QA samples to pick a segment, then a bounded
    /// binary search inside it. Falls back to a plain binary search when
    /// no QA list was built.
    pub fn occ_qa(&self, pos: u32) -> u32 {
        let mut lo = 0usize;
        let mut hi = self.positions.len();
        for e in &self.qa {
            if e.value <= pos {
                lo = e.index as usize;
            } else {
                hi = e.index as usize - 1;
                break;
            }
        }
        lo as u32 + self.positions[lo..hi].partition_point(|&v| v <= pos) as u32
    }
}

/// Runtime knobs of the store: QA samples per long list, the list length at
/// which linear search gives way to binary search, and the hash-table load
/// factor bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StoreConfig {
    pub qa_len: usize,
    pub bs_threshold: usize,
    pub max_load: f64,
}

impl Default for StoreConfig {
    fn default() -> Self {
        // bs_threshold 16: roughly one 64-byte cache line of 4-byte ranks.
        StoreConfig {
            qa_len: 16,
            bs_threshold: 16,
            max_load: 0.75,
        }
    }
}

impl StoreConfig {
    pub fn validate(&self) -> Result<()> {
        if self.bs_threshold < 1 {
            return Err(Error::InvalidInput("bs_threshold must be >= 1".into()));
        }
        if !(self.max_load > 0.0 && self.max_load < 1.0) {
            return Err(Error::InvalidInput(
                "max_load must be strictly between 0 and 1".into(),
            ));
        }
        Ok(())
    }
}

const EMPTY: u32 = u32::MAX;

#[derive(Debug, Clone, Copy)]
struct Slot {
    key: QGramKey,
    list: u32, // index into `lists`, EMPTY when vacant
}

const VACANT: Slot = Slot {
    key: QGramKey { text_pos: 0, len: 0 },
    list: EMPTY,
};

/// Open-addressing hash table mapping q-gram byte contents to occurrence
/// lists. Mutable during build only; frozen stores are read-only.
#[derive(Debug, Clone)]
pub struct QGramStore {
    slots: Vec<Slot>,
    lists: Vec<OccList>,
    keys: Vec<QGramKey>,
    config: StoreConfig,
}

fn hash_bytes(bytes: &[u8]) -> u64 {
    // Chunked multiply-rotate hash; any fast byte-string hash works here,
    // the choice affects speed only.
    const M: u64 = 0x9e37_79b9_7f4a_7c15;
    let mut h = (bytes.len() as u64).wrapping_mul(M);
    let mut chunks = bytes.chunks_exact(8);
    for c in &mut chunks {
        let v = u64::from_le_bytes(c.try_into().unwrap());
        h = (h ^ v).wrapping_mul(M).rotate_left(29);
    }
    let mut tail = 0u64;
    for &b in chunks.remainder() {
        tail = (tail << 8) | b as u64;
    }
    h = (h ^ tail).wrapping_mul(M);
    h ^ (h >> 32)
}

impl QGramStore {
    pub fn new(config: StoreConfig) -> QGramStore {
        QGramStore {
            slots: vec![VACANT; 16],
            lists: Vec::new(),
            keys: Vec::new(),
            config,
        }
    }

    pub fn config(&self) -> &StoreConfig {
        &self.config
    }

    /// Number of stored q-grams.
    pub fn len(&self) -> usize {
        self.lists.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lists.is_empty()
    }

    pub fn capacity(&self) -> usize {
        self.slots.len()
    }

    /// Total occurrence-list entries across all keys.
    pub fn total_entries(&self) -> usize {
        self.lists.iter().map(|l| l.len()).sum()
    }

    /// Keys in insertion order, paired with their lists.
    pub fn iter(&self) -> impl Iterator<Item = (&QGramKey, &OccList)> {
        self.keys.iter().zip(self.lists.iter())
    }

    /// Insert a complete occurrence list under a new key. The QA list is
    /// built here when the list is long enough. Duplicate keys (byte-wise
    /// equal substrings) are a logic error.
    pub fn insert(&mut self, text: &Text, key: QGramKey, mut list: OccList) -> Result<()> {
        let bytes = key.bytes(text);
        let slot = self.probe(text, bytes);
        if self.slots[slot].list != EMPTY {
            return Err(Error::DuplicateKey);
        }
        list.attach_qa(&self.config);
        let idx = self.lists.len() as u32;
        self.lists.push(list);
        self.keys.push(key);
        self.slots[slot] = Slot { key, list: idx };
        self.grow_if_needed(text);
        Ok(())
    }

    /// Look up a q-gram by its byte content.
    pub fn lookup(&self, text: &Text, bytes: &[u8]) -> Option<&OccList> {
        debug_assert!(!bytes.is_empty() && bytes.len() <= 255);
        let slot = self.probe(text, bytes);
        let s = &self.slots[slot];
        if s.list == EMPTY {
            None
        } else {
            Some(&self.lists[s.list as usize])
        }
    }

    pub fn contains(&self, text: &Text, bytes: &[u8]) -> bool {
        self.lookup(text, bytes).is_some()
    }

    /// Index of the slot holding `bytes`, or of the vacant slot where it
    /// would be inserted.
    fn probe(&self, text: &Text, bytes: &[u8]) -> usize {
        let mask = self.slots.len() - 1;
        let mut i = hash_bytes(bytes) as usize & mask;
        loop {
            let s = &self.slots[i];
            if s.list == EMPTY {
                return i;
            }
            if s.key.len as usize == bytes.len() && s.key.bytes(text) == bytes {
                return i;
            }
            i = (i + 1) & mask;
        }
    }

    fn grow_if_needed(&mut self, text: &Text) {
        if (self.lists.len() as f64) <= self.config.max_load * self.slots.len() as f64 {
            return;
        }
        let new_cap = self.slots.len() * 2;
        let mut slots = vec![VACANT; new_cap];
        let mask = new_cap - 1;
        for s in &self.slots {
            if s.list == EMPTY {
                continue;
            }
            let mut i = hash_bytes(s.key.bytes(text)) as usize & mask;
            while slots[i].list != EMPTY {
                i = (i + 1) & mask;
            }
            slots[i] = *s;
        }
        self.slots = slots;
    }
}
