//! Shared index-construction helper: turn every distinct substring of a
//! fixed length into a stored occurrence list.

use crate::store::{OccList, QGramKey, QGramStore};
use crate::text::{SuffixArray, Text};
use crate::Result;

/// Insert one occurrence list per distinct substring of length `len`.
///
/// Walks the suffix array once: suffixes sharing a `len`-prefix form a
/// contiguous rank block (suffixes shorter than `len` never join a block,
/// the sentinel breaks the match), so each block yields one key with
/// count_base = block start - 1 and positions = ranks of the suffixes
/// following each occurrence.
pub(crate) fn insert_lists_for_length(
    store: &mut QGramStore,
    text: &Text,
    sa: &SuffixArray,
    lcp: &[u32],
    len: usize,
) -> Result<()> {
    let n = text.len();
    let n1 = n + 1;
    let mut r = 1usize; // 1-based rank
    let mut positions: Vec<u32> = Vec::new();
    while r <= n1 {
        let start_pos = sa.suffix_at(r as u32);
        // Suffix must have `len` payload symbols before the sentinel.
        if start_pos as usize + len > n1 {
            r += 1;
            continue;
        }
        let block_start = r;
        positions.clear();
        positions.push(sa.rank_of(start_pos + len as u32));
        while r < n1 && lcp[r] as u32 >= len as u32 {
            r += 1;
            positions.push(sa.rank_of(sa.suffix_at(r as u32) + len as u32));
        }
        positions.sort_unstable();
        let key = QGramKey {
            text_pos: start_pos,
            len: len as u8,
        };
        store.insert(
            text,
            key,
            OccList::new(block_start as u32 - 1, positions.clone()),
        )?;
        r += 1;
    }
    Ok(())
}

/// Occurrence list of an arbitrary sentinel-free string, materialized from
/// its suffix-array range: count_base = lo - 1 and one rank entry per
/// occurrence. `None` when the string does not occur.
pub(crate) fn list_from_sa_range(text: &Text, sa: &SuffixArray, bytes: &[u8]) -> Option<OccList> {
    let (lo, hi) = sa.range_of(text, bytes)?;
    let mut positions: Vec<u32> = (lo..=hi)
        .map(|r| sa.rank_of(sa.suffix_at(r) + bytes.len() as u32))
        .collect();
    positions.sort_unstable();
    Some(OccList::new(lo - 1, positions))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::store::StoreConfig;

    #[test]
    fn length_blocks_match_sa_ranges() {
        let t = Text::from_bytes(b"bananabandana".to_vec()).unwrap();
        let sa = SuffixArray::build(&t);
        let lcp = sa.lcp_array(&t);
        for len in 1..=4usize {
            let mut store = QGramStore::new(StoreConfig::default());
            insert_lists_for_length(&mut store, &t, &sa, &lcp, len).unwrap();
            // Every distinct substring of this length shows up exactly once
            // and agrees with the independently materialized range list.
            let mut distinct = std::collections::HashSet::new();
            for start in 0..=t.len() - len {
                distinct.insert(&t.payload()[start..start + len]);
            }
            assert_eq!(store.len(), distinct.len());
            for bytes in distinct {
                let stored = store.lookup(&t, bytes).expect("present");
                let direct = list_from_sa_range(&t, &sa, bytes).expect("occurs");
                assert_eq!(stored.count_base, direct.count_base);
                assert_eq!(stored.positions, direct.positions);
            }
        }
    }
}
