//! Linear-space variant: the text is partitioned at (q, p)-minimizer start
//! positions; only the gap q-grams between consecutive minimizers plus all
//! unigrams are stored. A pattern is partitioned the same way at query
//! time, so matching gap q-grams are resolved with one backward step each.

use crate::build::{insert_lists_for_length, list_from_sa_range};
use crate::search::{backward_step, CountResult, SearchRange};
use crate::store::{QGramKey, QGramStore, StoreConfig};
use crate::text::{Pattern, SuffixArray, Text};
use crate::{Error, Result};

/// Window length q and minimizer length p, 1 <= p <= q <= 255.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MinimizerParams {
    pub q: u8,
    pub p: u8,
}

impl MinimizerParams {
    pub fn new(q: u16, p: u16) -> Result<MinimizerParams> {
        if !(1 <= p && p <= q && q <= 255) {
            return Err(Error::InvalidInput(format!(
                "minimizer parameters must satisfy 1 <= p <= q <= 255, got q={q} p={p}"
            )));
        }
        Ok(MinimizerParams { q: q as u8, p: p as u8 })
    }
}

/// Strictly ascending 1-based start positions of (q, p)-minimizers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinimizerSet {
    positions: Vec<u32>,
}

impl MinimizerSet {
    pub fn positions(&self) -> &[u32] {
        &self.positions
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    /// Mean distance between consecutive minimizer start positions.
    pub fn average_gap(&self) -> Option<f64> {
        let first = *self.positions.first()?;
        let last = *self.positions.last()?;
        if self.positions.len() < 2 {
            return None;
        }
        Some((last - first) as f64 / (self.positions.len() - 1) as f64)
    }
}

/// Start positions of the (q, p)-minimizers of `s`: for every length-q
/// window, the leftmost lexicographically smallest p-gram. Empty when
/// |s| < q.
pub fn minimizer_positions(s: &[u8], params: MinimizerParams) -> MinimizerSet {
    let q = params.q as usize;
    let p = params.p as usize;
    let mut positions: Vec<u32> = Vec::new();
    if s.len() < q {
        return MinimizerSet { positions };
    }
    for t in 0..=s.len() - q {
        let window = &s[t..t + q];
        let mut best = 0usize;
        for j in 1..=q - p {
            if window[j..j + p] < window[best..best + p] {
                best = j;
            }
        }
        let pos = (t + best) as u32 + 1;
        if positions.last() != Some(&pos) {
            // Selected positions are non-decreasing across windows, so a
            // last-element check is enough to deduplicate.
            debug_assert!(positions.last().is_none_or(|&prev| prev < pos));
            positions.push(pos);
        }
    }
    MinimizerSet { positions }
}

/// Index over the minimizer-delimited gap q-grams and all unigrams.
#[derive(Debug)]
pub struct LinearIndex {
    pub text: Text,
    pub store: QGramStore,
    pub params: MinimizerParams,
    pub text_minimizers: MinimizerSet,
}

pub fn build_linear(
    text: Text,
    params: MinimizerParams,
    config: StoreConfig,
) -> Result<LinearIndex> {
    config.validate()?;
    if text.len() + 1 >= u32::MAX as usize {
        return Err(Error::TextTooLarge);
    }
    let sa = SuffixArray::build(&text);
    let lcp = sa.lcp_array(&text);
    let mut store = QGramStore::new(config);
    insert_lists_for_length(&mut store, &text, &sa, &lcp, 1)?;

    let minimizers = minimizer_positions(text.payload(), params);
    for pair in minimizers.positions().windows(2) {
        let (prev, cur) = (pair[0], pair[1]);
        let gap = (cur - prev) as usize;
        if gap <= 1 {
            continue; // covered by unigrams
        }
        let bytes = text.slice(prev, gap);
        if store.contains(&text, bytes) {
            continue;
        }
        let list = list_from_sa_range(&text, &sa, bytes)
            .expect("gap string is a text substring, so it occurs");
        store.insert(&text, QGramKey { text_pos: prev, len: gap as u8 }, list)?;
    }

    Ok(LinearIndex {
        text,
        store,
        params,
        text_minimizers: minimizers,
    })
}

impl LinearIndex {
    /// Backward count: unigram steps over the pattern suffix past its last
    /// minimizer, one step per gap q-gram between consecutive minimizers,
    /// then unigram steps over the prefix before the first minimizer.
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

        let minis = minimizer_positions(p, self.params);
        let (first, last) = match (minis.positions().first(), minis.positions().last()) {
            (Some(&f), Some(&l)) => (f as usize, l as usize),
            // No window fits: the whole pattern goes symbol by symbol.
            _ => (1, 1),
        };

        macro_rules! step {
            ($bytes:expr) => {{
                steps += 1;
                let Some(list) = self.store.lookup(&self.text, $bytes) else {
                    return CountResult { count: 0, steps, sp: range.sp, ep: range.ep };
                };
                if !backward_step(list, &mut range, &config) {
                    return CountResult::from_range(range, steps);
                }
            }};
        }

        // Pattern suffix, one symbol at a time.
        for j in (last..=m).rev() {
            step!(&p[j - 1..j]);
        }
        // Gap q-grams between consecutive pattern minimizers.
        for pair in minis.positions().windows(2).rev() {
            let (a, b) = (pair[0] as usize, pair[1] as usize);
            step!(&p[a - 1..b - 1]);
        }
        // Pattern prefix before the first minimizer.
        for j in (1..first).rev() {
            step!(&p[j - 1..j]);
        }
        CountResult::from_range(range, steps)
    }
}
