//! The generalized multi-symbol backward step shared by both index variants.

use crate::store::{OccList, StoreConfig};

/// Live suffix-rank interval of a backward search. The query is alive while
/// `sp <= ep`; both bounds stay in 1..=n+1 while alive.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchRange {
    pub sp: u32,
    pub ep: u32,
}

impl SearchRange {
    /// Full range over all n+1 suffixes of the sentinel-terminated text.
    pub fn full(n: usize) -> SearchRange {
        SearchRange { sp: 1, ep: n as u32 + 1 }
    }

    pub fn is_alive(&self) -> bool {
        self.sp <= self.ep
    }

    pub fn width(&self) -> usize {
        if self.is_alive() {
            (self.ep - self.sp + 1) as usize
        } else {
            0
        }
    }
}

/// Outcome of a count query.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CountResult {
    pub count: usize,
    /// Backward (LF-mapping) steps performed before the query finished.
    pub steps: usize,
    pub sp: u32,
    pub ep: u32,
}

impl CountResult {
    pub(crate) fn from_range(range: SearchRange, steps: usize) -> CountResult {
        CountResult {
            count: range.width(),
            steps,
            sp: range.sp,
            ep: range.ep,
        }
    }

    pub(crate) fn rejected() -> CountResult {
        CountResult { count: 0, steps: 0, sp: 1, ep: 0 }
    }
}

/// One backward step over the q-gram `x` with occurrence list `list`:
/// sp <- C[x] + Occ(L_x, sp-1) + 1, ep <- C[x] + Occ(L_x, ep).
/// Returns whether the range is still alive.
#[inline]
pub(crate) fn backward_step(
    list: &OccList,
    range: &mut SearchRange,
    config: &StoreConfig,
) -> bool {
    range.sp = list.count_base + list.occ(range.sp - 1, config) + 1;
    range.ep = list.count_base + list.occ(range.ep, config);
    range.is_alive()
}
