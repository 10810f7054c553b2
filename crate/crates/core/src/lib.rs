//! Pattern matching directly on LZ78 and LZW compressed text.
//!
//! The text is never decompressed. Searches walk the implicit dictionary trie
//! through the compression elements themselves, using a sampled subset of the
//! elements (see [`selection`]) as random-access anchors. The sampling rate
//! `tau` trades working space for time: the anchor set has at most
//! `1 + n / tau` members and every element reaches an anchor within `2 * tau`
//! reference steps.
//!
//! Two searches are provided:
//!
//! - [`approx::search_approx`] reports every end position of a substring
//!   within edit distance `k` of a pattern. Per-element descriptions are
//!   streamed, so live state is bounded by the anchor set, the pattern window
//!   and the match output.
//! - [`regex::search_regex`] reports every end position of a substring
//!   matched by a regular expression, simulating a Thompson automaton with
//!   transition sets cached at the anchors.
//!
//! Positions are 1-based throughout.

pub mod approx;
pub mod error;
pub mod oracle;
pub mod regex;
pub mod selection;
pub mod zl78;

pub use error::{Error, Result};

/// Sorted, duplicate-free list of 1-based end positions in the uncompressed
/// text.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MatchReport {
    positions: Vec<usize>,
}

impl MatchReport {
    /// Wraps positions that are already sorted and duplicate-free.
    pub(crate) fn from_sorted(positions: Vec<usize>) -> Self {
        debug_assert!(positions.windows(2).all(|w| w[0] < w[1]));
        MatchReport { positions }
    }

    pub fn positions(&self) -> &[usize] {
        &self.positions
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.positions
    }
}

impl IntoIterator for MatchReport {
    type Item = usize;
    type IntoIter = std::vec::IntoIter<usize>;

    fn into_iter(self) -> Self::IntoIter {
        self.positions.into_iter()
    }
}

/// Resource counters for one search.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SearchStats {
    /// Compression elements (`n`).
    pub elements: usize,
    /// Uncompressed length (`u`).
    pub text_len: usize,
    /// Trie nodes, root included.
    pub nodes: usize,
    /// Effective τ after clamping.
    pub tau: usize,
    /// `|C|`.
    pub selected: usize,
    /// Most descriptions alive at once.
    pub peak_live_descriptions: usize,
    /// Most characters held by live descriptions (windows only).
    pub peak_live_chars: usize,
    /// Cells holding internal-match offsets.
    pub internal_entries: usize,
    pub matches: usize,
}
