//! Approximate (edit distance) search over compressed text.
//!
//! Text pieces are processed left to right. The description of piece `i`
//! holds its start `u_i` and length `l_i`, the relevant prefix `rpre` (first
//! `m + k` characters of the piece) and relevant suffix `rsuf` (last `m + k`
//! characters of the text up to the end of the piece), the internal matches
//! `M_I` (matches of the pattern inside the phrase alone) and the
//! overlapping matches `M_O` (matches in `rsuf(i - 1) · rpre(i)`). Any match
//! ending inside the piece is one or the other, since a match of length at
//! most `m + k` that starts before the piece must end within its first
//! `m + k` characters.
//!
//! Only the previous description is kept alive. Internal match sets are
//! shared along the trie: `M_I(x)` is `M_I(parent(x))` plus at most the
//! offset `|phrase(x)|`, so each set is a linked list into a common arena and
//! only nodes with a non-empty set are indexed.

mod matcher;
mod search;

pub use matcher::{edit_distance_matches, match_start_interval, Sellers, UncompressedMatcher};
pub use search::{
    assemble_matches, search_approx, search_approx_in, ApproxDescription, ApproxQuery,
    ApproxSearcher,
};
