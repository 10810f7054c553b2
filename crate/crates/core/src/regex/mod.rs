//! Regular-expression search over compressed text.
//!
//! Each text piece `i` gets a description: its start `u_i`, its length, and
//! the state set reached after it. Each trie node `x` additionally gets, for
//! every automaton state `s`, `lastmatch(s, x)`: the deepest ancestor `a` of
//! `x` (depth at least one) such that reading `phrase(a)` from `s` reaches a
//! final state. Matches inside piece `i` are then the depths on the
//! `lastmatch` chains of the states alive before it.

mod search;
mod syntax;
mod tnfa;

pub use search::{
    build_regex_descriptions, report_regex_matches, search_regex, search_regex_in,
    RegexDescription, RegexDescriptions,
};
pub use syntax::{parse_regex, Regex};
pub use tnfa::{build_tnfa, StateSet, Tnfa};

/// δ(S, ch)
pub fn state_set_transition(a: &Tnfa, set: &StateSet, ch: u8) -> StateSet {
    a.step(set, ch)
}

/// δ̄(S, ch)
pub fn prefix_match_transition(a: &Tnfa, set: &StateSet, ch: u8) -> StateSet {
    a.step_prefix(set, ch)
}
