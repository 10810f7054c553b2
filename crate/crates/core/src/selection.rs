//! Sampled anchor elements for random access into the implicit trie.
//!
//! A left-to-right scan keeps a set `C` of trie nodes, initially the root.
//! Each new node walks its reference path until it meets a member of `C`;
//! if that path holds exactly `2τ` nodes (both ends counted), the `τ`-th node
//! on it joins `C`. Afterwards
//!
//! - `|C| <= 1 + n / τ`, and
//! - every node reaches a member of `C` within `2τ` reference steps.
//!
//! Members carry a payload so that searches can jump over the sampled part
//! of a phrase: its length, plus either the depth-`(m + k)` ancestor
//! (approximate matching) or the transition sets of every automaton state
//! (regex matching).

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::regex::{StateSet, Tnfa};
use crate::zl78::PhraseSource;

/// What to store with each selected node.
#[derive(Debug, Clone, Copy)]
pub enum PayloadMode<'a> {
    None,
    /// Store the ancestor at depth `pattern_len + errors`.
    Approx {
        pattern_len: usize,
        errors: usize,
    },
    /// Store `δ̄({s}, phrase)` for every state `s`.
    Regex(&'a Tnfa),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelectionPayload {
    pub phrase_length: usize,
    /// Ancestor at depth exactly `m + k`, present iff the phrase is longer.
    pub shortcut: Option<usize>,
    /// Indexed by automaton state.
    pub transition_sets: Option<Vec<StateSet>>,
}

#[derive(Debug, Clone)]
pub struct SelectedSet {
    tau: usize,
    window: Option<usize>,
    members: HashMap<usize, SelectionPayload>,
}

/// Builds `C` in one left-to-right pass over the nodes of `src`.
///
/// `tau` larger than the number of non-root nodes is clamped down to it.
pub fn build_selected_set<S: PhraseSource + ?Sized>(
    src: &S,
    tau: usize,
    mode: PayloadMode<'_>,
) -> Result<SelectedSet> {
    if tau == 0 {
        return Err(Error::parameter("tau must be at least 1"));
    }
    let window = match mode {
        PayloadMode::Approx {
            pattern_len,
            errors,
        } => {
            if errors >= pattern_len {
                return Err(Error::parameter(format!(
                    "error threshold {errors} must be smaller than the pattern length {pattern_len}"
                )));
            }
            Some(pattern_len + errors)
        }
        _ => None,
    };
    let n = src.node_count() - 1;
    let tau = tau.min(n).max(1);

    let root_sets = match mode {
        PayloadMode::Regex(a) => Some(
            (0..a.state_count())
                .map(|s| {
                    let mut set = a.empty_set();
                    set.insert(s);
                    a.close(&mut set);
                    set
                })
                .collect(),
        ),
        _ => None,
    };
    let mut sel = SelectedSet {
        tau,
        window,
        members: HashMap::new(),
    };
    sel.members.insert(
        0,
        SelectionPayload {
            phrase_length: 0,
            shortcut: None,
            transition_sets: root_sets,
        },
    );

    let mut path = Vec::with_capacity(2 * tau);
    let mut labels = Vec::with_capacity(2 * tau);
    for node in 1..src.node_count() {
        sel.walk(src, node, &mut path);
        debug_assert!(path.len() <= 2 * tau);
        if path.len() < 2 * tau {
            continue;
        }
        let last = path.len() - 1;
        let (chosen, anchor) = (path[tau - 1], path[last]);
        let base = &sel.members[&anchor];
        let phrase_length = base.phrase_length + (last - (tau - 1));

        let shortcut = match window {
            Some(w) if phrase_length > w => Some(if base.phrase_length > w {
                base.shortcut
                    .expect("members longer than the window carry a shortcut")
            } else {
                path[last - (w - base.phrase_length)]
            }),
            _ => None,
        };

        let transition_sets = match (mode, &base.transition_sets) {
            (PayloadMode::Regex(a), Some(sets)) => {
                labels.clear();
                labels.extend((tau - 1..last).rev().map(|j| src.label(path[j])));
                Some(sets.iter().map(|set| a.run_prefix(set, &labels)).collect())
            }
            _ => None,
        };

        sel.members.insert(
            chosen,
            SelectionPayload {
                phrase_length,
                shortcut,
                transition_sets,
            },
        );
    }
    Ok(sel)
}

impl SelectedSet {
    /// Effective τ after clamping.
    pub fn tau(&self) -> usize {
        self.tau
    }

    /// `m + k` in approximate mode.
    pub fn window(&self) -> Option<usize> {
        self.window
    }

    /// `|C|`, root included.
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, node: usize) -> bool {
        self.members.contains_key(&node)
    }

    pub fn payload(&self, node: usize) -> Option<&SelectionPayload> {
        self.members.get(&node)
    }

    /// Member nodes in ascending order.
    pub fn members(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.members.keys().copied().collect();
        v.sort_unstable();
        v
    }

    /// Follows references from `node` until a member is found. `path` is
    /// overwritten with the visited nodes, `node` first and the member last.
    pub fn walk<S: PhraseSource + ?Sized>(
        &self,
        src: &S,
        node: usize,
        path: &mut Vec<usize>,
    ) -> usize {
        path.clear();
        let mut x = node;
        loop {
            path.push(x);
            if self.members.contains_key(&x) {
                return x;
            }
            x = src.parent(x);
        }
    }

    /// The nearest member on the reference path of `node`, with the path.
    pub fn nearest_member<S: PhraseSource + ?Sized>(
        &self,
        src: &S,
        node: usize,
    ) -> (usize, Vec<usize>) {
        let mut path = Vec::new();
        let y = self.walk(src, node, &mut path);
        (y, path)
    }

    /// `|phrase(node)|` in `O(τ)`.
    pub fn phrase_length<S: PhraseSource + ?Sized>(&self, src: &S, node: usize) -> usize {
        let mut x = node;
        let mut steps = 0;
        loop {
            if let Some(p) = self.members.get(&x) {
                return p.phrase_length + steps;
            }
            x = src.parent(x);
            steps += 1;
        }
    }
}
