use std::collections::BinaryHeap;

use super::{build_tnfa, parse_regex, StateSet, Tnfa};
use crate::error::{Error, Result};
use crate::selection::{build_selected_set, PayloadMode, SelectedSet};
use crate::zl78::{CompressedString, DictionaryTrie, PhraseSource, Scheme};
use crate::{MatchReport, SearchStats};

const NO_MATCH: u32 = u32::MAX;

/// Per-piece record. `state_set` is δ̄({θ}, Q[1 .. start + length - 1]).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegexDescription {
    pub start: usize,
    pub length: usize,
    pub node: usize,
    pub state_set: StateSet,
}

/// Descriptions of every piece plus the per-node `lastmatch` table. All of
/// it is retained: `O(n · m)` space.
#[derive(Debug, Clone)]
pub struct RegexDescriptions {
    states: usize,
    /// Index 0 is the sentinel for the empty prefix.
    descriptions: Vec<RegexDescription>,
    depths: Vec<u32>,
    lastmatch: Vec<u32>,
}

impl RegexDescriptions {
    /// Description of piece `i`; `i = 0` is the sentinel with the ε-closure
    /// of `{θ}`.
    pub fn get(&self, i: usize) -> &RegexDescription {
        &self.descriptions[i]
    }

    pub fn len(&self) -> usize {
        self.descriptions.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn depth(&self, node: usize) -> usize {
        self.depths[node] as usize
    }

    /// Deepest ancestor `a` of `node` with depth >= 1 such that
    /// `δ̄({state}, phrase(a))` meets Φ.
    pub fn lastmatch(&self, state: usize, node: usize) -> Option<usize> {
        match self.lastmatch[node * self.states + state] {
            NO_MATCH => None,
            a => Some(a as usize),
        }
    }

    pub fn text_len(&self) -> usize {
        let last = self
            .descriptions
            .last()
            .expect("sentinel is always present");
        last.start + last.length - 1
    }
}

/// Computes every description left to right.
///
/// Node `x` with nearest member `y` on its reference path: whether `s`
/// accepts `phrase(x) = phrase(y) · L` follows from the cached
/// `δ̄({s}, phrase(y))` and one backward pass over `L`. Piece `i` with node
/// `x`: the union of the cached sets of `y` over the previous state set,
/// then δ̄ over `L`.
pub fn build_regex_descriptions<S: PhraseSource + ?Sized>(
    src: &S,
    sel: &SelectedSet,
    a: &Tnfa,
) -> Result<RegexDescriptions> {
    let states = a.state_count();
    let cached = |y: usize| -> Result<&Vec<StateSet>> {
        sel.payload(y)
            .and_then(|p| p.transition_sets.as_ref())
            .ok_or_else(|| Error::parameter("selected set was not built in regex mode"))
    };

    let nodes = src.node_count();
    let mut depths = vec![0u32; nodes];
    let mut lastmatch = vec![NO_MATCH; nodes * states];
    let mut path = Vec::new();
    let mut labels = Vec::new();
    for x in 1..nodes {
        let y = sel.walk(src, x, &mut path);
        let sets = cached(y)?;
        depths[x] = (sel.payload(y).unwrap().phrase_length + path.len() - 1) as u32;
        let accepts: Vec<bool> = if path.len() == 1 {
            sets.iter().map(|t| t.intersects(a.finals())).collect()
        } else {
            labels.clear();
            labels.extend(path[..path.len() - 1].iter().rev().map(|&v| src.label(v)));
            let origins = a.accepting_origins(&labels);
            let from_start = origins.contains(a.start());
            sets.iter()
                .map(|t| from_start || t.intersects(&origins))
                .collect()
        };
        let parent = src.parent(x);
        for (s, &acc) in accepts.iter().enumerate() {
            lastmatch[x * states + s] = if acc {
                x as u32
            } else {
                lastmatch[parent * states + s]
            };
        }
    }

    let mut descriptions = Vec::with_capacity(src.piece_count() + 1);
    descriptions.push(RegexDescription {
        start: 1,
        length: 0,
        node: 0,
        state_set: a.start_closure().clone(),
    });
    for i in 1..=src.piece_count() {
        let x = src.piece(i);
        let y = sel.walk(src, x, &mut path);
        let sets = cached(y)?;
        let prev = &descriptions[i - 1];
        let mut merged = sets[a.start()].clone();
        for s in prev.state_set.iter() {
            merged.union_with(&sets[s]);
        }
        labels.clear();
        labels.extend(path[..path.len() - 1].iter().rev().map(|&v| src.label(v)));
        let state_set = a.run_prefix(&merged, &labels);
        descriptions.push(RegexDescription {
            start: prev.start + prev.length,
            length: depths[x] as usize,
            node: x,
            state_set,
        });
    }
    Ok(RegexDescriptions {
        states,
        descriptions,
        depths,
        lastmatch,
    })
}

/// Walks the `lastmatch` chains of the states alive before each piece,
/// merging them deepest-first through a priority queue so that a position
/// witnessed by several states is reported once.
///
/// If the automaton accepts the empty string every position is reported.
pub fn report_regex_matches<S: PhraseSource + ?Sized>(
    src: &S,
    descs: &RegexDescriptions,
    a: &Tnfa,
) -> MatchReport {
    if a.accepts_empty() {
        return MatchReport::from_sorted((1..=descs.text_len()).collect());
    }
    let mut out = Vec::new();
    let mut piece = Vec::new();
    let mut heap: BinaryHeap<(u32, u32, u32)> = BinaryHeap::new();
    for i in 1..=descs.len() {
        let desc = descs.get(i);
        let alive = &descs.get(i - 1).state_set;
        let push = |heap: &mut BinaryHeap<_>, s: usize, node: usize| {
            if let Some(x) = descs.lastmatch(s, node) {
                heap.push((descs.depths[x], x as u32, s as u32));
            }
        };
        push(&mut heap, a.start(), desc.node);
        for s in alive.iter().filter(|&s| s != a.start()) {
            push(&mut heap, s, desc.node);
        }
        piece.clear();
        while let Some((depth, x, s)) = heap.pop() {
            let pos = desc.start + depth as usize - 1;
            if piece.last() != Some(&pos) {
                piece.push(pos);
            }
            push(&mut heap, s as usize, src.parent(x as usize));
        }
        out.extend(piece.iter().rev());
    }
    MatchReport::from_sorted(out)
}

/// Searches for `pattern` in `z`. ZLW input goes through an explicit trie.
pub fn search_regex(z: &CompressedString, pattern: &str, tau: usize) -> Result<MatchReport> {
    let a = build_tnfa(&parse_regex(pattern)?);
    let (report, _) = match z.scheme() {
        Scheme::Zl78 => search_regex_in(&z.zl78_view()?, &a, tau)?,
        Scheme::Zlw => search_regex_in(&DictionaryTrie::build(z), &a, tau)?,
    };
    Ok(report)
}

/// Full pipeline over any trie view, with resource counters.
pub fn search_regex_in<S: PhraseSource + ?Sized>(
    src: &S,
    a: &Tnfa,
    tau: usize,
) -> Result<(MatchReport, SearchStats)> {
    let sel = build_selected_set(src, tau, PayloadMode::Regex(a))?;
    let descs = build_regex_descriptions(src, &sel, a)?;
    let report = report_regex_matches(src, &descs, a);
    let stats = SearchStats {
        elements: src.piece_count(),
        text_len: descs.text_len(),
        nodes: src.node_count(),
        tau: sel.tau(),
        selected: sel.len(),
        peak_live_descriptions: descs.len() + 1,
        peak_live_chars: 0,
        internal_entries: 0,
        matches: report.len(),
    };
    Ok((report, stats))
}
