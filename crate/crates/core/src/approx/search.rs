use std::collections::HashMap;

use super::matcher::{Sellers, UncompressedMatcher};
use crate::error::{Error, Result};
use crate::selection::{build_selected_set, PayloadMode, SelectedSet};
use crate::zl78::{CompressedString, PhraseSource};
use crate::{MatchReport, SearchStats};

/// Pattern `P`, threshold `k < |P|`, and trade-off parameter τ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApproxQuery {
    pattern: Vec<u8>,
    k: usize,
    tau: usize,
}

impl ApproxQuery {
    pub fn new(pattern: impl Into<Vec<u8>>, k: usize, tau: usize) -> Result<Self> {
        let pattern = pattern.into();
        if pattern.is_empty() {
            return Err(Error::parameter("pattern must not be empty"));
        }
        if k >= pattern.len() {
            return Err(Error::parameter(format!(
                "error threshold {k} must be smaller than the pattern length {}",
                pattern.len()
            )));
        }
        if tau == 0 {
            return Err(Error::parameter("tau must be at least 1"));
        }
        Ok(ApproxQuery { pattern, k, tau })
    }

    pub fn pattern(&self) -> &[u8] {
        &self.pattern
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn tau(&self) -> usize {
        self.tau
    }

    /// `m + k`, the length of the relevant prefix and suffix windows.
    pub fn window(&self) -> usize {
        self.pattern.len() + self.k
    }
}

/// Description of one text piece. Offsets in `internal` are 1-based within
/// the phrase; offsets in `overlapping` are 1-based within
/// `rsuf(i - 1) · rpre(i)`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ApproxDescription {
    pub start: usize,
    pub length: usize,
    pub node: usize,
    pub rpre: Vec<u8>,
    pub rsuf: Vec<u8>,
    pub internal: Vec<usize>,
    pub overlapping: Vec<usize>,
}

impl ApproxDescription {
    /// Description of the root before any text: empty, starting at 1.
    pub fn sentinel() -> Self {
        ApproxDescription {
            start: 1,
            ..Default::default()
        }
    }

    fn live_chars(&self) -> usize {
        self.rpre.len() + self.rsuf.len()
    }
}

/// Merges the internal and overlapping matches of one piece into absolute
/// positions inside `[start, start + length - 1]`.
pub fn assemble_matches(desc: &ApproxDescription, prev_rsuf_len: usize) -> Vec<usize> {
    let shift = desc.start - 1;
    let internal = desc.internal.iter().map(|&j| j + shift);
    let overlapping = desc
        .overlapping
        .iter()
        .filter(|&&j| j > prev_rsuf_len && j - prev_rsuf_len <= desc.length)
        .map(|&j| j - prev_rsuf_len + shift);
    let mut out: Vec<usize> = Vec::with_capacity(desc.internal.len() + desc.overlapping.len());
    let (mut a, mut b) = (internal.peekable(), overlapping.peekable());
    loop {
        let next = match (a.peek(), b.peek()) {
            (Some(&x), Some(&y)) if x <= y => a.next(),
            (Some(_), Some(_)) => b.next(),
            (Some(_), None) => a.next(),
            (None, Some(_)) => b.next(),
            (None, None) => break,
        };
        let v = next.unwrap();
        if out.last() != Some(&v) {
            out.push(v);
        }
    }
    out
}

const END: u32 = u32::MAX;

/// Internal match sets as linked lists sharing their tails with the parent
/// node's set. Only nodes with a non-empty set have an entry.
#[derive(Debug, Default)]
struct InternalSets {
    heads: HashMap<usize, u32>,
    /// (offset, next cell)
    cells: Vec<(u32, u32)>,
}

impl InternalSets {
    fn record(&mut self, node: usize, parent: usize, new_offset: Option<usize>) {
        let inherited = self.heads.get(&parent).copied();
        let head = match new_offset {
            Some(offset) => {
                self.cells.push((offset as u32, inherited.unwrap_or(END)));
                Some(self.cells.len() as u32 - 1)
            }
            None => inherited,
        };
        if let Some(h) = head {
            self.heads.insert(node, h);
        }
    }

    fn collect(&self, node: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut cur = self.heads.get(&node).copied().unwrap_or(END);
        while cur != END {
            let (offset, next) = self.cells[cur as usize];
            out.push(offset as usize);
            cur = next;
        }
        out.reverse();
        out
    }
}

/// Streams descriptions piece by piece.
///
/// Live state: the selected set, the previous description, the shared
/// internal match lists, and scratch buffers of `O(τ + m + k)`.
pub struct ApproxSearcher<'a, S: PhraseSource + ?Sized, M = Sellers> {
    src: &'a S,
    sel: SelectedSet,
    query: ApproxQuery,
    matcher: M,
    internal: InternalSets,
    /// Nodes below this index have their internal set recorded.
    finalized: usize,
    prev: ApproxDescription,
    next_piece: usize,
    path: Vec<usize>,
    scratch: Vec<u8>,
    peak_live_chars: usize,
}

impl<'a, S: PhraseSource + ?Sized> ApproxSearcher<'a, S, Sellers> {
    pub fn new(src: &'a S, query: ApproxQuery) -> Result<Self> {
        Self::with_matcher(src, query, Sellers)
    }
}

impl<'a, S: PhraseSource + ?Sized, M: UncompressedMatcher> ApproxSearcher<'a, S, M> {
    pub fn with_matcher(src: &'a S, query: ApproxQuery, matcher: M) -> Result<Self> {
        let sel = build_selected_set(
            src,
            query.tau,
            PayloadMode::Approx {
                pattern_len: query.pattern.len(),
                errors: query.k,
            },
        )?;
        Ok(ApproxSearcher {
            src,
            sel,
            query,
            matcher,
            internal: InternalSets::default(),
            finalized: 1,
            prev: ApproxDescription::sentinel(),
            next_piece: 1,
            path: Vec::new(),
            scratch: Vec::new(),
            peak_live_chars: 0,
        })
    }

    pub fn selected(&self) -> &SelectedSet {
        &self.sel
    }

    /// Description of the last piece processed (the sentinel before the
    /// first call).
    pub fn previous(&self) -> &ApproxDescription {
        &self.prev
    }

    pub fn peak_live_chars(&self) -> usize {
        self.peak_live_chars
    }

    /// Records `M_I(node)` from `M_I(parent)` and a match test on the last
    /// `min(m + k, |phrase|)` characters of the phrase.
    fn finalize(&mut self, node: usize) {
        let length = self.sel.phrase_length(self.src, node);
        let take = length.min(self.query.window());
        self.scratch.clear();
        self.src.push_path_labels(node, take, &mut self.scratch);
        self.scratch.reverse();
        let hits = self
            .matcher
            .matches(&self.query.pattern, &self.scratch, self.query.k);
        let ends_here = hits.last() == Some(&take);
        self.internal
            .record(node, self.src.parent(node), ends_here.then_some(length));
    }

    /// Computes the description of piece `i`, which must be the next one.
    pub fn compute_description(&mut self, i: usize) -> Result<ApproxDescription> {
        if i != self.next_piece || i > self.src.piece_count() {
            return Err(Error::parameter(format!(
                "description {i} requested out of order (next is {})",
                self.next_piece
            )));
        }
        let window = self.query.window();
        let x = self.src.piece(i);
        while self.finalized <= x {
            self.finalize(self.finalized);
            self.finalized += 1;
        }

        let y = self.sel.walk(self.src, x, &mut self.path);
        let anchor = self.sel.payload(y).expect("walk ends at a member");
        let length = anchor.phrase_length + self.path.len() - 1;
        let start = self.prev.start + self.prev.length;

        let rpre = if length <= window {
            self.src.path_label(x, length)
        } else {
            let h = if anchor.phrase_length > window {
                anchor.shortcut.expect("long members carry a shortcut")
            } else {
                self.path[self.path.len() - 1 - (window - anchor.phrase_length)]
            };
            self.src.path_label(h, window)
        };

        // Backward decoding across as many preceding pieces as needed.
        let mut rsuf = Vec::with_capacity(window);
        let mut want = window.min(start + length - 1);
        let mut t = i;
        while want > 0 {
            want -= self
                .src
                .push_path_labels(self.src.piece(t), want, &mut rsuf);
            t -= 1;
        }
        rsuf.reverse();

        self.scratch.clear();
        self.scratch.extend_from_slice(&self.prev.rsuf);
        self.scratch.extend_from_slice(&rpre);
        let overlapping = self
            .matcher
            .matches(&self.query.pattern, &self.scratch, self.query.k);

        let desc = ApproxDescription {
            start,
            length,
            node: x,
            rpre,
            rsuf,
            internal: self.internal.collect(x),
            overlapping,
        };
        self.peak_live_chars = self
            .peak_live_chars
            .max(self.prev.live_chars() + desc.live_chars());
        self.next_piece += 1;
        Ok(desc)
    }

    /// Computes the next description and the matches it yields; the
    /// previous description is dropped.
    pub fn step(&mut self) -> Option<(ApproxDescription, Vec<usize>)> {
        if self.next_piece > self.src.piece_count() {
            return None;
        }
        let desc = self
            .compute_description(self.next_piece)
            .expect("pieces are requested in order");
        let found = assemble_matches(&desc, self.prev.rsuf.len());
        self.prev = desc.clone();
        Some((desc, found))
    }

    pub fn run(mut self) -> (MatchReport, SearchStats) {
        let mut out = Vec::new();
        while let Some((_, found)) = self.step() {
            out.extend(found);
        }
        let stats = SearchStats {
            elements: self.src.piece_count(),
            text_len: self.prev.start + self.prev.length - 1,
            nodes: self.src.node_count(),
            tau: self.sel.tau(),
            selected: self.sel.len(),
            peak_live_descriptions: 2,
            peak_live_chars: self.peak_live_chars,
            internal_entries: self.internal.cells.len(),
            matches: out.len(),
        };
        (MatchReport::from_sorted(out), stats)
    }
}

/// All end positions of substrings within edit distance `k` of `pattern`.
///
/// Works on ZL78 input directly; ZLW input needs an explicit trie, see
/// [`search_approx_in`].
pub fn search_approx(
    z: &CompressedString,
    pattern: &[u8],
    k: usize,
    tau: usize,
) -> Result<MatchReport> {
    let view = z.zl78_view().map_err(|_| {
        Error::Unsupported(
            "approximate search on ZLW input needs the explicit dictionary trie (labels are implicit)".into(),
        )
    })?;
    let (report, _) = search_approx_in(&view, &ApproxQuery::new(pattern, k, tau)?)?;
    Ok(report)
}

/// Full pipeline over any trie view, with resource counters.
pub fn search_approx_in<S: PhraseSource + ?Sized>(
    src: &S,
    query: &ApproxQuery,
) -> Result<(MatchReport, SearchStats)> {
    Ok(ApproxSearcher::new(src, query.clone())?.run())
}
