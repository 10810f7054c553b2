use super::syntax::Regex;

/// Set of automaton states, stored as a bitset.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StateSet {
    words: Vec<u64>,
}

impl StateSet {
    pub fn empty(states: usize) -> Self {
        StateSet {
            words: vec![0; states.div_ceil(64)],
        }
    }

    pub fn full(states: usize) -> Self {
        let mut set = StateSet::empty(states);
        for s in 0..states {
            set.insert(s);
        }
        set
    }

    /// Returns whether `s` was newly added.
    pub fn insert(&mut self, s: usize) -> bool {
        let (w, bit) = (s / 64, 1u64 << (s % 64));
        let fresh = self.words[w] & bit == 0;
        self.words[w] |= bit;
        fresh
    }

    pub fn contains(&self, s: usize) -> bool {
        self.words[s / 64] & (1u64 << (s % 64)) != 0
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn clear(&mut self) {
        self.words.fill(0);
    }

    pub fn union_with(&mut self, other: &StateSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersects(&self, other: &StateSet) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let bit = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * 64 + bit)
            })
        })
    }
}

/// Thompson automaton with a single start and a single final state.
///
/// Every state has either one byte transition or at most two ε-transitions,
/// so a regex of size `m` yields at most `2m` states and `4m` transitions.
#[derive(Debug, Clone)]
pub struct Tnfa {
    start: usize,
    accept: usize,
    byte_edge: Vec<Option<(u8, u32)>>,
    eps: Vec<Vec<u32>>,
    rev_byte: Vec<Vec<(u8, u32)>>,
    rev_eps: Vec<Vec<u32>>,
    transitions: usize,
    start_closure: StateSet,
    finals: StateSet,
}

pub fn build_tnfa(r: &Regex) -> Tnfa {
    let mut b = Builder::default();
    let (start, accept) = b.build(r);
    let states = b.byte_edge.len();
    let mut rev_byte = vec![Vec::new(); states];
    let mut rev_eps = vec![Vec::new(); states];
    for s in 0..states {
        if let Some((ch, t)) = b.byte_edge[s] {
            rev_byte[t as usize].push((ch, s as u32));
        }
        for &t in &b.eps[s] {
            rev_eps[t as usize].push(s as u32);
        }
    }
    let mut finals = StateSet::empty(states);
    finals.insert(accept);
    let mut a = Tnfa {
        start,
        accept,
        byte_edge: b.byte_edge,
        eps: b.eps,
        rev_byte,
        rev_eps,
        transitions: b.transitions,
        start_closure: StateSet::empty(states),
        finals,
    };
    let mut sc = StateSet::empty(states);
    sc.insert(start);
    a.close(&mut sc);
    a.start_closure = sc;
    a
}

#[derive(Default)]
struct Builder {
    byte_edge: Vec<Option<(u8, u32)>>,
    eps: Vec<Vec<u32>>,
    transitions: usize,
}

impl Builder {
    fn state(&mut self) -> usize {
        self.byte_edge.push(None);
        self.eps.push(Vec::new());
        self.byte_edge.len() - 1
    }

    fn epsilon(&mut self, from: usize, to: usize) {
        self.eps[from].push(to as u32);
        self.transitions += 1;
    }

    fn build(&mut self, r: &Regex) -> (usize, usize) {
        match r {
            Regex::Literal(ch) => {
                let (s, t) = (self.state(), self.state());
                self.byte_edge[s] = Some((*ch, t as u32));
                self.transitions += 1;
                (s, t)
            }
            Regex::Concat(a, b) => {
                let (a0, a1) = self.build(a);
                let (b0, b1) = self.build(b);
                self.epsilon(a1, b0);
                (a0, b1)
            }
            Regex::Union(a, b) => {
                let s = self.state();
                let (a0, a1) = self.build(a);
                let (b0, b1) = self.build(b);
                let t = self.state();
                self.epsilon(s, a0);
                self.epsilon(s, b0);
                self.epsilon(a1, t);
                self.epsilon(b1, t);
                (s, t)
            }
            Regex::Star(a) => {
                let s = self.state();
                let (a0, a1) = self.build(a);
                let t = self.state();
                self.epsilon(s, a0);
                self.epsilon(s, t);
                self.epsilon(a1, a0);
                self.epsilon(a1, t);
                (s, t)
            }
        }
    }
}

impl Tnfa {
    pub fn state_count(&self) -> usize {
        self.byte_edge.len()
    }

    pub fn transition_count(&self) -> usize {
        self.transitions
    }

    /// θ
    pub fn start(&self) -> usize {
        self.start
    }

    pub fn accept(&self) -> usize {
        self.accept
    }

    /// Φ
    pub fn finals(&self) -> &StateSet {
        &self.finals
    }

    pub fn is_final(&self, s: usize) -> bool {
        s == self.accept
    }

    /// ε-closure of `{θ}`.
    pub fn start_closure(&self) -> &StateSet {
        &self.start_closure
    }

    /// Whether the automaton accepts the empty string.
    pub fn accepts_empty(&self) -> bool {
        self.start_closure.contains(self.accept)
    }

    pub fn empty_set(&self) -> StateSet {
        StateSet::empty(self.state_count())
    }

    /// All transitions as `(from, label, to)`, `None` for ε.
    pub fn edges(&self) -> impl Iterator<Item = (usize, Option<u8>, usize)> + '_ {
        (0..self.state_count()).flat_map(move |s| {
            let byte = self.byte_edge[s].map(|(ch, t)| (s, Some(ch), t as usize));
            let eps = self.eps[s].iter().map(move |&t| (s, None, t as usize));
            byte.into_iter().chain(eps)
        })
    }

    /// Extends `set` in place with everything reachable by ε-transitions.
    pub fn close(&self, set: &mut StateSet) {
        let mut stack: Vec<usize> = set.iter().collect();
        while let Some(s) = stack.pop() {
            for &t in &self.eps[s] {
                if set.insert(t as usize) {
                    stack.push(t as usize);
                }
            }
        }
    }

    /// δ(S, ch): ε-closure of the states reached from `set` by one `ch`
    /// transition.
    pub fn step(&self, set: &StateSet, ch: u8) -> StateSet {
        let mut next = self.empty_set();
        for s in set.iter() {
            if let Some((c, t)) = self.byte_edge[s] {
                if c == ch {
                    next.insert(t as usize);
                }
            }
        }
        self.close(&mut next);
        next
    }

    /// δ̄(S, ch) = δ(S ∪ closure({θ}), ch): a match may start at this
    /// character.
    pub fn step_prefix(&self, set: &StateSet, ch: u8) -> StateSet {
        let mut from = set.clone();
        from.union_with(&self.start_closure);
        self.step(&from, ch)
    }

    /// δ̄ extended to a string.
    pub fn run_prefix(&self, set: &StateSet, text: &[u8]) -> StateSet {
        let mut cur = set.clone();
        for &ch in text {
            cur = self.step_prefix(&cur, ch);
        }
        cur
    }

    /// States `t` whose ε-closure meets `set`.
    fn close_backward(&self, set: &mut StateSet) {
        let mut stack: Vec<usize> = set.iter().collect();
        while let Some(s) = stack.pop() {
            for &t in &self.rev_eps[s] {
                if set.insert(t as usize) {
                    stack.push(t as usize);
                }
            }
        }
    }

    /// `{t : δ̄(closure({t}), text) ∩ Φ ≠ ∅}`, computed by one backward
    /// pass over `text` in `O(|text| · m)` time.
    ///
    /// For any ε-closed set `T` and non-empty `text`, `δ̄(T, text)` accepts
    /// iff `T ∪ {θ}` meets this set.
    pub fn accepting_origins(&self, text: &[u8]) -> StateSet {
        let mut live = self.finals.clone();
        self.close_backward(&mut live);
        for &ch in text.iter().rev() {
            let mut pre = self.empty_set();
            for t in live.iter() {
                for &(c, s) in &self.rev_byte[t] {
                    if c == ch {
                        pre.insert(s as usize);
                    }
                }
            }
            self.close_backward(&mut pre);
            if pre.contains(self.start) {
                // a match starts here, whatever came before
                return StateSet::full(self.state_count());
            }
            live = pre;
        }
        live
    }
}
