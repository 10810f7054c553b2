//! Brute-force reference implementations and random case generation.
//!
//! Nothing here calls into the compressed-text engines: the oracles work on
//! uncompressed text with their own dynamic programs and automata, so a bug
//! in an engine cannot hide behind shared code.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::regex::Regex;

/// End positions (1-based) of substrings of `q` within edit distance `k` of
/// `p`, by the full `(|q| + 1) × (|p| + 1)` dynamic programming matrix.
pub fn oracle_approx(q: &[u8], p: &[u8], k: usize) -> Vec<usize> {
    let (u, m) = (q.len(), p.len());
    // d[j][i]: least cost of aligning p[..i] with a substring ending at q[..j]
    let mut d = vec![vec![0usize; m + 1]; u + 1];
    for (i, cell) in d[0].iter_mut().enumerate() {
        *cell = i;
    }
    for j in 1..=u {
        d[j][0] = 0;
        for i in 1..=m {
            let sub = d[j - 1][i - 1] + usize::from(q[j - 1] != p[i - 1]);
            d[j][i] = sub.min(d[j - 1][i] + 1).min(d[j][i - 1] + 1);
        }
    }
    (1..=u).filter(|&j| d[j][m] <= k).collect()
}

/// Levenshtein distance between two strings.
pub fn edit_distance(a: &[u8], b: &[u8]) -> usize {
    let mut row: Vec<usize> = (0..=b.len()).collect();
    for (i, &x) in a.iter().enumerate() {
        let mut diag = row[0];
        row[0] = i + 1;
        for (j, &y) in b.iter().enumerate() {
            let next = (diag + usize::from(x != y))
                .min(row[j] + 1)
                .min(row[j + 1] + 1);
            diag = row[j + 1];
            row[j + 1] = next;
        }
    }
    row[b.len()]
}

/// Same as [`oracle_approx`], by enumerating every substring `q[i..j]` and
/// computing its distance to `p`. Quadratically many distance computations;
/// tiny inputs only.
pub fn brute_force_approx(q: &[u8], p: &[u8], k: usize) -> Vec<usize> {
    (1..=q.len())
        .filter(|&j| (0..=j).any(|i| edit_distance(p, &q[i..j]) <= k))
        .collect()
}

/// Glushkov automaton: one state per literal occurrence.
struct Positions {
    symbols: Vec<u8>,
    first: Vec<usize>,
    last: Vec<usize>,
    follow: Vec<Vec<usize>>,
    nullable: bool,
}

struct Parts {
    first: Vec<usize>,
    last: Vec<usize>,
    nullable: bool,
}

impl Positions {
    fn new(r: &Regex) -> Self {
        let mut out = Positions {
            symbols: Vec::new(),
            first: Vec::new(),
            last: Vec::new(),
            follow: Vec::new(),
            nullable: false,
        };
        let parts = out.visit(r);
        out.first = parts.first;
        out.last = parts.last;
        out.nullable = parts.nullable;
        out
    }

    fn visit(&mut self, r: &Regex) -> Parts {
        match r {
            Regex::Literal(c) => {
                self.symbols.push(*c);
                self.follow.push(Vec::new());
                let p = self.symbols.len() - 1;
                Parts {
                    first: vec![p],
                    last: vec![p],
                    nullable: false,
                }
            }
            Regex::Union(a, b) => {
                let (a, b) = (self.visit(a), self.visit(b));
                Parts {
                    first: [a.first, b.first].concat(),
                    last: [a.last, b.last].concat(),
                    nullable: a.nullable || b.nullable,
                }
            }
            Regex::Concat(a, b) => {
                let (a, b) = (self.visit(a), self.visit(b));
                for &x in &a.last {
                    self.follow[x].extend_from_slice(&b.first);
                }
                let first = if a.nullable {
                    [a.first, b.first.clone()].concat()
                } else {
                    a.first
                };
                let last = if b.nullable {
                    [a.last, b.last.clone()].concat()
                } else {
                    b.last
                };
                Parts {
                    first,
                    last,
                    nullable: a.nullable && b.nullable,
                }
            }
            Regex::Star(a) => {
                let a = self.visit(a);
                for &x in &a.last {
                    self.follow[x].extend_from_slice(&a.first);
                }
                Parts {
                    nullable: true,
                    ..a
                }
            }
        }
    }
}

/// End positions (1-based) of substrings of `q` in `L(r)`, by scanning `q`
/// once with a position automaton that restarts at every character.
/// The empty string counts, so a nullable `r` reports every position.
pub fn oracle_regex(q: &[u8], r: &Regex) -> Vec<usize> {
    let a = Positions::new(r);
    let states = a.symbols.len();
    let mut is_last = vec![false; states];
    for &p in &a.last {
        is_last[p] = true;
    }
    let mut active = vec![false; states];
    let mut out = Vec::new();
    for (j, &c) in q.iter().enumerate() {
        let mut next = vec![false; states];
        for &p in &a.first {
            next[p] |= a.symbols[p] == c;
        }
        for (x, _) in active.iter().enumerate().filter(|(_, on)| **on) {
            for &p in &a.follow[x] {
                next[p] |= a.symbols[p] == c;
            }
        }
        active = next;
        if a.nullable || active.iter().zip(&is_last).any(|(on, l)| *on && *l) {
            out.push(j + 1);
        }
    }
    out
}

/// Whether `s` is in `L(r)`, by recursive splitting. Exponential; tiny
/// inputs only.
pub fn regex_accepts(r: &Regex, s: &[u8]) -> bool {
    match r {
        Regex::Literal(c) => s == [*c],
        Regex::Union(a, b) => regex_accepts(a, s) || regex_accepts(b, s),
        Regex::Concat(a, b) => {
            (0..=s.len()).any(|i| regex_accepts(a, &s[..i]) && regex_accepts(b, &s[i..]))
        }
        Regex::Star(a) => {
            s.is_empty()
                || (1..=s.len()).any(|i| regex_accepts(a, &s[..i]) && regex_accepts(r, &s[i..]))
        }
    }
}

/// Same as [`oracle_regex`], by testing every substring (the empty one
/// included) for membership.
pub fn brute_force_regex(q: &[u8], r: &Regex) -> Vec<usize> {
    (1..=q.len())
        .filter(|&j| (0..=j).any(|i| regex_accepts(r, &q[i..j])))
        .collect()
}

/// Alphabet and shape of generated texts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Profile {
    Binary,
    Dna,
    EnglishLike,
    /// `aaaa…`: the deepest possible trie.
    Unary,
}

impl Profile {
    pub const ALL: [Profile; 4] = [
        Profile::Binary,
        Profile::Dna,
        Profile::EnglishLike,
        Profile::Unary,
    ];

    pub fn alphabet(self) -> &'static [u8] {
        match self {
            Profile::Binary => b"01",
            Profile::Dna => b"acgt",
            Profile::EnglishLike => b"abcdefghijklmnopqrstuvwxyz ",
            Profile::Unary => b"a",
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Profile::Binary => "binary",
            Profile::Dna => "dna",
            Profile::EnglishLike => "english-like",
            Profile::Unary => "unary",
        }
    }
}

const WORDS: &[&str] = &[
    "the",
    "of",
    "and",
    "to",
    "in",
    "a",
    "is",
    "that",
    "for",
    "it",
    "as",
    "was",
    "with",
    "be",
    "by",
    "on",
    "not",
    "he",
    "this",
    "are",
    "or",
    "his",
    "from",
    "at",
    "which",
    "but",
    "have",
    "an",
    "had",
    "they",
    "you",
    "were",
    "there",
    "one",
    "all",
    "we",
    "can",
    "her",
    "has",
    "been",
    "if",
    "more",
    "when",
    "will",
    "would",
    "who",
    "so",
    "no",
    "banana",
    "pattern",
    "matching",
    "compressed",
    "text",
    "string",
    "search",
    "phrase",
    "trie",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QueryKind {
    Approx,
    Regex,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Query {
    Approx { pattern: Vec<u8>, k: usize },
    Regex(Regex),
}

/// One randomized test case, reproducible from `seed`, `profile` and `kind`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleCase {
    pub seed: u64,
    pub profile: Profile,
    pub text: Vec<u8>,
    pub query: Query,
    /// May exceed the element count; searches clamp it.
    pub tau: usize,
}

impl OracleCase {
    /// Expected positions, computed on the uncompressed text.
    pub fn expected(&self) -> Vec<usize> {
        match &self.query {
            Query::Approx { pattern, k } => oracle_approx(&self.text, pattern, *k),
            Query::Regex(r) => oracle_regex(&self.text, r),
        }
    }
}

/// Size bounds for [`random_case_with`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaseLimits {
    pub max_text: usize,
    pub max_pattern: usize,
    pub max_errors: usize,
    pub max_regex_size: usize,
    /// Most unions and stars on any root-to-leaf path.
    pub max_nesting: usize,
}

impl CaseLimits {
    pub fn approx() -> Self {
        CaseLimits {
            max_text: 2000,
            max_pattern: 20,
            max_errors: 5,
            max_regex_size: 12,
            max_nesting: 3,
        }
    }

    pub fn regex() -> Self {
        CaseLimits {
            max_text: 1000,
            ..Self::approx()
        }
    }
}

/// Random case with the default limits for `kind`.
pub fn random_case(seed: u64, profile: Profile, kind: QueryKind) -> OracleCase {
    let limits = match kind {
        QueryKind::Approx => CaseLimits::approx(),
        QueryKind::Regex => CaseLimits::regex(),
    };
    random_case_with(seed, profile, kind, &limits)
}

pub fn random_case_with(
    seed: u64,
    profile: Profile,
    kind: QueryKind,
    limits: &CaseLimits,
) -> OracleCase {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let len = rng.gen_range(0..=limits.max_text);
    let text = random_text(&mut rng, profile, len);
    let (query, taus): (Query, &[usize]) = match kind {
        QueryKind::Approx => {
            let m = rng.gen_range(1..=limits.max_pattern.max(1));
            let k = rng.gen_range(0..=limits.max_errors.min(m - 1));
            let pattern = random_pattern(&mut rng, profile, &text, m);
            (Query::Approx { pattern, k }, &[1, 2, 8, 32])
        }
        QueryKind::Regex => {
            let mut alphabet = profile.alphabet().to_vec();
            // a letter that is never in the text, so some regexes cannot match
            alphabet.push(b'#');
            let size = rng.gen_range(1..=limits.max_regex_size.max(1));
            let r = random_regex(&mut rng, &alphabet, size, limits.max_nesting);
            (Query::Regex(r), &[1, 4])
        }
    };
    // the last choice stands for "n": searches clamp τ to the element count
    let tau = if rng.gen_bool(0.2) {
        text.len().max(1)
    } else {
        *taus.choose(&mut rng).unwrap()
    };
    OracleCase {
        seed,
        profile,
        text,
        query,
        tau,
    }
}

/// Text of exactly `len` bytes over the profile's alphabet.
pub fn random_text<R: Rng>(rng: &mut R, profile: Profile, len: usize) -> Vec<u8> {
    match profile {
        Profile::Unary => vec![b'a'; len],
        Profile::EnglishLike => {
            let mut text = Vec::with_capacity(len + 16);
            while text.len() < len {
                if !text.is_empty() {
                    text.push(if rng.gen_bool(0.1) { b'\n' } else { b' ' });
                }
                text.extend_from_slice(WORDS.choose(rng).unwrap().as_bytes());
            }
            text.truncate(len);
            text
        }
        _ => {
            let alphabet = profile.alphabet();
            (0..len).map(|_| *alphabet.choose(rng).unwrap()).collect()
        }
    }
}

/// Pattern of length `m`: usually a lightly mutated substring of `text`,
/// sometimes uniformly random.
fn random_pattern<R: Rng>(rng: &mut R, profile: Profile, text: &[u8], m: usize) -> Vec<u8> {
    let alphabet = profile.alphabet();
    if text.len() < m || rng.gen_bool(0.25) {
        return (0..m).map(|_| *alphabet.choose(rng).unwrap()).collect();
    }
    let start = rng.gen_range(0..=text.len() - m);
    let mut pattern = text[start..start + m].to_vec();
    for _ in 0..rng.gen_range(0..=2) {
        let at = rng.gen_range(0..m);
        pattern[at] = *alphabet.choose(rng).unwrap();
    }
    pattern
}

/// Random regex with at most `size` literals and operators, at most
/// `nesting` unions and stars on any root-to-leaf path, over `alphabet`.
pub fn random_regex<R: Rng>(rng: &mut R, alphabet: &[u8], size: usize, nesting: usize) -> Regex {
    let size = size.max(1);
    let literal = |rng: &mut R| Regex::Literal(*alphabet.choose(rng).unwrap());
    if size == 1 {
        return literal(rng);
    }
    let mut choices = vec![0u8]; // concat
    if nesting > 0 {
        choices.extend_from_slice(&[1, 2]); // union, star
    }
    if size < 3 {
        choices.retain(|&c| c == 2);
        if choices.is_empty() {
            return literal(rng);
        }
    }
    match *choices.choose(rng).unwrap() {
        2 => Regex::star(random_regex(rng, alphabet, size - 1, nesting - 1)),
        op => {
            let left = rng.gen_range(1..=size - 2);
            let right = size - 1 - left;
            let inner = if op == 1 { nesting - 1 } else { nesting };
            let a = random_regex(rng, alphabet, left, inner);
            let b = random_regex(rng, alphabet, right, inner);
            if op == 1 {
                Regex::union(a, b)
            } else {
                Regex::concat(a, b)
            }
        }
    }
}

/// Most unions and stars on any root-to-leaf path.
pub fn regex_nesting(r: &Regex) -> usize {
    match r {
        Regex::Literal(_) => 0,
        Regex::Concat(a, b) => regex_nesting(a).max(regex_nesting(b)),
        Regex::Union(a, b) => 1 + regex_nesting(a).max(regex_nesting(b)),
        Regex::Star(a) => 1 + regex_nesting(a),
    }
}

/// Height of the ZL78 trie of `text`, by an independent naive parse.
pub fn naive_zl78_depth(text: &[u8]) -> usize {
    let mut phrases: std::collections::HashSet<&[u8]> = std::collections::HashSet::new();
    let (mut start, mut depth) = (0, 0);
    while start < text.len() {
        let mut end = start + 1;
        while end <= text.len() && phrases.contains(&text[start..end]) {
            end += 1;
        }
        let end = end.min(text.len());
        depth = depth.max(end - start);
        phrases.insert(&text[start..end]);
        start = end;
    }
    depth
}
