use czgrep_core::approx::{search_approx_in, ApproxQuery, ApproxSearcher};
use czgrep_core::oracle::{oracle_approx, oracle_regex, random_regex};
use czgrep_core::regex::{build_tnfa, search_regex_in, Regex};
use czgrep_core::selection::{build_selected_set, PayloadMode};
use czgrep_core::zl78::{
    compress, decompress, read_compressed, write_compressed, DictionaryTrie, PhraseSource, Scheme,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn text(max: usize) -> impl Strategy<Value = Vec<u8>> {
    prop_oneof![
        prop::collection::vec(prop::sample::select(b"ab".to_vec()), 0..max),
        prop::collection::vec(prop::sample::select(b"acgt".to_vec()), 0..max),
        prop::collection::vec(any::<u8>(), 0..max),
        (0..max).prop_map(|n| vec![b'a'; n]),
    ]
}

fn small_text(max: usize) -> impl Strategy<Value = Vec<u8>> {
    prop_oneof![
        prop::collection::vec(prop::sample::select(b"ab".to_vec()), 0..max),
        prop::collection::vec(prop::sample::select(b"abcn".to_vec()), 0..max),
        (0..max).prop_map(|n| vec![b'a'; n]),
    ]
}

fn approx_case() -> impl Strategy<Value = (Vec<u8>, Vec<u8>, usize, usize)> {
    (
        small_text(300),
        prop::collection::vec(prop::sample::select(b"abcn".to_vec()), 1..8),
        1usize..40,
    )
        .prop_flat_map(|(q, p, tau)| {
            let m = p.len();
            (Just(q), Just(p), 0..m.min(4), Just(tau))
        })
}

fn regex(size: usize) -> impl Strategy<Value = Regex> {
    (any::<u64>(), 1..=size).prop_map(|(seed, size)| {
        random_regex(&mut ChaCha8Rng::seed_from_u64(seed), b"abn", size, 3)
    })
}

/// Reference distance from `node` to the nearest member, by walking the
/// explicit trie.
fn trie_distance(trie: &DictionaryTrie, members: &[usize], mut node: usize) -> usize {
    let mut steps = 0;
    while members.binary_search(&node).is_err() {
        node = trie.parent(node);
        steps += 1;
    }
    steps
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn roundtrip(q in text(600)) {
        for scheme in [Scheme::Zl78, Scheme::Zlw] {
            let z = compress(&q, scheme);
            prop_assert_eq!(decompress(&z), q.clone());
            let back = read_compressed(&write_compressed(&z)).unwrap();
            prop_assert_eq!(&back, &z);
        }
    }

    #[test]
    fn parse_is_greedy(q in text(400)) {
        let z = compress(&q, Scheme::Zl78);
        let trie = DictionaryTrie::build(&z);
        let mut seen = std::collections::HashSet::new();
        seen.insert(Vec::new());
        let mut pos = 0;
        for i in 1..=z.len() {
            let phrase = trie.phrase(trie.piece(i));
            prop_assert_eq!(&q[pos..pos + phrase.len()], phrase.as_slice());
            pos += phrase.len();
            if z.element(i).label.is_some() {
                // one character past the longest known phrase
                prop_assert!(!seen.contains(&phrase));
                prop_assert!(seen.contains(&phrase[..phrase.len() - 1]));
                seen.insert(phrase);
            } else {
                prop_assert!(seen.contains(&phrase));
                prop_assert_eq!(pos, q.len());
            }
        }
        prop_assert_eq!(pos, q.len());
    }

    #[test]
    fn selection_bounds(q in text(800), tau in 1usize..64) {
        for scheme in [Scheme::Zl78, Scheme::Zlw] {
            let trie = DictionaryTrie::build(&compress(&q, scheme));
            let sel = build_selected_set(&trie, tau, PayloadMode::None).unwrap();
            let n = trie.node_count() - 1;
            let t = sel.tau();
            prop_assert!(sel.len() <= 1 + n / t);
            let members = sel.members();
            for x in 0..trie.node_count() {
                let d = trie_distance(&trie, &members, x);
                prop_assert!(d <= 2 * t);
                let (y, path) = sel.nearest_member(&trie, x);
                prop_assert_eq!(path.len() - 1, d);
                prop_assert!(sel.contains(y));
            }
        }
    }

    #[test]
    fn shortcuts_point_at_window_depth(q in small_text(600), m in 1usize..6, k in 0usize..3, tau in 1usize..8) {
        prop_assume!(k < m);
        let trie = DictionaryTrie::build(&compress(&q, Scheme::Zl78));
        let sel = build_selected_set(&trie, tau, PayloadMode::Approx { pattern_len: m, errors: k }).unwrap();
        for y in sel.members() {
            let p = sel.payload(y).unwrap();
            prop_assert_eq!(p.phrase_length, trie.depth(y));
            match p.shortcut {
                Some(h) => {
                    prop_assert!(p.phrase_length > m + k);
                    prop_assert_eq!(trie.depth(h), m + k);
                    let mut x = y;
                    while trie.depth(x) > m + k {
                        x = trie.parent(x);
                    }
                    prop_assert_eq!(x, h);
                }
                None => prop_assert!(p.phrase_length <= m + k),
            }
        }
    }

    #[test]
    fn approx_matches_oracle((q, p, k, tau) in approx_case()) {
        let expected = oracle_approx(&q, &p, k);
        let query = ApproxQuery::new(p.clone(), k, tau).unwrap();
        let z = compress(&q, Scheme::Zl78);
        let (got, stats) = search_approx_in(&z.zl78_view().unwrap(), &query).unwrap();
        prop_assert_eq!(got.positions(), expected.as_slice());
        prop_assert_eq!(stats.text_len, q.len());
        let trie = DictionaryTrie::build(&compress(&q, Scheme::Zlw));
        let (got, _) = search_approx_in(&trie, &query).unwrap();
        prop_assert_eq!(got.positions(), expected.as_slice());
    }

    #[test]
    fn descriptions_are_exact((q, p, k, tau) in approx_case()) {
        let z = compress(&q, Scheme::Zl78);
        let view = z.zl78_view().unwrap();
        let w = p.len() + k;
        let mut s = ApproxSearcher::new(&view, ApproxQuery::new(p.clone(), k, tau).unwrap()).unwrap();
        let mut prev_rsuf: Vec<u8> = Vec::new();
        while let Some((d, _)) = s.step() {
            let end = d.start + d.length - 1;
            let phrase = &q[d.start - 1..end];
            prop_assert_eq!(&d.rpre[..], &phrase[..d.length.min(w)]);
            prop_assert_eq!(&d.rsuf[..], &q[end - end.min(w)..end]);
            let internal: Vec<usize> = oracle_approx(phrase, &p, k);
            prop_assert_eq!(&d.internal, &internal);
            let window = [prev_rsuf.clone(), d.rpre.clone()].concat();
            prop_assert_eq!(&d.overlapping, &oracle_approx(&window, &p, k));
            prop_assert!(d.rpre.len() + d.rsuf.len() + prev_rsuf.len() + w <= 4 * w);
            prev_rsuf = d.rsuf;
        }
        prop_assert!(s.peak_live_chars() <= 4 * w);
    }

    #[test]
    fn regex_matches_oracle(q in small_text(200), r in regex(12), tau in 1usize..40) {
        let expected = oracle_regex(&q, &r);
        let a = build_tnfa(&r);
        for scheme in [Scheme::Zl78, Scheme::Zlw] {
            let trie = DictionaryTrie::build(&compress(&q, scheme));
            let (got, _) = search_regex_in(&trie, &a, tau).unwrap();
            prop_assert_eq!(got.positions(), expected.as_slice(), "{} {:?}", r, scheme);
        }
        let z = compress(&q, Scheme::Zl78);
        let (got, _) = search_regex_in(&z.zl78_view().unwrap(), &a, tau).unwrap();
        prop_assert_eq!(got.positions(), expected.as_slice());
    }

    #[test]
    fn tau_invariance((q, p, k, _) in approx_case(), r in regex(10)) {
        let z = compress(&q, Scheme::Zl78);
        let view = z.zl78_view().unwrap();
        let a = build_tnfa(&r);
        let mut approx = Vec::new();
        let mut regex = Vec::new();
        for tau in [1, 2, 3, 5, 8, 1000] {
            let query = ApproxQuery::new(p.clone(), k, tau).unwrap();
            approx.push(search_approx_in(&view, &query).unwrap().0);
            regex.push(search_regex_in(&view, &a, tau).unwrap().0);
        }
        prop_assert!(approx.windows(2).all(|w| w[0] == w[1]));
        prop_assert!(regex.windows(2).all(|w| w[0] == w[1]));
    }

    #[test]
    fn selection_shrinks_with_tau(q in text(500), tau in 1usize..50) {
        let trie = DictionaryTrie::build(&compress(&q, Scheme::Zl78));
        let a = build_selected_set(&trie, tau, PayloadMode::None).unwrap().len();
        let b = build_selected_set(&trie, tau + 1, PayloadMode::None).unwrap().len();
        prop_assert!(b <= a, "tau {}: {} then {}", tau, a, b);
    }

    #[test]
    fn tnfa_size_bounds(r in regex(40)) {
        let a = build_tnfa(&r);
        let m = r.size();
        prop_assert!(a.state_count() <= 2 * m);
        prop_assert!(a.transition_count() <= 4 * m);
    }

    #[test]
    fn malformed_input_is_rejected_gracefully(
        q in text(200),
        scheme in prop::sample::select(vec![Scheme::Zl78, Scheme::Zlw]),
        edits in prop::collection::vec((any::<usize>(), any::<u8>()), 1..4),
        cut in any::<usize>(),
    ) {
        let mut bytes = write_compressed(&compress(&q, scheme));
        for (at, b) in edits {
            let at = at % bytes.len();
            bytes[at] = b;
        }
        bytes.truncate(cut % (bytes.len() + 1));
        if let Ok(z) = read_compressed(&bytes) {
            let _ = decompress(&z);
        }
    }
}
