use rsakit::fixtures::{FLAGSHIP_REGEX, FLAGSHIP_TEXT};
use rsakit::random::Gen;
use rsakit::automata::{rsa_reachable_configs, RsaConfig};
use rsakit::determinise::{determinise_pipeline, Cardinality, Outcome};
use rsakit::regex::{backtrack_search, compile_regex, parse_regex, Encoding, Grep, MatchPath};

const CHARS: [char; 8] = ['a', 'b', ';', '1', '2', '3', '4', '5'];

#[test]
fn pipeline_agrees_with_backtracking() {
    let mut gen = Gen::new(2024);
    let (mut pairs, mut deterministic) = (0, 0);
    for _ in 0..100 {
        let ast = gen.regex(&CHARS, 6);
        let g = Grep::new(&ast.to_string()).unwrap();
        if g.drsa.is_some() {
            deterministic += 1;
        }
        for _ in 0..5 {
            let text = gen.text(&CHARS, 12);
            let out = g.is_match(&text);
            let (expected, _) = backtrack_search(&ast, &text);
            assert_eq!(out.matched, expected, "{ast} on {text:?} via {:?}", out.path);
            if out.path == MatchPath::Deterministic {
                assert_eq!(out.steps, text.chars().count() as u64);
            }
            pairs += 1;
        }
    }
    assert_eq!(pairs, 500);
    assert!(deterministic >= 50, "{deterministic}");
}

#[test]
fn delimited_family_is_deterministic() {
    let mut gen = Gen::new(9);
    for k in 1..=3 {
        let refs: Vec<String> = (1..=k).rev().map(|i| format!("\\{i}")).collect();
        let groups: Vec<&str> = (0..k).map(|_| "(.).*").collect();
        let pattern = format!("{}{}", groups.join(";.*"), refs.join(""));
        let g = Grep::new(&pattern).unwrap();
        assert!(g.drsa.is_some(), "{pattern}: {:?}", g.fallback);
        for _ in 0..50 {
            let text = gen.text(&CHARS, 12);
            let (expected, _) = backtrack_search(&g.ast, &text);
            assert_eq!(g.is_match(&text).matched, expected, "{pattern} on {text:?}");
        }
    }
}

#[test]
fn flagship_text() {
    let g = Grep::new(FLAGSHIP_REGEX).unwrap();
    let out = g.is_match(FLAGSHIP_TEXT);
    assert_eq!((out.matched, out.steps), (false, 42));
    assert_eq!(out.path, MatchPath::Deterministic);
    let (matched, steps) = backtrack_search(&g.ast, FLAGSHIP_TEXT);
    assert!(!matched);
    assert!(steps > 42 * 10, "{steps}");
}

#[test]
fn encoding_round_trips() {
    let mut gen = Gen::new(3);
    for _ in 0..100 {
        let ast = gen.regex(&CHARS, 6);
        let enc = Encoding::for_ast(&ast.search());
        let text = gen.text(&['a', 'b', ';', '1', 'z', 'é', ' '], 10);
        let w = enc.encode(&text);
        assert_eq!(enc.decode(&w).as_deref(), Some(text.as_str()));
        for c in text.chars() {
            assert!(enc.letter(c) < enc.alphabet().len());
        }
    }
}

#[test]
fn unsupported_patterns_are_rejected() {
    for p in ["(ab)\\1", "a|b", "a+", "(.)*", "((a))", "a{2}", "^a"] {
        assert!(parse_regex(p).is_err(), "{p}");
    }
}

#[test]
fn delimiter_free_pattern_may_fall_back() {
    let g = Grep::new(r"(.).*(.).*(.).*\3\2\1").unwrap();
    let mut gen = Gen::new(4);
    for _ in 0..100 {
        let text = gen.text(&CHARS, 12);
        let out = g.is_match(&text);
        assert_eq!(out.matched, backtrack_search(&g.ast, &text).0, "{text:?}");
        if g.drsa.is_none() {
            assert!(matches!(out.path, MatchPath::Backtracking(_)));
        }
    }
}

#[test]
fn repeated_character() {
    let g = Grep::new(r"(.)\1").unwrap();
    let out = g.is_match("aa");
    assert_eq!((out.matched, out.steps, out.path), (true, 2, MatchPath::Deterministic));
    assert!(!g.is_match("ab").matched);
}

#[test]
fn flagship_counters_bound_sizes() {
    let search = parse_regex(FLAGSHIP_REGEX).unwrap().search();
    let enc = Encoding::for_ast(&search);
    let Outcome::Drsa(d) = determinise_pipeline(&compile_regex(&search, &enc)).unwrap() else { panic!() };
    assert!(d.rsa.is_deterministic());
    let mut gen = Gen::new(5);
    let mut texts: Vec<String> = (0..300).map(|_| gen.text(&CHARS, 12)).collect();
    texts.push(FLAGSHIP_TEXT.into());
    for text in texts {
        for RsaConfig { state, regs } in rsa_reachable_configs(&d.rsa, &enc.encode(&text)).into_iter().flatten() {
            for (r, set) in regs.iter().enumerate() {
                let ok = match d.macrostates[state].counters[r] {
                    Cardinality::Zero => set.is_empty(),
                    Cardinality::One => set.len() == 1,
                    Cardinality::Many => !set.is_empty(),
                };
                assert!(ok, "{text:?}");
            }
        }
    }
}
