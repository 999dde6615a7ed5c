#![allow(dead_code)]

use rsakit::automata::{DataWord, Nra, Rsa};
use rsakit::format::parse_tpn;
use rsakit::tpn::{fire, Marking, Tpn, TpnTransition};

pub fn count(w: &DataWord, d: u64) -> usize {
    w.data().iter().filter(|&&x| x == d).count()
}

/// Some datum occurs twice.
pub fn exists_rep(w: &DataWord) -> bool {
    w.data().iter().any(|&d| count(w, d) >= 2)
}

/// All data are distinct.
pub fn no_rep(w: &DataWord) -> bool {
    !exists_rep(w)
}

/// Some datum occurs exactly once.
pub fn not_all_rep(w: &DataWord) -> bool {
    w.data().iter().any(|&d| count(w, d) == 1)
}

/// Words over the automaton's letters, data from `data`, length up to `n`.
pub fn words_for(letters: usize, data: &[u64], n: usize) -> Vec<DataWord> {
    DataWord::enumerate(letters, data, n)
}

pub fn nra_words(a: &Nra, data: &[u64], n: usize) -> Vec<DataWord> {
    words_for(a.alphabet.len(), data, n)
}

/// All markings with at most `k` tokens per place.
pub fn grid(places: usize, k: u32) -> Vec<Marking> {
    let mut out = vec![Vec::new()];
    for _ in 0..places {
        out = out
            .into_iter()
            .flat_map(|v: Vec<u32>| {
                (0..=k).map(move |x| {
                    let mut v = v.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
    }
    out.into_iter().map(Marking).collect()
}

/// Checks `basis` against brute force over the grid: it is an antichain,
/// each element enables a covering firing, and it generates exactly the
/// grid markings whose firing covers `target`.
pub fn pre_basis_matches_brute_force(t: &TpnTransition, target: &Marking, basis: &[Marking], k: u32) -> Result<(), String> {
    for (i, b) in basis.iter().enumerate() {
        if !fire(t, b).is_some_and(|m| target.le(&m)) {
            return Err(format!("basis element {b:?} does not cover"));
        }
        if basis.iter().enumerate().any(|(j, c)| j != i && c.le(b)) {
            return Err(format!("basis element {b:?} is not minimal"));
        }
    }
    for m in grid(target.len(), k) {
        let covers = fire(t, &m).is_some_and(|n| target.le(&n));
        let generated = basis.iter().any(|b| b.le(&m));
        if covers != generated {
            return Err(format!("{m:?}: fire covers {covers}, basis says {generated}"));
        }
    }
    Ok(())
}

pub fn net(src: &str) -> Tpn {
    parse_tpn(src).unwrap()
}

pub fn target(n: &Tpn, pairs: &[(&str, u32)]) -> Marking {
    let ps: Vec<_> = pairs.iter().map(|(p, k)| (n.place(p).unwrap(), *k)).collect();
    Marking::from_pairs(n.num_places(), &ps)
}

/// Handcrafted nets with a target and the expected coverability verdict.
pub fn handcrafted() -> Vec<(Tpn, Marking, bool)> {
    let mut out = Vec::new();
    let pump = net("tpn pump { places p0 p1; init p0:1; t : in p0:1; out p0:1 p1:1; }");
    out.push((pump.clone(), target(&pump, &[("p1", 2)]), true));
    let dead = net("tpn dead { places p0 p1; init p0:1; }");
    out.push((dead.clone(), target(&dead, &[("p1", 1)]), false));
    let gather = net(
        "tpn gather { places p0 p1 p2; init p0:1;
           t : in p0:1; out p0:1 p1:1;
           u : in p0:1; out p2:1; transfer p1->p2; }",
    );
    out.push((gather.clone(), target(&gather, &[("p2", 3)]), true));
    let starve = net(
        "tpn starve { places p0 p1 p2; init p0:1;
           t : in p0:1; out p1:1;
           u : in p1:2; out p2:1; }",
    );
    out.push((starve.clone(), target(&starve, &[("p2", 1)]), false));
    let drain = net(
        "tpn drain { places p0 p1 p2; init p0:1;
           t : in p0:1; out p1:2;
           u : in p1:1; out p1:1; transfer p1->p2; }",
    );
    out.push((drain.clone(), target(&drain, &[("p2", 1)]), true));
    out.push((drain.clone(), target(&drain, &[("p2", 2)]), false));
    out
}


/// First accepted word up to renaming of data, by enumeration.
pub fn brute_force_member(a: &Rsa, max_len: usize) -> Option<DataWord> {
    DataWord::enumerate_canonical(a.alphabet.len(), max_len).into_iter().find(|w| a.accepts(w))
}
