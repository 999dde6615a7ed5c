mod common;

use common::{brute_force_member, handcrafted, net, target};
use proptest::prelude::*;
use rsakit::automata::RsaUpdate;
use rsakit::decide::is_empty;
use rsakit::random::{Gen, Shape};
use rsakit::reduction::transfer::posit_sop_prime;
use rsakit::reduction::{compute_transfer, tpn_to_rsa};
use rsakit::regset::RegSet;
use rsakit::tpn::is_coverable;

#[test]
fn handcrafted_expectations() {
    for (n, m, expected) in handcrafted() {
        assert_eq!(is_coverable(&n, &m).unwrap(), expected, "{}", n.name);
    }
}

#[test]
fn gadget_automaton_agrees_with_coverability() {
    for (n, m, expected) in handcrafted() {
        let a = tpn_to_rsa(&n, &m);
        let v = is_empty(&a).unwrap();
        assert_eq!(!v.answer, expected, "{}", n.name);
        if let Some(w) = v.witness {
            assert!(a.accepts(&w), "{}", n.name);
        }
    }
}

#[test]
fn initial_marking_is_normalised() {
    let n = net("tpn two { places p q; init p:1 q:1; t : in p:1 q:1; out q:3; }");
    for (k, expected) in [(3, true), (4, false)] {
        let m = target(&n, &[("q", k)]);
        assert_eq!(is_coverable(&n, &m).unwrap(), expected);
        assert_eq!(is_empty(&tpn_to_rsa(&n, &m)).unwrap().answer, !expected);
    }
}

#[test]
fn emptiness_matches_bounded_search_on_random_automata() {
    let mut g = Gen::new(0x5eed);
    let mut nonempty = 0;
    for i in 0..200 {
        let s = g.shape(Shape::new(3, 2, 2, 6));
        let a = g.rsa(s);
        let v = is_empty(&a).unwrap();
        if let Some(w) = brute_force_member(&a, 6) {
            assert!(!v.answer, "case {i}: {w:?} accepted but reported empty");
            nonempty += 1;
        }
        if let Some(w) = &v.witness {
            assert!(a.accepts(w), "case {i}: witness does not replay");
        }
        assert_eq!(v.answer, v.witness.is_none(), "case {i}");
    }
    assert!(nonempty > 20);
}

#[test]
fn gadget_witnesses_imply_coverability() {
    let mut g = Gen::new(11);
    let mut checked = 0;
    for _ in 0..12 {
        let n = g.tpn(2, 2, 1);
        let m = g.marking(n.num_places(), 2);
        let a = tpn_to_rsa(&n, &m);
        let Ok(v) = is_empty(&a) else { continue };
        assert_eq!(v.answer, !is_coverable(&n, &m).unwrap(), "{n:?} {m:?}");
        if let Some(w) = v.witness {
            assert!(a.accepts(&w));
            checked += 1;
        }
    }
    assert!(checked > 0);
}

fn update_strategy(k: usize) -> impl Strategy<Value = Vec<RsaUpdate>> {
    prop::collection::vec((0u64..(1 << k), any::<bool>()), k)
        .prop_map(|v| v.into_iter().map(|(m, input)| RsaUpdate { regs: RegSet(m), input }).collect())
}

proptest! {
    #[test]
    fn posit_sop_prime_is_disjoint_across_regions(up in (1usize..=3).prop_flat_map(update_strategy)) {
        let k = up.len();
        let regions: Vec<RegSet> = RegSet::full(k).subsets().collect();
        for (i, &x) in regions.iter().enumerate() {
            for &y in &regions[i + 1..] {
                let a = posit_sop_prime(&up, x);
                let b = posit_sop_prime(&up, y);
                prop_assert!(a.is_disjoint(&b), "{x:?} {y:?}");
            }
        }
    }

    #[test]
    fn transfer_agrees_with_sum_of_products(up in (1usize..=3).prop_flat_map(update_strategy)) {
        let k = up.len();
        let delta = compute_transfer(&up, k).unwrap();
        for out in RegSet::full(k).subsets() {
            for src in posit_sop_prime(&up, out) {
                prop_assert_eq!(delta[src.0 as usize], out);
            }
        }
    }
}
