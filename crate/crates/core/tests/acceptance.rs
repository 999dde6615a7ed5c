//! One PASS/FAIL line per acceptance criterion.

mod common;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rsakit::algebra::{
    complement_drsa, complement_swap, eliminate_emptiness_guards, intersect_rsa, register_local, single_valued_with,
    union_rsa, SingleValuedMode,
};
use rsakit::automata::{nra_membership, ura_membership, DataWord, RsaUpdate};
use rsakit::decide::is_empty;
use rsakit::determinise::{determinise, determinise_pipeline, BotReason, Outcome};
use rsakit::fixtures;
use rsakit::random::{Gen, Shape};
use rsakit::reduction::transfer::{negat, posit_sop, posit_sop_prime, posit_x};
use rsakit::reduction::{compute_transfer, tpn_to_rsa};
use rsakit::regex::{backtrack_search, Grep, MatchPath};
use rsakit::regset::RegSet;
use rsakit::tpn::{find_cover_witness, fire, forward_cover_search, is_coverable, min_pre_basis, replay, Marking};

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ac1() -> Check {
    let (f1, f2, f3) = (fixtures::exists_rep_drsa(), fixtures::no_rep_drsa(), fixtures::not_all_rep_rsa());
    let words = DataWord::enumerate(1, &[1, 2, 3], 4);
    let mut bad = 0;
    for w in &words {
        bad += usize::from(f1.accepts(w) != common::exists_rep(w));
        bad += usize::from(f2.accepts(w) != common::no_rep(w));
        bad += usize::from(f3.accepts(w) != common::not_all_rep(w));
    }
    ensure(bad == 0, || format!("{bad} disagreements"))?;
    Ok(format!("{} words x 3 automata", words.len()))
}

fn ac2() -> Check {
    let mut g = Gen::new(11);
    let words = [DataWord::enumerate(1, &[1, 2, 3], 5), DataWord::enumerate(2, &[1, 2, 3], 5)];
    let (mut ok, mut tried) = (0, 0);
    while ok < 1000 {
        tried += 1;
        if tried > 20_000 {
            return Err(format!("only {ok} successes in {tried} tries"));
        }
        let s = g.shape(Shape::new(4, 2, 2, 8));
        let a = g.nra(s, true);
        let b = register_local(&single_valued_with(&register_local(&a), SingleValuedMode::Strict));
        let Outcome::Drsa(d) = determinise(&b).map_err(|e| e.to_string())? else { continue };
        for w in &words[b.alphabet.len() - 1] {
            ensure(d.rsa.accepts(w) == b.accepts(w), || format!("disagreement on {w:?}"))?;
        }
        ok += 1;
    }
    Ok(format!("{ok} successes out of {tried} inputs"))
}

fn ac3() -> Check {
    let mut g = Gen::new(12);
    for i in 0..500 {
        let a = g.nra_eq1(4, 2);
        if let Outcome::Bot(b) = determinise_pipeline(&a).map_err(|e| e.to_string())? {
            return Err(format!("input {i}: BOT {}", b.reason));
        }
    }
    Ok("500 inputs, no BOT".into())
}

fn ac4() -> Check {
    let reason = |a: &rsakit::automata::Nra| determinise(a).unwrap().bot().map(|b| b.reason);
    ensure(reason(&fixtures::diseq_nra()) == Some(BotReason::Cardinality), || "disequality fixture".into())?;
    ensure(reason(&fixtures::cartesian_nra()) == Some(BotReason::Cartesian), || "cartesian fixture".into())?;
    let a = fixtures::collapse_nra();
    let d = determinise(&a).unwrap().drsa().cloned().ok_or("equality fixture returned BOT")?;
    let (q, s) = (a.state("q").unwrap(), a.state("s").unwrap());
    let rs = a.register("rs").unwrap();
    let t = d
        .rsa
        .transitions
        .iter()
        .find(|t| {
            d.macrostates[t.src].states == BTreeSet::from([q]) && d.macrostates[t.dst].states == BTreeSet::from([s])
        })
        .ok_or("no {q} -> {s} transition")?;
    ensure(t.update[rs] == RsaUpdate::input(), || format!("update {:?}", t.update[rs]))?;
    Ok("CARDINALITY, CARTESIAN, collapsed update".into())
}

fn ac5() -> Check {
    let mut g = Gen::new(0x5eed);
    let mut nonempty = 0;
    for i in 0..200 {
        let s = g.shape(Shape::new(3, 2, 2, 6));
        let a = g.rsa(s);
        let v = is_empty(&a).map_err(|e| e.to_string())?;
        if let Some(w) = common::brute_force_member(&a, 6) {
            ensure(!v.answer, || format!("case {i}: {w:?} accepted but reported empty"))?;
        }
        if let Some(w) = &v.witness {
            ensure(a.accepts(w), || format!("case {i}: witness does not replay"))?;
            nonempty += 1;
        }
        ensure(v.answer == v.witness.is_none(), || format!("case {i}: verdict without witness"))?;
    }
    Ok(format!("200 automata, {nonempty} nonempty with replayed witnesses"))
}

fn ac6() -> Check {
    let rs = |v: &[usize]| -> RegSet { v.iter().copied().collect() };
    let up = vec![RsaUpdate { regs: rs(&[0]), input: true }, RsaUpdate { regs: rs(&[0, 1]), input: false }];
    let d = compute_transfer(&up, 2).map_err(|e| e.to_string())?;
    let expect = [(0b11, rs(&[0, 1])), (0b01, rs(&[0, 1])), (0b10, rs(&[1])), (0b00, RegSet::EMPTY)];
    for (m, out) in expect {
        ensure(d[m] == out, || format!("delta({m:02b}) = {:?}", d[m]))?;
    }
    let set = |v: &[&[usize]]| -> BTreeSet<RegSet> { v.iter().map(|x| rs(x)).collect() };
    ensure(posit_x(&up, rs(&[0, 1])) == set(&[&[0], &[0, 1]]), || "posit_x {r1,r2}".into())?;
    ensure(posit_x(&up, rs(&[1])) == set(&[&[0, 1]]), || "posit_x {r2}".into())?;
    ensure(negat(&up, rs(&[0])) == rs(&[0, 1]), || "negat {r1}".into())?;
    ensure(negat(&up, rs(&[1])) == rs(&[0]), || "negat {r2}".into())?;
    ensure(posit_sop(&up, rs(&[1])) == set(&[&[0], &[1]]), || "posit_sop {r2}".into())?;
    ensure(posit_sop_prime(&up, rs(&[0, 1])) == set(&[&[0], &[0, 1]]), || "posit_sop' {r1,r2}".into())?;
    ensure(posit_sop_prime(&up, rs(&[0])).is_empty(), || "posit_sop' {r1}".into())?;
    ensure(posit_sop_prime(&up, rs(&[1])) == set(&[&[1]]), || "posit_sop' {r2}".into())?;
    ensure(posit_sop_prime(&up, RegSet::EMPTY) == set(&[&[]]), || "posit_sop' {}".into())?;
    Ok("transfer and intermediate sets".into())
}

fn ac7() -> Check {
    let mut g = Gen::new(31);
    let mut fired = 0;
    while fired < 1000 {
        let places = 1 + g.below(4);
        let t = g.tpn_transition(places, 2, "t".into());
        let m = g.marking(places, 3);
        let mut extra = g.marking(places, 2);
        if extra.total() == 0 {
            extra[g.below(places)] = 1;
        }
        let Some(n) = fire(&t, &m) else { continue };
        let big = Marking(m.0.iter().zip(&extra.0).map(|(a, b)| a + b).collect());
        let n2 = fire(&t, &big).ok_or("larger marking disables a transition")?;
        ensure(n.le(&n2) && n != n2, || format!("{m:?} + {extra:?}"))?;
        fired += 1;
    }
    let mut g = Gen::new(37);
    for _ in 0..100 {
        let net = g.tpn(3, 2, 1);
        let t = &net.transitions[g.below(net.transitions.len())];
        let target = g.marking(net.num_places(), 2);
        common::pre_basis_matches_brute_force(t, &target, &min_pre_basis(t, &target), 3)?;
    }
    let mut g = Gen::new(41);
    for i in 0..200 {
        let net = g.tpn(3, 3, 2);
        let target = g.marking(net.num_places(), 3);
        let backward = is_coverable(&net, &target).map_err(|e| e.to_string())?;
        if forward_cover_search(&net, &target, 6, 6).is_some() {
            ensure(backward, || format!("net {i}: forward covers, backward does not"))?;
        }
        if backward {
            let seq = find_cover_witness(&net, &target, 64, None).map_err(|e| e.to_string())?;
            let seq = seq.ok_or_else(|| format!("net {i}: no forward witness"))?;
            ensure(replay(&net, &seq).is_some_and(|m| target.le(&m)), || format!("net {i}: bad witness"))?;
        }
    }
    Ok("1000 firings, 100 bases, 200 nets".into())
}

fn ac8() -> Check {
    let cases = common::handcrafted();
    for (n, m, expected) in &cases {
        let cover = is_coverable(n, m).map_err(|e| e.to_string())?;
        let empty = is_empty(&tpn_to_rsa(n, m)).map_err(|e| e.to_string())?.answer;
        ensure(cover == *expected && cover == !empty, || format!("{}: cover {cover}, empty {empty}", n.name))?;
    }
    Ok(format!("{} net/target pairs", cases.len()))
}

fn ac9() -> Check {
    let small = Shape::new(3, 2, 2, 6);
    let data = [1, 2, 3, 4];
    let mut g = Gen::new(17);
    for _ in 0..200 {
        let s = g.shape(small);
        let d = g.drsa(s);
        let c = complement_drsa(&d).map_err(|e| e.to_string())?;
        let w = g.word(s.letters, &data, 6);
        ensure(c.accepts(&w) != d.accepts(&w), || format!("complement on {w:?}"))?;
    }
    for _ in 0..200 {
        let s = g.shape(small);
        let (a, b) = (g.rsa(s), g.rsa(s));
        let u = union_rsa(&a, &b).map_err(|e| e.to_string())?;
        let w = g.word(s.letters, &data, 6);
        ensure(u.accepts(&w) == (a.accepts(&w) || b.accepts(&w)), || format!("union on {w:?}"))?;
    }
    for _ in 0..200 {
        let s = g.shape(small);
        let (a, b) = (g.rsa(s), g.rsa(s));
        let p = intersect_rsa(&a, &b).map_err(|e| e.to_string())?;
        let w = g.word(s.letters, &data, 6);
        ensure(p.accepts(&w) == (a.accepts(&w) && b.accepts(&w)), || format!("product on {w:?}"))?;
    }
    let a = fixtures::exists_rep_nra();
    let u = complement_swap(&a);
    for w in DataWord::enumerate(1, &[1, 2, 3], 4) {
        ensure(ura_membership(&u, &w) == !nra_membership(&a, &w), || format!("duality on {w:?}"))?;
    }
    Ok("3 x 200 samples, duality on 121 words".into())
}

fn ac10() -> Check {
    let g = Grep::new(fixtures::FLAGSHIP_REGEX).map_err(|e| e.to_string())?;
    ensure(g.drsa.is_some(), || format!("fallback: {:?}", g.fallback))?;
    let out = g.is_match(fixtures::FLAGSHIP_TEXT);
    ensure(!out.matched && out.steps == 42 && out.path == MatchPath::Deterministic, || format!("{out:?}"))?;
    let (_, bt_steps) = backtrack_search(&g.ast, fixtures::FLAGSHIP_TEXT);
    let chars = ['a', 'b', ';', '1', '2', '3', '4', '5'];
    let mut gen = Gen::new(2024);
    let mut det = 0;
    for _ in 0..100 {
        let ast = gen.regex(&chars, 6);
        let grep = Grep::new(&ast.to_string()).map_err(|e| e.to_string())?;
        det += usize::from(grep.drsa.is_some());
        for _ in 0..5 {
            let text = gen.text(&chars, 12);
            let out = grep.is_match(&text);
            ensure(out.matched == backtrack_search(&ast, &text).0, || format!("{ast} on {text:?}"))?;
        }
    }
    let states = g.drsa.as_ref().map_or(0, |d| d.num_states());
    Ok(format!(
        "42 steps ({bt_steps} backtracking), {states} states; 500 pairs agree, {det}/100 patterns deterministic"
    ))
}

fn ac11() -> Check {
    let mut g = Gen::new(23);
    for i in 0..100 {
        let s = g.shape(Shape::new(3, 2, 2, 6));
        let e = g.ersa(s);
        let plain = eliminate_emptiness_guards(&e);
        for w in DataWord::enumerate(s.letters, &[1, 2, 3], 4) {
            ensure(plain.accepts(&w) == e.accepts(&w), || format!("case {i} on {w:?}"))?;
        }
    }
    Ok("100 automata, words up to length 4".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Check, Duration); 11] = [
        ("AC1", ac1, Duration::from_secs(10)),
        ("AC2", ac2, Duration::from_secs(300)),
        ("AC3", ac3, Duration::MAX),
        ("AC4", ac4, Duration::MAX),
        ("AC5", ac5, Duration::from_secs(600)),
        ("AC6", ac6, Duration::MAX),
        ("AC7", ac7, Duration::MAX),
        ("AC8", ac8, Duration::MAX),
        ("AC9", ac9, Duration::MAX),
        ("AC10", ac10, Duration::from_secs(60)),
        ("AC11", ac11, Duration::MAX),
    ];
    std::panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (name, check, limit) in criteria {
        let start = Instant::now();
        let res = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or(p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        let took = start.elapsed();
        let res = res.and_then(|msg| {
            if took > limit {
                Err(format!("took {took:.2?}, limit {limit:?}"))
            } else {
                Ok(msg)
            }
        });
        match res {
            Ok(msg) => println!("{name} PASS {took:.2?} {msg}"),
            Err(msg) => {
                failed += 1;
                println!("{name} FAIL {took:.2?} {msg}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
