use std::collections::BTreeSet;

use crate::automata::{Nra, NraTransition, NraUpdate, Rsa, RsaTransition, RsaUpdate};
use crate::error::{Error, Result};
use crate::regset::RegSet;

fn sink_name(states: &[String]) -> String {
    let mut name = "sink".to_string();
    while states.contains(&name) {
        name.push('\'');
    }
    name
}

/// Add a rejecting sink and, for every uncovered `(q, a, g)` case, a
/// transition with guard `(g, R \ g)` into it.
pub fn complete(a: &Nra) -> Nra {
    let mut out = a.clone();
    let all = a.all_registers();
    let bots = vec![NraUpdate::Bot; a.num_registers()];
    let sink = out.add_state(sink_name(&a.states));
    let idx = a.index();
    for q in 0..a.num_states() {
        for l in 0..a.alphabet.len() {
            let here = &idx[q * a.alphabet.len() + l];
            for g in all.subsets() {
                let covered = here.iter().any(|&i| {
                    let t = &a.transitions[i];
                    t.eq.is_subset(g) && !t.neq.intersects(g)
                });
                if !covered {
                    out.transitions.push(NraTransition {
                        src: q,
                        letter: l,
                        eq: g,
                        neq: all.difference(g),
                        update: bots.clone(),
                        dst: sink,
                    });
                }
            }
        }
    }
    for l in 0..a.alphabet.len() {
        out.transitions.push(NraTransition {
            src: sink,
            letter: l,
            eq: RegSet::EMPTY,
            neq: RegSet::EMPTY,
            update: bots.clone(),
            dst: sink,
        });
    }
    out
}

/// Complete, then swap final and non-final states.
pub fn complement_swap(a: &Nra) -> Nra {
    let mut out = complete(a);
    out.finals = (0..out.num_states()).filter(|q| !a.finals.contains(q)).collect();
    out.name = format!("not_{}", a.name);
    out
}

/// Complete an RsA. Uncovered cases are enumerated over the registers that
/// the guards of each `(q, a)` pair mention, so determinism is preserved.
pub fn complete_rsa(a: &Rsa) -> Rsa {
    let mut out = a.clone();
    let clear = vec![RsaUpdate::CLEAR; a.num_registers()];
    let idx = a.index();
    let mut missing = Vec::new();
    for q in 0..a.num_states() {
        for l in 0..a.alphabet.len() {
            let here = &idx[q * a.alphabet.len() + l];
            let universe = here.iter().fold(RegSet::EMPTY, |u, &i| {
                let t = &a.transitions[i];
                u.union(t.in_guard).union(t.notin_guard)
            });
            for g in universe.subsets() {
                let covered = here.iter().any(|&i| {
                    let t = &a.transitions[i];
                    t.in_guard.is_subset(g) && !t.notin_guard.intersects(g)
                });
                if !covered {
                    missing.push((q, l, g, universe.difference(g)));
                }
            }
        }
    }
    if missing.is_empty() && !a.initial.is_empty() {
        return out;
    }
    let s = out.add_state(sink_name(&a.states));
    for (q, l, pos, neg) in missing {
        out.transitions.push(RsaTransition {
            src: q,
            letter: l,
            in_guard: pos,
            notin_guard: neg,
            update: clear.clone(),
            dst: s,
        });
    }
    for l in 0..a.alphabet.len() {
        out.transitions.push(RsaTransition {
            src: s,
            letter: l,
            in_guard: RegSet::EMPTY,
            notin_guard: RegSet::EMPTY,
            update: clear.clone(),
            dst: s,
        });
    }
    if out.initial.is_empty() {
        out.initial.insert(s);
    }
    out
}

/// Complement of a deterministic RsA.
pub fn complement_drsa(a: &Rsa) -> Result<Rsa> {
    if !a.is_canonical() {
        return Err(Error::input("epsilon edges must be eliminated first"));
    }
    if !a.is_deterministic() || a.initial.len() > 1 {
        return Err(Error::NotDeterministic);
    }
    let mut out = complete_rsa(a);
    let finals: BTreeSet<usize> = (0..out.num_states()).filter(|q| !out.finals.contains(q)).collect();
    out.finals = finals;
    out.name = format!("not_{}", a.name);
    Ok(out)
}
