use std::collections::BTreeMap;

use crate::automata::{Nra, NraTransition, NraUpdate};
use crate::regset::RegSet;

/// Registers active in each state: written on an incoming edge or tested on
/// an outgoing one.
pub fn rgs(a: &Nra) -> Vec<RegSet> {
    let mut out = vec![RegSet::EMPTY; a.num_states()];
    for t in &a.transitions {
        for (r, u) in t.update.iter().enumerate() {
            if *u != NraUpdate::Bot {
                out[t.dst].insert(r);
            }
        }
        out[t.src] = out[t.src].union(t.eq).union(t.neq);
    }
    out
}

pub fn is_register_local(a: &Nra) -> bool {
    let sets = rgs(a);
    let mut seen = RegSet::EMPTY;
    for s in sets {
        if seen.intersects(s) {
            return false;
        }
        seen = seen.union(s);
    }
    true
}

/// Registers whose current value may still be tested, per state.
pub fn live_registers(a: &Nra) -> Vec<RegSet> {
    let mut live = vec![RegSet::EMPTY; a.num_states()];
    loop {
        let mut changed = false;
        for t in &a.transitions {
            let mut need = t.eq.union(t.neq);
            for r in live[t.dst].iter() {
                if let NraUpdate::Reg(y) = t.update[r] {
                    need.insert(y);
                }
            }
            let next = live[t.src].union(need);
            if next != live[t.src] {
                live[t.src] = next;
                changed = true;
            }
        }
        if !changed {
            return live;
        }
    }
}

/// Clear every register on entry to a state from which it is never tested.
pub fn clear_dead_registers(a: &Nra) -> Nra {
    let live = live_registers(a);
    let mut out = a.clone();
    for t in &mut out.transitions {
        for (r, u) in t.update.iter_mut().enumerate() {
            if !live[t.dst].contains(r) {
                *u = NraUpdate::Bot;
            }
        }
    }
    out
}

/// One copy of each register per state where it is active. Registers not
/// active in the target state are cleared on entry.
pub fn register_local(a: &Nra) -> Nra {
    let active = rgs(a);
    let mut copy: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut registers = Vec::new();
    for (q, set) in active.iter().enumerate() {
        for r in set.iter() {
            copy.insert((q, r), registers.len());
            registers.push(format!("{}@{}", a.registers[r], a.states[q]));
        }
    }
    let n = registers.len();
    let map_set = |q: usize, set: RegSet| -> RegSet { set.iter().map(|r| copy[&(q, r)]).collect() };
    let transitions = a
        .transitions
        .iter()
        .map(|t| {
            let mut update = vec![NraUpdate::Bot; n];
            for r in active[t.dst].iter() {
                update[copy[&(t.dst, r)]] = match t.update[r] {
                    NraUpdate::Reg(x) => match copy.get(&(t.src, x)) {
                        Some(&c) => NraUpdate::Reg(c),
                        None => NraUpdate::Bot,
                    },
                    other => other,
                };
            }
            NraTransition {
                src: t.src,
                letter: t.letter,
                eq: map_set(t.src, t.eq),
                neq: map_set(t.src, t.neq),
                update,
                dst: t.dst,
            }
        })
        .collect();
    Nra {
        name: a.name.clone(),
        alphabet: a.alphabet.clone(),
        states: a.states.clone(),
        registers,
        transitions,
        initial: a.initial.clone(),
        finals: a.finals.clone(),
    }
}
