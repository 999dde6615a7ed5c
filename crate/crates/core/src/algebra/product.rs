use std::collections::BTreeSet;

use super::complete_rsa;
use crate::automata::{merge_alphabets, Rsa, RsaTransition, RsaUpdate};
use crate::error::{Error, Result};
use crate::regset::RegSet;

fn tagged(names: &[String], tag: u8) -> Vec<String> {
    names.iter().map(|n| format!("{n}#{tag}")).collect()
}

fn check_registers(a: &Rsa, b: &Rsa) -> Result<()> {
    if a.num_registers() + b.num_registers() > crate::regset::MAX_REGISTERS {
        return Err(Error::Resource("combined register count exceeds 64".into()));
    }
    if !a.is_canonical() || !b.is_canonical() {
        return Err(Error::input("epsilon edges must be eliminated first"));
    }
    Ok(())
}

fn shift(set: RegSet, by: usize) -> RegSet {
    set.iter().map(|r| r + by).collect()
}

fn shift_update(u: &RsaUpdate, by: usize) -> RsaUpdate {
    RsaUpdate { regs: shift(u.regs, by), input: u.input }
}

/// Disjoint union. Registers of the other operand are kept empty.
pub fn union_rsa(a: &Rsa, b: &Rsa) -> Result<Rsa> {
    check_registers(a, b)?;
    let (alphabet, ma, mb) = merge_alphabets(&a.alphabet, &b.alphabet);
    let (na, nb) = (a.num_registers(), b.num_registers());
    let off = a.num_states();
    let mut transitions = Vec::new();
    for t in &a.transitions {
        let mut update = t.update.clone();
        update.extend(std::iter::repeat(RsaUpdate::CLEAR).take(nb));
        transitions.push(RsaTransition { letter: ma[t.letter], update, ..t.clone() });
    }
    for t in &b.transitions {
        let mut update = vec![RsaUpdate::CLEAR; na];
        update.extend(t.update.iter().map(|u| shift_update(u, na)));
        transitions.push(RsaTransition {
            src: t.src + off,
            letter: mb[t.letter],
            in_guard: shift(t.in_guard, na),
            notin_guard: shift(t.notin_guard, na),
            update,
            dst: t.dst + off,
        });
    }
    let mut states = tagged(&a.states, 1);
    states.extend(tagged(&b.states, 2));
    let mut registers = tagged(&a.registers, 1);
    registers.extend(tagged(&b.registers, 2));
    Ok(Rsa {
        name: format!("{}_or_{}", a.name, b.name),
        alphabet,
        states,
        registers,
        transitions,
        epsilon: Vec::new(),
        initial: a.initial.iter().copied().chain(b.initial.iter().map(|q| q + off)).collect(),
        finals: a.finals.iter().copied().chain(b.finals.iter().map(|q| q + off)).collect(),
    })
}

/// Synchronous product over all state pairs; `accept` combines the
/// finality of the components.
pub fn product(a: &Rsa, b: &Rsa, accept: impl Fn(bool, bool) -> bool) -> Result<Rsa> {
    check_registers(a, b)?;
    let (alphabet, ma, mb) = merge_alphabets(&a.alphabet, &b.alphabet);
    let na = a.num_registers();
    let nb = b.num_states();
    let pair = |p: usize, q: usize| p * nb + q;
    let mut states = Vec::with_capacity(a.num_states() * nb);
    for p in &a.states {
        for q in &b.states {
            states.push(format!("({p},{q})"));
        }
    }
    let mut transitions = Vec::new();
    for s in &a.transitions {
        for t in &b.transitions {
            if ma[s.letter] != mb[t.letter] {
                continue;
            }
            let mut update = s.update.clone();
            update.extend(t.update.iter().map(|u| shift_update(u, na)));
            transitions.push(RsaTransition {
                src: pair(s.src, t.src),
                letter: ma[s.letter],
                in_guard: s.in_guard.union(shift(t.in_guard, na)),
                notin_guard: s.notin_guard.union(shift(t.notin_guard, na)),
                update,
                dst: pair(s.dst, t.dst),
            });
        }
    }
    let mut initial = BTreeSet::new();
    for &p in &a.initial {
        for &q in &b.initial {
            initial.insert(pair(p, q));
        }
    }
    let finals = (0..a.num_states())
        .flat_map(|p| (0..nb).map(move |q| (p, q)))
        .filter(|&(p, q)| accept(a.is_final(p), b.is_final(q)))
        .map(|(p, q)| pair(p, q))
        .collect();
    let mut registers = tagged(&a.registers, 1);
    registers.extend(tagged(&b.registers, 2));
    Ok(Rsa {
        name: format!("{}_and_{}", a.name, b.name),
        alphabet,
        states,
        registers,
        transitions,
        epsilon: Vec::new(),
        initial,
        finals,
    })
}

pub fn intersect_rsa(a: &Rsa, b: &Rsa) -> Result<Rsa> {
    product(a, b, |x, y| x && y)
}

/// Union that stays deterministic: both operands are completed over the
/// merged alphabet and combined as a product with disjunctive finals.
pub fn union_drsa(a: &Rsa, b: &Rsa) -> Result<Rsa> {
    let (alphabet, ma, mb) = merge_alphabets(&a.alphabet, &b.alphabet);
    let a = complete_rsa(&a.relabel(alphabet.clone(), &ma));
    let b = complete_rsa(&b.relabel(alphabet, &mb));
    let mut out = product(&a, &b, |x, y| x || y)?;
    out.name = format!("{}_or_{}", a.name, b.name);
    Ok(out)
}
