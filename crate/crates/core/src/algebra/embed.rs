use crate::automata::{Nra, NraUpdate, Rsa, RsaTransition, RsaUpdate};
use crate::regset::RegSet;

/// Read every register of `a` as a set register holding at most one value.
pub fn embed_nra_to_rsa(a: &Nra) -> Rsa {
    let transitions = a
        .transitions
        .iter()
        .map(|t| RsaTransition {
            src: t.src,
            letter: t.letter,
            in_guard: t.eq,
            notin_guard: t.neq,
            update: t
                .update
                .iter()
                .map(|u| match *u {
                    NraUpdate::Reg(r) => RsaUpdate { regs: RegSet::singleton(r), input: false },
                    NraUpdate::In => RsaUpdate::input(),
                    NraUpdate::Bot => RsaUpdate::CLEAR,
                })
                .collect(),
            dst: t.dst,
        })
        .collect();
    Rsa {
        name: a.name.clone(),
        alphabet: a.alphabet.clone(),
        states: a.states.clone(),
        registers: a.registers.clone(),
        transitions,
        epsilon: Vec::new(),
        initial: a.initial.clone(),
        finals: a.finals.clone(),
    }
}
