use std::collections::{BTreeSet, VecDeque};

use super::{index_transitions, DataWord, Datum, Letter, StateId, Symbol};
use crate::regset::RegSet;

/// `r ← ⋃ regs ∪ ({d} if input)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct RsaUpdate {
    pub regs: RegSet,
    pub input: bool,
}

impl RsaUpdate {
    pub const CLEAR: RsaUpdate = RsaUpdate { regs: RegSet::EMPTY, input: false };

    pub fn keep(r: usize) -> Self {
        RsaUpdate { regs: RegSet::singleton(r), input: false }
    }

    pub fn input() -> Self {
        RsaUpdate { regs: RegSet::EMPTY, input: true }
    }

    pub fn is_clear(&self) -> bool {
        self.regs.is_empty() && !self.input
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RsaTransition {
    pub src: StateId,
    pub letter: Letter,
    pub in_guard: RegSet,
    pub notin_guard: RegSet,
    pub update: Vec<RsaUpdate>,
    pub dst: StateId,
}

impl RsaTransition {
    pub fn new(
        src: StateId,
        letter: Letter,
        in_guard: RegSet,
        notin_guard: RegSet,
        update: Vec<RsaUpdate>,
        dst: StateId,
    ) -> crate::Result<Self> {
        if in_guard.intersects(notin_guard) {
            return Err(crate::Error::input(format!(
                "overlapping guards on transition {src} -{letter}-> {dst}"
            )));
        }
        Ok(RsaTransition { src, letter, in_guard, notin_guard, update, dst })
    }

    pub fn plain(src: StateId, letter: Letter, nregs: usize, dst: StateId) -> Self {
        RsaTransition {
            src,
            letter,
            in_guard: RegSet::EMPTY,
            notin_guard: RegSet::EMPTY,
            update: identity_update(nregs),
            dst,
        }
    }
}

pub(crate) fn identity_update(nregs: usize) -> Vec<RsaUpdate> {
    (0..nregs).map(RsaUpdate::keep).collect()
}

/// Register set automaton. `epsilon` edges only appear in intermediate
/// gadget constructions; decision procedures expect them to be eliminated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rsa {
    pub name: String,
    pub alphabet: Vec<String>,
    pub states: Vec<String>,
    pub registers: Vec<String>,
    pub transitions: Vec<RsaTransition>,
    pub epsilon: Vec<(StateId, StateId)>,
    pub initial: BTreeSet<StateId>,
    pub finals: BTreeSet<StateId>,
}

impl Rsa {
    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn num_registers(&self) -> usize {
        self.registers.len()
    }

    pub fn all_registers(&self) -> RegSet {
        RegSet::full(self.registers.len())
    }

    pub fn is_final(&self, q: StateId) -> bool {
        self.finals.contains(&q)
    }

    pub fn is_canonical(&self) -> bool {
        self.epsilon.is_empty()
    }

    pub fn state(&self, name: &str) -> Option<StateId> {
        self.states.iter().position(|s| s == name)
    }

    pub fn letter(&self, name: &str) -> Option<Letter> {
        self.alphabet.iter().position(|a| a == name)
    }

    pub fn register(&self, name: &str) -> Option<usize> {
        self.registers.iter().position(|s| s == name)
    }

    pub fn add_state(&mut self, name: impl Into<String>) -> StateId {
        self.states.push(name.into());
        self.states.len() - 1
    }

    pub(crate) fn index(&self) -> Vec<Vec<usize>> {
        index_transitions(
            self.states.len(),
            self.alphabet.len(),
            self.transitions.iter().map(|t| (t.src, t.letter)),
        )
    }

    pub fn is_deterministic(&self) -> bool {
        let idx = self.index();
        idx.iter().all(|ts| {
            ts.iter().enumerate().all(|(i, &a)| {
                ts[i + 1..].iter().all(|&b| {
                    let (ta, tb) = (&self.transitions[a], &self.transitions[b]);
                    ta.in_guard.intersects(tb.notin_guard) || tb.in_guard.intersects(ta.notin_guard)
                })
            })
        })
    }

    pub fn relabel(&self, alphabet: Vec<String>, map: &[Letter]) -> Rsa {
        let mut out = self.clone();
        out.alphabet = alphabet;
        for t in &mut out.transitions {
            t.letter = map[t.letter];
        }
        out
    }

    pub fn accepts(&self, w: &DataWord) -> bool {
        rsa_membership(self, w)
    }

    fn epsilon_closure(&self, set: &mut BTreeSet<RsaConfig>) {
        if self.epsilon.is_empty() {
            return;
        }
        let mut queue: VecDeque<RsaConfig> = set.iter().cloned().collect();
        while let Some(c) = queue.pop_front() {
            for &(from, to) in &self.epsilon {
                if from == c.state {
                    let n = RsaConfig { state: to, regs: c.regs.clone() };
                    if set.insert(n.clone()) {
                        queue.push_back(n);
                    }
                }
            }
        }
    }

    fn successors(
        &self,
        idx: &[Vec<usize>],
        cur: &BTreeSet<RsaConfig>,
        sym: Symbol,
    ) -> BTreeSet<RsaConfig> {
        let mut next = BTreeSet::new();
        if sym.0 < self.alphabet.len() {
            for cfg in cur {
                for &ti in &idx[cfg.state * self.alphabet.len() + sym.0] {
                    if let Some(c) = rsa_step(cfg, &self.transitions[ti], sym) {
                        next.insert(c);
                    }
                }
            }
        }
        self.epsilon_closure(&mut next);
        next
    }

    fn initial_configs(&self) -> BTreeSet<RsaConfig> {
        let mut cur: BTreeSet<RsaConfig> =
            self.initial.iter().map(|&q| RsaConfig::initial(q, self.num_registers())).collect();
        self.epsilon_closure(&mut cur);
        cur
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RsaConfig {
    pub state: StateId,
    pub regs: Vec<BTreeSet<Datum>>,
}

impl RsaConfig {
    pub fn initial(state: StateId, nregs: usize) -> Self {
        RsaConfig { state, regs: vec![BTreeSet::new(); nregs] }
    }

    /// Registers holding `d`.
    pub fn region_of(&self, d: Datum) -> RegSet {
        self.regs.iter().enumerate().filter(|(_, s)| s.contains(&d)).map(|(r, _)| r).collect()
    }
}

pub fn rsa_step(cfg: &RsaConfig, t: &RsaTransition, sym: Symbol) -> Option<RsaConfig> {
    let (letter, d) = sym;
    if cfg.state != t.src || letter != t.letter {
        return None;
    }
    if !t.in_guard.iter().all(|r| cfg.regs[r].contains(&d)) {
        return None;
    }
    if t.notin_guard.iter().any(|r| cfg.regs[r].contains(&d)) {
        return None;
    }
    let regs = t
        .update
        .iter()
        .map(|u| {
            let mut s: BTreeSet<Datum> = BTreeSet::new();
            for r in u.regs.iter() {
                s.extend(cfg.regs[r].iter().copied());
            }
            if u.input {
                s.insert(d);
            }
            s
        })
        .collect();
    Some(RsaConfig { state: t.dst, regs })
}

/// Existential acceptance by breadth-first exploration. Internal epsilon
/// edges, if present, are followed as identity moves.
pub fn rsa_membership(aut: &Rsa, w: &DataWord) -> bool {
    let idx = aut.index();
    let mut cur = aut.initial_configs();
    for &sym in w.iter() {
        cur = aut.successors(&idx, &cur, sym);
        if cur.is_empty() {
            return false;
        }
    }
    cur.iter().any(|c| aut.is_final(c.state))
}

/// Configuration sets after each prefix of `w`.
pub fn rsa_reachable_configs(aut: &Rsa, w: &DataWord) -> Vec<BTreeSet<RsaConfig>> {
    let idx = aut.index();
    let mut layers = Vec::with_capacity(w.len() + 1);
    let mut cur = aut.initial_configs();
    for &sym in w.iter() {
        let next = aut.successors(&idx, &cur, sym);
        layers.push(cur);
        cur = next;
    }
    layers.push(cur);
    layers
}
