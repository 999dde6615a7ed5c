use std::collections::BTreeSet;

use super::{index_transitions, DataWord, Datum, Letter, RegId, StateId, Symbol};
use crate::error::{Error, Result};
use crate::regset::RegSet;

/// Right-hand side of a single-register assignment.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NraUpdate {
    Reg(RegId),
    In,
    Bot,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NraTransition {
    pub src: StateId,
    pub letter: Letter,
    pub eq: RegSet,
    pub neq: RegSet,
    /// Total over the automaton's registers.
    pub update: Vec<NraUpdate>,
    pub dst: StateId,
}

impl NraTransition {
    /// Rejects overlapping equality/disequality guards.
    pub fn new(
        src: StateId,
        letter: Letter,
        eq: RegSet,
        neq: RegSet,
        update: Vec<NraUpdate>,
        dst: StateId,
    ) -> Result<Self> {
        if eq.intersects(neq) {
            return Err(Error::input(format!(
                "overlapping guards on transition {src} -{letter}-> {dst}"
            )));
        }
        Ok(NraTransition { src, letter, eq, neq, update, dst })
    }

    /// Unguarded transition keeping every register.
    pub fn plain(src: StateId, letter: Letter, nregs: usize, dst: StateId) -> Self {
        NraTransition {
            src,
            letter,
            eq: RegSet::EMPTY,
            neq: RegSet::EMPTY,
            update: identity_update(nregs),
            dst,
        }
    }
}

pub(crate) fn identity_update(nregs: usize) -> Vec<NraUpdate> {
    (0..nregs).map(NraUpdate::Reg).collect()
}

/// Nondeterministic register automaton. The same structure read with
/// universal acceptance is a URA (see [`ura_membership`]).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Nra {
    pub name: String,
    pub alphabet: Vec<String>,
    pub states: Vec<String>,
    pub registers: Vec<String>,
    pub transitions: Vec<NraTransition>,
    pub initial: BTreeSet<StateId>,
    pub finals: BTreeSet<StateId>,
}

impl Nra {
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

    pub fn add_state(&mut self, name: impl Into<String>) -> StateId {
        self.states.push(name.into());
        self.states.len() - 1
    }

    pub fn letter(&self, name: &str) -> Option<Letter> {
        self.alphabet.iter().position(|a| a == name)
    }

    pub fn state(&self, name: &str) -> Option<StateId> {
        self.states.iter().position(|s| s == name)
    }

    pub fn register(&self, name: &str) -> Option<RegId> {
        self.registers.iter().position(|s| s == name)
    }

    /// True iff no transition carries a disequality guard.
    pub fn is_equality_only(&self) -> bool {
        self.transitions.iter().all(|t| t.neq.is_empty())
    }

    pub(crate) fn index(&self) -> Vec<Vec<usize>> {
        index_transitions(
            self.states.len(),
            self.alphabet.len(),
            self.transitions.iter().map(|t| (t.src, t.letter)),
        )
    }

    /// Syntactic determinism: distinct same-source same-letter transitions
    /// must have a register that one tests for equality and the other for
    /// disequality.
    pub fn is_deterministic(&self) -> bool {
        let idx = self.index();
        idx.iter().all(|ts| {
            ts.iter().enumerate().all(|(i, &a)| {
                ts[i + 1..].iter().all(|&b| {
                    let (ta, tb) = (&self.transitions[a], &self.transitions[b]);
                    ta.eq.intersects(tb.neq) || tb.eq.intersects(ta.neq)
                })
            })
        })
    }

    /// Re-express the automaton over a (super-)alphabet via a letter map.
    pub fn relabel(&self, alphabet: Vec<String>, map: &[Letter]) -> Nra {
        let mut out = self.clone();
        out.alphabet = alphabet;
        for t in &mut out.transitions {
            t.letter = map[t.letter];
        }
        out
    }

    pub fn accepts(&self, w: &DataWord) -> bool {
        nra_membership(self, w)
    }

    /// Configurations reachable after each prefix of `w` (index i = after i symbols).
    pub fn reachable_configs(&self, w: &DataWord) -> Vec<BTreeSet<NraConfig>> {
        let idx = self.index();
        let mut layers = Vec::with_capacity(w.len() + 1);
        let mut cur: BTreeSet<NraConfig> =
            self.initial.iter().map(|&q| NraConfig::initial(q, self.num_registers())).collect();
        for &sym in w.iter() {
            let next = self.successors(&idx, &cur, sym);
            layers.push(cur);
            cur = next;
        }
        layers.push(cur);
        layers
    }

    fn successors(
        &self,
        idx: &[Vec<usize>],
        cur: &BTreeSet<NraConfig>,
        sym: Symbol,
    ) -> BTreeSet<NraConfig> {
        let mut next = BTreeSet::new();
        if sym.0 >= self.alphabet.len() {
            return next;
        }
        for cfg in cur {
            for &ti in &idx[cfg.state * self.alphabet.len() + sym.0] {
                if let Some(c) = nra_step(cfg, &self.transitions[ti], sym) {
                    next.insert(c);
                }
            }
        }
        next
    }
}

/// State plus register assignment; `None` is the undefined value.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NraConfig {
    pub state: StateId,
    pub regs: Vec<Option<Datum>>,
}

impl NraConfig {
    pub fn initial(state: StateId, nregs: usize) -> Self {
        NraConfig { state, regs: vec![None; nregs] }
    }
}

/// One step of an NRA. An undefined register fails every equality test and
/// passes every disequality test.
pub fn nra_step(cfg: &NraConfig, t: &NraTransition, sym: Symbol) -> Option<NraConfig> {
    let (letter, d) = sym;
    if cfg.state != t.src || letter != t.letter {
        return None;
    }
    if !t.eq.iter().all(|r| cfg.regs[r] == Some(d)) {
        return None;
    }
    if t.neq.iter().any(|r| cfg.regs[r] == Some(d)) {
        return None;
    }
    let regs = t
        .update
        .iter()
        .map(|u| match *u {
            NraUpdate::Reg(r) => cfg.regs[r],
            NraUpdate::In => Some(d),
            NraUpdate::Bot => None,
        })
        .collect();
    Some(NraConfig { state: t.dst, regs })
}

/// Existential acceptance, by breadth-first exploration of configuration sets.
pub fn nra_membership(aut: &Nra, w: &DataWord) -> bool {
    let idx = aut.index();
    let mut cur: BTreeSet<NraConfig> =
        aut.initial.iter().map(|&q| NraConfig::initial(q, aut.num_registers())).collect();
    for &sym in w.iter() {
        cur = aut.successors(&idx, &cur, sym);
        if cur.is_empty() {
            return false;
        }
    }
    cur.iter().any(|c| aut.is_final(c.state))
}

/// Universal acceptance: every run must read all of `w` and end in a final
/// state. A run that gets stuck is rejecting.
pub fn ura_membership(aut: &Nra, w: &DataWord) -> bool {
    let idx = aut.index();
    let mut cur: BTreeSet<NraConfig> =
        aut.initial.iter().map(|&q| NraConfig::initial(q, aut.num_registers())).collect();
    for &sym in w.iter() {
        let mut next = BTreeSet::new();
        for cfg in &cur {
            let mut moved = false;
            if sym.0 < aut.alphabet.len() {
                for &ti in &idx[cfg.state * aut.alphabet.len() + sym.0] {
                    if let Some(c) = nra_step(cfg, &aut.transitions[ti], sym) {
                        next.insert(c);
                        moved = true;
                    }
                }
            }
            if !moved {
                return false;
            }
        }
        cur = next;
    }
    cur.iter().all(|c| aut.is_final(c.state))
}

/// For every state, letter and guard set `g`, some transition has
/// `eq ⊆ g` and `neq ∩ g = ∅`.
pub fn is_complete(aut: &Nra) -> bool {
    let idx = aut.index();
    let all = aut.all_registers();
    (0..aut.num_states()).all(|q| {
        (0..aut.alphabet.len()).all(|a| {
            let ts = &idx[q * aut.alphabet.len() + a];
            all.subsets().all(|g| {
                ts.iter().any(|&ti| {
                    let t = &aut.transitions[ti];
                    t.eq.is_subset(g) && !g.intersects(t.neq)
                })
            })
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn w(v: &[u64]) -> DataWord {
        DataWord(v.iter().map(|&d| (0, d)).collect())
    }

    #[test]
    fn step_equality_guard() {
        let a = fixtures::exists_rep_nra();
        let s = a.state("s").unwrap();
        let t = a.transitions.iter().find(|t| t.src == s && !t.eq.is_empty()).unwrap();
        let cfg = NraConfig { state: s, regs: vec![Some(1)] };
        let next = nra_step(&cfg, t, (0, 1)).unwrap();
        assert_eq!(next.state, a.state("t").unwrap());
        assert_eq!(next.regs, vec![Some(1)]);
        assert!(nra_step(&cfg, t, (0, 2)).is_none());
    }

    #[test]
    fn step_stores_input() {
        let a = fixtures::exists_rep_nra();
        let q = a.state("q").unwrap();
        let store = a
            .transitions
            .iter()
            .find(|t| t.src == q && t.update[0] == NraUpdate::In)
            .unwrap();
        let next = nra_step(&NraConfig::initial(q, 1), store, (0, 7)).unwrap();
        assert_eq!(next.regs, vec![Some(7)]);
    }

    #[test]
    fn bot_register_semantics() {
        let t = NraTransition::new(0, 0, RegSet::singleton(0), RegSet::EMPTY, vec![NraUpdate::Reg(0)], 0)
            .unwrap();
        assert!(nra_step(&NraConfig::initial(0, 1), &t, (0, 3)).is_none());
        let t = NraTransition::new(0, 0, RegSet::EMPTY, RegSet::singleton(0), vec![NraUpdate::Reg(0)], 0)
            .unwrap();
        assert!(nra_step(&NraConfig::initial(0, 1), &t, (0, 3)).is_some());
    }

    #[test]
    fn overlapping_guards_rejected() {
        let r = RegSet::singleton(0);
        assert!(NraTransition::new(0, 0, r, r, vec![NraUpdate::Bot], 0).is_err());
    }

    #[test]
    fn exists_rep_membership() {
        let a = fixtures::exists_rep_nra();
        assert!(nra_membership(&a, &w(&[1, 2, 2, 1])));
        assert!(!nra_membership(&a, &w(&[])));
        assert!(!nra_membership(&a, &w(&[1, 2, 3])));
    }

    #[test]
    fn exists_rep_ura() {
        let u = fixtures::exists_rep_ura();
        assert!(ura_membership(&u, &w(&[1, 2, 3])));
        assert!(!ura_membership(&u, &w(&[1, 1])));
    }

    #[test]
    fn ura_without_transitions_accepts_empty_word() {
        let a = Nra {
            name: "n".into(),
            alphabet: vec!["a".into()],
            states: vec!["q".into()],
            registers: vec![],
            transitions: vec![],
            initial: [0].into(),
            finals: [0].into(),
        };
        assert!(ura_membership(&a, &w(&[])));
        assert!(!ura_membership(&a, &w(&[1])));
        assert!(!is_complete(&a));
    }

    #[test]
    fn determinism_and_completeness_of_exists_rep() {
        let a = fixtures::exists_rep_nra();
        assert!(!a.is_deterministic());
        // q: unguarded; s: eq r / neq r cover both guard sets; t: unguarded.
        assert!(is_complete(&a));
        let single = Nra { transitions: a.transitions[..1].to_vec(), ..a.clone() };
        assert!(single.is_deterministic());
    }
}
