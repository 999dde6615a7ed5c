use std::collections::BTreeSet;

use crate::algebra::{eliminate_epsilon, trim};
use crate::automata::{Rsa, RsaTransition, RsaUpdate, StateId};
use crate::regset::RegSet;
use crate::tpn::{Marking, Tpn, TpnTransition};

const R_IN: usize = 0;
const R_TMP: usize = 1;

fn reg(p: usize) -> usize {
    2 + 2 * p
}

fn primed(p: usize) -> usize {
    3 + 2 * p
}

/// Put the net in the form whose initial marking is one token on place 0,
/// adding a start place and a producer transition when needed.
pub fn normalise_initial(net: &Tpn, target: &Marking) -> (Tpn, Marking) {
    if net.initial == Marking::unit(net.num_places(), 0) {
        return (net.clone(), target.clone());
    }
    let n = net.num_places() + 1;
    let shift = |m: &Marking| Marking(std::iter::once(0).chain(m.0.iter().copied()).collect());
    let mut transitions = vec![TpnTransition::simple("start", Marking::unit(n, 0), shift(&net.initial))];
    transitions.extend(net.transitions.iter().map(|t| TpnTransition {
        name: t.name.clone(),
        input: shift(&t.input),
        output: shift(&t.output),
        transfer: std::iter::once(0).chain(t.transfer.iter().map(|p| p + 1)).collect(),
    }));
    let mut places = vec!["start".to_string()];
    while net.places.contains(&places[0]) {
        places[0].push('_');
    }
    places.extend(net.places.iter().cloned());
    (Tpn { name: net.name.clone(), places, transitions, initial: Marking::unit(n, 0) }, shift(target))
}

struct Builder {
    a: Rsa,
    k: usize,
}

impl Builder {
    fn state(&mut self, hint: &str) -> StateId {
        let id = self.a.num_states();
        self.a.add_state(format!("{hint}{id}"))
    }

    fn update(&self, changes: &[(usize, RsaUpdate)]) -> Vec<RsaUpdate> {
        let mut up: Vec<RsaUpdate> = (0..self.k).map(RsaUpdate::keep).collect();
        for &(r, u) in changes {
            up[r] = u;
        }
        up
    }

    fn edge(&mut self, src: StateId, pos: RegSet, neg: RegSet, changes: &[(usize, RsaUpdate)], dst: StateId) {
        let update = self.update(changes);
        self.a.transitions.push(RsaTransition { src, letter: 0, in_guard: pos, notin_guard: neg, update, dst });
    }

    /// Remove at least one token from `p`.
    fn lossy_remove(&mut self, p: usize) -> (StateId, StateId) {
        let (q1, q2, q3) = (self.state("lr"), self.state("lr"), self.state("lr"));
        let rp = RegSet::singleton(reg(p));
        self.edge(q1, rp, RegSet::EMPTY, &[(R_IN, RsaUpdate::input()), (R_TMP, RsaUpdate::CLEAR)], q2);
        let keep_tmp = RsaUpdate { regs: RegSet::singleton(R_TMP), input: true };
        self.edge(q2, rp, RegSet::singleton(R_IN), &[(R_TMP, keep_tmp)], q2);
        self.edge(q2, RegSet::EMPTY, RegSet::EMPTY, &[(reg(p), RsaUpdate::keep(R_TMP))], q3);
        (q1, q3)
    }

    /// Move every token of register `from` into register `to`.
    fn move_all(&mut self, from: usize, to: usize) -> (StateId, StateId) {
        let (q1, q2) = (self.state("mv"), self.state("mv"));
        let both = RsaUpdate { regs: RegSet::singleton(from).union(RegSet::singleton(to)), input: false };
        self.edge(q1, RegSet::EMPTY, RegSet::EMPTY, &[(from, RsaUpdate::CLEAR), (to, both)], q2);
        (q1, q2)
    }

    fn new_token(&mut self, p: usize) -> (StateId, StateId) {
        let (q1, q2) = (self.state("nt"), self.state("nt"));
        let add = RsaUpdate { regs: RegSet::singleton(reg(p)), input: true };
        self.edge(q1, RegSet::EMPTY, RegSet::full(self.k), &[(reg(p), add)], q2);
        (q1, q2)
    }

    fn empty(&mut self) -> (StateId, StateId) {
        let q = self.state("e");
        (q, q)
    }

    fn concat(&mut self, parts: Vec<(StateId, StateId)>) -> (StateId, StateId) {
        let mut iter = parts.into_iter();
        let Some(first) = iter.next() else { return self.empty() };
        let mut end = first.1;
        for (s, e) in iter {
            self.a.epsilon.push((end, s));
            end = e;
        }
        (first.0, end)
    }

    fn removals(&mut self, m: &Marking) -> (StateId, StateId) {
        let mut parts = Vec::new();
        for p in 0..m.len() {
            for _ in 0..m[p] {
                parts.push(self.lossy_remove(p));
            }
        }
        self.concat(parts)
    }

    fn gadget(&mut self, t: &TpnTransition) -> (StateId, StateId) {
        let n = t.transfer.len();
        let mut parts = vec![self.removals(&t.input)];
        for p in 0..n {
            parts.push(self.move_all(reg(p), primed(t.transfer[p])));
        }
        for p in 0..n {
            parts.push(self.move_all(primed(p), reg(p)));
        }
        for p in 0..n {
            for _ in 0..t.output[p] {
                parts.push(self.new_token(p));
            }
        }
        self.concat(parts)
    }
}

/// An RsA over a unary alphabet that is nonempty iff `target` is
/// coverable in `net`. Each token is a distinct datum in its place's
/// register; removals are lossy.
pub fn tpn_to_rsa(net: &Tpn, target: &Marking) -> Rsa {
    let (net, target) = normalise_initial(net, target);
    let n = net.num_places();
    let k = 2 + 2 * n;
    let mut registers = vec!["r_in".to_string(), "r_tmp".to_string()];
    for p in &net.places {
        registers.push(format!("r_{p}"));
        registers.push(format!("r_{p}'"));
    }
    let a = Rsa {
        name: format!("{}_rsa", net.name),
        alphabet: vec!["a".into()],
        states: Vec::new(),
        registers,
        transitions: Vec::new(),
        epsilon: Vec::new(),
        initial: BTreeSet::new(),
        finals: BTreeSet::new(),
    };
    let mut b = Builder { a, k };
    let main = b.a.add_state("main");
    let (init, after_init) = b.new_token(0);
    b.a.states[init] = "init".into();
    b.a.epsilon.push((after_init, main));
    for t in &net.transitions {
        let (s, e) = b.gadget(t);
        b.a.epsilon.push((main, s));
        b.a.epsilon.push((e, main));
    }
    let (s, fin) = b.removals(&target);
    b.a.epsilon.push((main, s));
    if fin != main {
        b.a.states[fin] = "fin".into();
    }
    b.a.initial.insert(init);
    b.a.finals.insert(fin);
    trim(&eliminate_epsilon(&b.a))
}
