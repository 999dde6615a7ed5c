use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::automata::{DataWord, Rsa, RsaConfig, RsaTransition, Validate, Violation};
use crate::regset::RegSet;

/// An RsA whose transitions may additionally require registers to be empty.
/// `empty_guards` runs parallel to `rsa.transitions`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RsaWithEmptyTest {
    pub rsa: Rsa,
    pub empty_guards: Vec<RegSet>,
}

impl RsaWithEmptyTest {
    pub fn new(rsa: Rsa) -> Self {
        let n = rsa.transitions.len();
        RsaWithEmptyTest { rsa, empty_guards: vec![RegSet::EMPTY; n] }
    }

    fn enabled(&self, ti: usize, cfg: &RsaConfig) -> bool {
        self.empty_guards[ti].iter().all(|r| cfg.regs[r].is_empty())
    }

    /// Direct simulation.
    pub fn accepts(&self, w: &DataWord) -> bool {
        let a = &self.rsa;
        let mut cur: BTreeSet<RsaConfig> =
            a.initial.iter().map(|&q| RsaConfig::initial(q, a.num_registers())).collect();
        for &sym in w.iter() {
            let mut next = BTreeSet::new();
            for cfg in &cur {
                for (ti, t) in a.transitions.iter().enumerate() {
                    if t.src == cfg.state && self.enabled(ti, cfg) {
                        if let Some(c) = crate::automata::rsa_step(cfg, t, sym) {
                            next.insert(c);
                        }
                    }
                }
            }
            cur = next;
        }
        cur.iter().any(|c| a.is_final(c.state))
    }
}

impl Validate for RsaWithEmptyTest {
    fn validate(&self) -> Vec<Violation> {
        let mut v = self.rsa.validate();
        if self.empty_guards.len() != self.rsa.transitions.len() {
            v.push(Violation::UpdateArity {
                transition: self.empty_guards.len().min(self.rsa.transitions.len()),
                expected: self.rsa.transitions.len(),
                found: self.empty_guards.len(),
            });
        }
        for (i, g) in self.empty_guards.iter().enumerate() {
            if let Some(m) = g.max_reg() {
                if m >= self.rsa.num_registers() {
                    v.push(Violation::UnknownRegister { transition: i, register: m });
                }
            }
        }
        v
    }
}

/// Track which registers are nonempty in the control state. States of the
/// result are `(q, nonempty)` pairs, built from the initial all-empty copies.
pub fn eliminate_emptiness_guards(a: &RsaWithEmptyTest) -> Rsa {
    let src = &a.rsa;
    let mut ids: HashMap<(usize, RegSet), usize> = HashMap::new();
    let mut states = Vec::new();
    let mut queue = VecDeque::new();
    let mut intern = |key: (usize, RegSet), states: &mut Vec<String>, queue: &mut VecDeque<(usize, RegSet)>| {
        *ids.entry(key).or_insert_with(|| {
            let label = src.states[key.0].clone()
                + "|"
                + &(0..src.num_registers())
                    .map(|r| if key.1.contains(r) { '1' } else { '0' })
                    .collect::<String>();
            states.push(label);
            queue.push_back(key);
            states.len() - 1
        })
    };
    let mut initial = BTreeSet::new();
    for &q in &src.initial {
        initial.insert(intern((q, RegSet::EMPTY), &mut states, &mut queue));
    }
    let mut transitions = Vec::new();
    let mut finals = BTreeSet::new();
    while let Some((q, ne)) = queue.pop_front() {
        let id = intern((q, ne), &mut states, &mut queue);
        if src.is_final(q) {
            finals.insert(id);
        }
        for (ti, t) in src.transitions.iter().enumerate() {
            if t.src != q || a.empty_guards[ti].intersects(ne) {
                continue;
            }
            // an in-guard on a register known to be empty can never pass
            if t.in_guard.intersects(RegSet::full(src.num_registers()).difference(ne)) {
                continue;
            }
            let next: RegSet = t
                .update
                .iter()
                .enumerate()
                .filter(|(_, u)| u.input || u.regs.intersects(ne))
                .map(|(r, _)| r)
                .collect();
            let dst = intern((t.dst, next), &mut states, &mut queue);
            transitions.push(RsaTransition { src: id, dst, ..t.clone() });
        }
    }
    Rsa {
        name: src.name.clone(),
        alphabet: src.alphabet.clone(),
        states,
        registers: src.registers.clone(),
        transitions,
        epsilon: Vec::new(),
        initial,
        finals,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::{parse_automaton, Automaton};

    fn ersa(src: &str) -> RsaWithEmptyTest {
        match parse_automaton(src).unwrap() {
            Automaton::ERsa(a) => a,
            Automaton::Rsa(a) => RsaWithEmptyTest::new(a),
            _ => unreachable!(),
        }
    }

    const FIRST_IS_FRESH: &str = "rsa x { alphabet a; registers r; init q; final s;
        q -a-> s [empty r | r := in];
        s -a-> s [| r := r + in]; }";

    #[test]
    fn copies_per_state() {
        let e = ersa(FIRST_IS_FRESH);
        let out = eliminate_emptiness_guards(&e);
        assert_eq!(out.num_states(), 2);
        assert!(out.states.contains(&"q|0".to_string()));
        assert!(out.states.contains(&"s|1".to_string()));
    }

    #[test]
    fn clearing_update_marks_empty() {
        let e = ersa("rsa x { alphabet a; registers r; init q; final q;
            q -a-> s [| r := in]; s -a-> q [| r := {}]; q -a-> q [empty r]; }");
        let out = eliminate_emptiness_guards(&e);
        let s1 = out.state("s|1").unwrap();
        let back = out.transitions.iter().find(|t| t.src == s1).unwrap();
        assert_eq!(out.states[back.dst], "q|0");
        let w = |n: usize| DataWord((0..n).map(|i| (0, i as u64 + 1)).collect());
        for n in 0..5 {
            assert_eq!(out.accepts(&w(n)), e.accepts(&w(n)), "length {n}");
        }
    }

    #[test]
    fn without_empty_guards_language_is_kept() {
        let e = RsaWithEmptyTest::new(crate::fixtures::not_all_rep_rsa());
        let out = eliminate_emptiness_guards(&e);
        for w in DataWord::enumerate(1, &[1, 2, 3], 4) {
            assert_eq!(out.accepts(&w), e.rsa.accepts(&w));
        }
    }
}
