//! Seeded generators of small automata, nets and words for differential
//! testing.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::RsaWithEmptyTest;
use crate::automata::{DataWord, Datum, Nra, NraTransition, NraUpdate, Rsa, RsaTransition, RsaUpdate};
use crate::regex::{CharClass, Node, RegexAst};
use crate::regset::RegSet;
use crate::tpn::{Marking, Tpn, TpnTransition};

#[derive(Clone, Copy, Debug)]
pub struct Shape {
    pub states: usize,
    pub registers: usize,
    pub letters: usize,
    pub transitions: usize,
}

impl Shape {
    pub const fn new(states: usize, registers: usize, letters: usize, transitions: usize) -> Self {
        Shape { states, registers, letters, transitions }
    }
}

pub struct Gen {
    rng: ChaCha8Rng,
}

fn names(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

impl Gen {
    pub fn new(seed: u64) -> Self {
        Gen { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn below(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }

    pub fn chance(&mut self, p: f64) -> bool {
        self.rng.gen_bool(p)
    }

    /// Draw sizes uniformly up to the given maxima (at least one state,
    /// letter and transition).
    pub fn shape(&mut self, max: Shape) -> Shape {
        Shape {
            states: self.rng.gen_range(1..=max.states),
            registers: self.rng.gen_range(0..=max.registers),
            letters: self.rng.gen_range(1..=max.letters),
            transitions: self.rng.gen_range(1..=max.transitions),
        }
    }

    fn ends(&mut self, n: usize) -> (BTreeSet<usize>, BTreeSet<usize>) {
        let initial = BTreeSet::from([0]);
        let finals = (0..n).filter(|_| self.chance(0.4)).collect();
        (initial, finals)
    }

    /// Random NRA. `neq` controls whether disequality guards may appear.
    pub fn nra(&mut self, s: Shape, neq: bool) -> Nra {
        let mut transitions = Vec::new();
        for _ in 0..s.transitions {
            let (mut eq, mut ne) = (RegSet::EMPTY, RegSet::EMPTY);
            for r in 0..s.registers {
                match self.below(if neq { 4 } else { 3 }) {
                    0 => eq.insert(r),
                    3 => ne.insert(r),
                    _ => {}
                }
            }
            let update = (0..s.registers)
                .map(|r| match self.below(5) {
                    0 | 1 => NraUpdate::Reg(r),
                    2 => NraUpdate::In,
                    3 => NraUpdate::Bot,
                    _ => NraUpdate::Reg(self.below(s.registers)),
                })
                .collect();
            transitions.push(NraTransition {
                src: self.below(s.states),
                letter: self.below(s.letters),
                eq,
                neq: ne,
                update,
                dst: self.below(s.states),
            });
        }
        let (initial, finals) = self.ends(s.states);
        Nra {
            name: "random".into(),
            alphabet: names("a", s.letters),
            states: names("q", s.states),
            registers: names("r", s.registers),
            transitions,
            initial,
            finals,
        }
    }

    /// Random NRA with one register and no disequality guards.
    pub fn nra_eq1(&mut self, max_states: usize, max_letters: usize) -> Nra {
        let s = Shape {
            states: self.rng.gen_range(1..=max_states),
            registers: 1,
            letters: self.rng.gen_range(1..=max_letters),
            transitions: self.rng.gen_range(1..=2 * max_states),
        };
        self.nra(s, false)
    }

    pub fn rsa(&mut self, s: Shape) -> Rsa {
        let mut transitions = Vec::new();
        for _ in 0..s.transitions {
            let (mut pos, mut neg) = (RegSet::EMPTY, RegSet::EMPTY);
            for r in 0..s.registers {
                match self.below(3) {
                    0 => pos.insert(r),
                    1 => neg.insert(r),
                    _ => {}
                }
            }
            let update = (0..s.registers)
                .map(|r| {
                    let mut u = RsaUpdate::CLEAR;
                    for x in 0..s.registers {
                        if (x == r && self.chance(0.6)) || (x != r && self.chance(0.2)) {
                            u.regs.insert(x);
                        }
                    }
                    u.input = self.chance(0.4);
                    u
                })
                .collect();
            transitions.push(RsaTransition {
                src: self.below(s.states),
                letter: self.below(s.letters),
                in_guard: pos,
                notin_guard: neg,
                update,
                dst: self.below(s.states),
            });
        }
        let (initial, finals) = self.ends(s.states);
        Rsa {
            name: "random".into(),
            alphabet: names("a", s.letters),
            states: names("q", s.states),
            registers: names("r", s.registers),
            transitions,
            epsilon: Vec::new(),
            initial,
            finals,
        }
    }

    /// Random deterministic RsA: every `(state, letter)` pair gets a minterm
    /// family over a random subset of registers, or nothing.
    pub fn drsa(&mut self, s: Shape) -> Rsa {
        let mut a = self.rsa(Shape { transitions: 0, ..s });
        for q in 0..s.states {
            for l in 0..s.letters {
                if self.chance(0.2) {
                    continue;
                }
                let universe: RegSet = (0..s.registers).filter(|_| self.chance(0.5)).collect();
                for g in universe.subsets() {
                    if self.chance(0.15) {
                        continue;
                    }
                    let update = (0..s.registers)
                        .map(|r| {
                            let mut u = RsaUpdate::CLEAR;
                            if self.chance(0.7) {
                                u.regs.insert(r);
                            }
                            if s.registers > 1 && self.chance(0.15) {
                                u.regs.insert(self.below(s.registers));
                            }
                            u.input = self.chance(0.4);
                            u
                        })
                        .collect();
                    a.transitions.push(RsaTransition {
                        src: q,
                        letter: l,
                        in_guard: g,
                        notin_guard: universe.difference(g),
                        update,
                        dst: self.below(s.states),
                    });
                }
            }
        }
        a
    }

    pub fn ersa(&mut self, s: Shape) -> RsaWithEmptyTest {
        let rsa = self.rsa(s);
        let empty_guards = rsa
            .transitions
            .iter()
            .map(|t| {
                (0..s.registers)
                    .filter(|&r| !t.in_guard.contains(r) && self.chance(0.3))
                    .collect()
            })
            .collect();
        RsaWithEmptyTest { rsa, empty_guards }
    }

    pub fn word(&mut self, letters: usize, data: &[Datum], max_len: usize) -> DataWord {
        let n = self.rng.gen_range(0..=max_len);
        DataWord((0..n).map(|_| (self.below(letters), *data.choose(&mut self.rng).unwrap())).collect())
    }

    pub fn marking(&mut self, places: usize, max_tokens: u32) -> Marking {
        Marking((0..places).map(|_| self.rng.gen_range(0..=max_tokens)).collect())
    }

    pub fn tpn_transition(&mut self, places: usize, max_tokens: u32, name: String) -> TpnTransition {
        let sparse = |g: &mut Gen| {
            Marking(
                (0..places)
                    .map(|_| if g.chance(0.35) { g.rng.gen_range(1..=max_tokens.max(1)) } else { 0 })
                    .collect(),
            )
        };
        let input = sparse(self);
        let output = sparse(self);
        let transfer = (0..places).map(|p| if self.chance(0.6) { p } else { self.below(places) }).collect();
        TpnTransition { name, input, output, transfer }
    }

    pub fn tpn(&mut self, max_places: usize, max_transitions: usize, max_tokens: u32) -> Tpn {
        let places = self.rng.gen_range(1..=max_places);
        let nt = self.rng.gen_range(1..=max_transitions);
        let transitions = (0..nt).map(|i| self.tpn_transition(places, max_tokens, format!("t{i}"))).collect();
        let initial = self.marking(places, max_tokens);
        Tpn { name: "random".into(), places: names("p", places), transitions, initial }
    }

    fn class(&mut self, chars: &[char]) -> CharClass {
        match self.below(4) {
            0 => CharClass::dot(),
            1 => CharClass::single(*chars.choose(&mut self.rng).unwrap()),
            n => CharClass {
                negated: n == 3,
                chars: (0..2).map(|_| *chars.choose(&mut self.rng).unwrap()).collect(),
            },
        }
    }

    /// Random pattern of the supported shape, at most `max_nodes` long.
    /// Every third pattern follows the delimited capture/back-reference
    /// layout `(.).*;.*(.)…` with back-references in some order.
    pub fn regex(&mut self, chars: &[char], max_nodes: usize) -> RegexAst {
        if self.below(3) == 0 {
            let k = self.rng.gen_range(1..=3);
            let mut nodes = Vec::new();
            for i in 1..=k {
                if i > 1 {
                    nodes.extend([Node::Literal(';'), Node::Star(CharClass::dot())]);
                }
                nodes.extend([Node::Capture(i, CharClass::dot()), Node::Star(CharClass::dot())]);
            }
            let mut refs: Vec<usize> = (1..=k).collect();
            refs.shuffle(&mut self.rng);
            nodes.extend(refs.into_iter().map(Node::Backref));
            return RegexAst { nodes, captures: k };
        }
        let n = self.rng.gen_range(1..=max_nodes);
        let mut nodes = Vec::new();
        let mut captures = 0;
        for _ in 0..n {
            let node = match self.below(5) {
                0 => Node::Literal(*chars.choose(&mut self.rng).unwrap()),
                1 => match self.class(chars) {
                    k if !k.negated && k.chars.len() == 1 => Node::Literal(*k.chars.first().unwrap()),
                    k => Node::Class(k),
                },
                2 => Node::Star(self.class(chars)),
                3 if captures < 3 => {
                    captures += 1;
                    Node::Capture(captures, self.class(chars))
                }
                _ if captures > 0 => Node::Backref(self.rng.gen_range(1..=captures)),
                _ => Node::Star(CharClass::dot()),
            };
            nodes.push(node);
        }
        RegexAst { nodes, captures }
    }

    pub fn text(&mut self, chars: &[char], max_len: usize) -> String {
        let n = self.rng.gen_range(0..=max_len);
        (0..n).map(|_| *chars.choose(&mut self.rng).unwrap()).collect()
    }
}
