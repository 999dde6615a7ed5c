use std::fmt;

use super::{Nra, NraUpdate, Rsa};
use crate::regset::RegSet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    OverlappingGuards { transition: usize },
    UnknownState { transition: Option<usize>, state: usize },
    UnknownLetter { transition: usize, letter: usize },
    UnknownRegister { transition: usize, register: usize },
    UpdateArity { transition: usize, expected: usize, found: usize },
    TooManyRegisters(usize),
    GuardedEpsilon { edge: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::OverlappingGuards { transition } => {
                write!(f, "transition #{transition}: overlapping guards")
            }
            Violation::UnknownState { transition: Some(t), state } => {
                write!(f, "transition #{t}: unknown state {state}")
            }
            Violation::UnknownState { transition: None, state } => write!(f, "unknown state {state}"),
            Violation::UnknownLetter { transition, letter } => {
                write!(f, "transition #{transition}: unknown letter {letter}")
            }
            Violation::UnknownRegister { transition, register } => {
                write!(f, "transition #{transition}: unknown register {register}")
            }
            Violation::UpdateArity { transition, expected, found } => {
                write!(f, "transition #{transition}: update has {found} entries, expected {expected}")
            }
            Violation::TooManyRegisters(n) => write!(f, "{n} registers exceeds the supported maximum"),
            Violation::GuardedEpsilon { edge } => write!(f, "epsilon edge #{edge}: unknown state"),
        }
    }
}

pub trait Validate {
    fn validate(&self) -> Vec<Violation>;

    fn check(&self) -> crate::Result<()> {
        let v = self.validate();
        if v.is_empty() {
            Ok(())
        } else {
            Err(crate::Error::Invalid(v))
        }
    }
}

struct Shape {
    nstates: usize,
    nletters: usize,
    nregs: usize,
    out: Vec<Violation>,
}

impl Shape {
    fn new(nstates: usize, nletters: usize, nregs: usize) -> Self {
        let mut out = Vec::new();
        if nregs > crate::regset::MAX_REGISTERS {
            out.push(Violation::TooManyRegisters(nregs));
        }
        Shape { nstates, nletters, nregs, out }
    }

    fn state(&mut self, transition: Option<usize>, state: usize) {
        if state >= self.nstates {
            self.out.push(Violation::UnknownState { transition, state });
        }
    }

    fn regs(&mut self, transition: usize, set: RegSet) {
        if let Some(m) = set.max_reg() {
            if m >= self.nregs {
                self.out.push(Violation::UnknownRegister { transition, register: m });
            }
        }
    }

    fn edge(&mut self, i: usize, src: usize, letter: usize, dst: usize, arity: usize) {
        self.state(Some(i), src);
        self.state(Some(i), dst);
        if letter >= self.nletters {
            self.out.push(Violation::UnknownLetter { transition: i, letter });
        }
        if arity != self.nregs {
            self.out.push(Violation::UpdateArity { transition: i, expected: self.nregs, found: arity });
        }
    }

    fn ends(&mut self, initial: impl Iterator<Item = usize>, finals: impl Iterator<Item = usize>) {
        for q in initial.chain(finals) {
            self.state(None, q);
        }
    }
}

impl Validate for Nra {
    fn validate(&self) -> Vec<Violation> {
        let mut s = Shape::new(self.num_states(), self.alphabet.len(), self.num_registers());
        for (i, t) in self.transitions.iter().enumerate() {
            s.edge(i, t.src, t.letter, t.dst, t.update.len());
            if t.eq.intersects(t.neq) {
                s.out.push(Violation::OverlappingGuards { transition: i });
            }
            s.regs(i, t.eq.union(t.neq));
            for u in &t.update {
                if let NraUpdate::Reg(r) = u {
                    s.regs(i, RegSet::singleton(*r));
                }
            }
        }
        s.ends(self.initial.iter().copied(), self.finals.iter().copied());
        s.out
    }
}

impl Validate for Rsa {
    fn validate(&self) -> Vec<Violation> {
        let mut s = Shape::new(self.num_states(), self.alphabet.len(), self.num_registers());
        for (i, t) in self.transitions.iter().enumerate() {
            s.edge(i, t.src, t.letter, t.dst, t.update.len());
            if t.in_guard.intersects(t.notin_guard) {
                s.out.push(Violation::OverlappingGuards { transition: i });
            }
            s.regs(i, t.in_guard.union(t.notin_guard));
            for u in &t.update {
                s.regs(i, u.regs);
            }
        }
        for (i, &(a, b)) in self.epsilon.iter().enumerate() {
            if a >= self.num_states() || b >= self.num_states() {
                s.out.push(Violation::GuardedEpsilon { edge: i });
            }
        }
        s.ends(self.initial.iter().copied(), self.finals.iter().copied());
        s.out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn fixtures_are_valid() {
        assert!(fixtures::exists_rep_drsa().validate().is_empty());
        assert!(fixtures::not_all_rep_rsa().validate().is_empty());
        assert!(fixtures::exists_rep_nra().validate().is_empty());
    }

    #[test]
    fn overlapping_guards_reported() {
        let mut a = fixtures::exists_rep_nra();
        a.transitions[0].eq = RegSet::singleton(0);
        a.transitions[0].neq = RegSet::singleton(0);
        assert_eq!(a.validate(), vec![Violation::OverlappingGuards { transition: 0 }]);
    }

    #[test]
    fn unknown_state_reported() {
        let mut a = fixtures::exists_rep_drsa();
        a.transitions[1].dst = 9;
        assert_eq!(
            a.validate(),
            vec![Violation::UnknownState { transition: Some(1), state: 9 }]
        );
    }

    #[test]
    fn arity_reported() {
        let mut a = fixtures::exists_rep_drsa();
        a.transitions[0].update.clear();
        assert_eq!(a.validate().len(), 1);
    }
}
