//! Determinisation of a single-valued, register-local NRA into a DRsA by a
//! subset construction over macrostates `(S, c)`.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::atomic::{AtomicBool, Ordering};

use crate::algebra::{clear_dead_registers, register_local, rgs, single_valued_with, SingleValuedMode};
use crate::automata::{Letter, Nra, NraUpdate, Rsa, RsaTransition, RsaUpdate, StateId};
use crate::error::{Error, Result};
use crate::regset::RegSet;

/// Register size abstraction: empty, a single value, or two and more.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Cardinality {
    Zero,
    One,
    Many,
}

impl Cardinality {
    pub fn add(self, o: Cardinality) -> Cardinality {
        use Cardinality::*;
        match (self, o) {
            (Zero, x) | (x, Zero) => x,
            _ => Many,
        }
    }

    pub fn of(n: usize) -> Cardinality {
        match n {
            0 => Cardinality::Zero,
            1 => Cardinality::One,
            _ => Cardinality::Many,
        }
    }
}

impl fmt::Display for Cardinality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Cardinality::Zero => "0",
            Cardinality::One => "1",
            Cardinality::Many => "ω",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Macrostate {
    pub states: BTreeSet<StateId>,
    /// Upper bounds on register sizes; 0 is exact, ω may stand for one datum held by several runs.
    pub counters: Vec<Cardinality>,
    /// `inclusions[a]` holds every `b` whose content contains that of `a`.
    /// Empty unless inclusion tracking is on.
    pub inclusions: Vec<RegSet>,
}

impl Macrostate {
    pub fn label(&self, a: &Nra) -> String {
        let states: Vec<&str> = self.states.iter().map(|&q| a.states[q].as_str()).collect();
        let counters: Vec<String> = self
            .counters
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != Cardinality::Zero)
            .map(|(r, c)| format!("{}:{c}", a.registers[r]))
            .collect();
        let subs: Vec<String> = self
            .inclusions
            .iter()
            .enumerate()
            .flat_map(|(x, bs)| bs.iter().map(move |y| (x, y)))
            .map(|(x, y)| format!("{}⊆{}", a.registers[x], a.registers[y]))
            .collect();
        if subs.is_empty() {
            format!("{{{}}}[{}]", states.join(","), counters.join(","))
        } else {
            format!("{{{}}}[{}]<{}>", states.join(","), counters.join(","), subs.join(","))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BotReason {
    /// A disequality is tested against a register that may hold several values.
    Cardinality,
    /// The aggregated update would combine values no single run combines.
    Cartesian,
}

impl fmt::Display for BotReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BotReason::Cardinality => "CARDINALITY",
            BotReason::Cartesian => "CARTESIAN",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bot {
    pub reason: BotReason,
    pub macrostate: Macrostate,
    pub letter: Letter,
    pub guard: RegSet,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Determinised {
    pub rsa: Rsa,
    /// Indexed like `rsa.states`.
    pub macrostates: Vec<Macrostate>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Drsa(Determinised),
    Bot(Bot),
}

impl Outcome {
    pub fn drsa(&self) -> Option<&Determinised> {
        match self {
            Outcome::Drsa(d) => Some(d),
            Outcome::Bot(_) => None,
        }
    }

    pub fn bot(&self) -> Option<&Bot> {
        match self {
            Outcome::Bot(b) => Some(b),
            Outcome::Drsa(_) => None,
        }
    }
}

/// Which guard sets `g` are enumerated per macrostate and letter.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Minterms {
    /// Every `g ⊆ rgs(S)` of nonempty registers, guard `(g, R \ g)`.
    Full,
    /// Only nonempty registers that some transition leaving `S` on the
    /// letter tests; guard `(g, U \ g)` over that set `U`.
    Tested,
}

#[derive(Clone, Debug)]
pub struct DeterminiseOptions<'a> {
    pub minterms: Minterms,
    pub macrostate_cap: usize,
    pub cancel: Option<&'a AtomicBool>,
    /// Track which registers are known to contain which, and accept an
    /// aggregated update when a single transition covers it up to those
    /// inclusions.
    pub inclusions: bool,
}

impl Default for DeterminiseOptions<'_> {
    fn default() -> Self {
        DeterminiseOptions { minterms: Minterms::Tested, macrostate_cap: 100_000, cancel: None, inclusions: false }
    }
}

/// One register's incoming value on one transition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Src {
    Reg(usize),
    In,
}

struct Ctx<'a> {
    a: &'a Nra,
    rgs: Vec<RegSet>,
    idx: Vec<Vec<usize>>,
    minterms: Minterms,
    inclusions: bool,
}

enum Step {
    Ok(RsaTransition, Macrostate),
    Bot(BotReason, String),
}

impl Ctx<'_> {
    fn contribution(&self, c: &[Cardinality], eq: RegSet, u: NraUpdate) -> Option<Src> {
        match u {
            NraUpdate::Bot => None,
            NraUpdate::In => Some(Src::In),
            NraUpdate::Reg(y) if eq.contains(y) => Some(Src::In),
            NraUpdate::Reg(y) if c[y] != Cardinality::Zero => Some(Src::Reg(y)),
            NraUpdate::Reg(_) => None,
        }
    }

    /// `x` is contained in `y` in every configuration of `m` under guard `g`.
    fn covered(&self, m: &Macrostate, g: RegSet, x: Src, y: Src) -> bool {
        match (x, y) {
            _ if x == y => true,
            (Src::Reg(p), Src::Reg(q)) => m.inclusions.get(p).is_some_and(|s| s.contains(q)),
            (Src::In, Src::Reg(q)) => g.contains(q),
            _ => false,
        }
    }

    fn guard_universe(&self, m: &Macrostate, letter: Letter) -> RegSet {
        let nonzero: RegSet =
            m.counters.iter().enumerate().filter(|(_, c)| **c != Cardinality::Zero).map(|(r, _)| r).collect();
        let active = m.states.iter().fold(RegSet::EMPTY, |acc, &q| acc.union(self.rgs[q]));
        match self.minterms {
            Minterms::Full => active.intersection(nonzero),
            Minterms::Tested => {
                let n = self.a.alphabet.len();
                let nregs = self.a.num_registers();
                let mut tested = RegSet::EMPTY;
                // registers joined with the input in some update; knowing
                // whether they already hold it keeps the counters as tight as with full minterms
                let mut joined = vec![RegSet::EMPTY; nregs];
                let mut with_input = RegSet::EMPTY;
                for &i in m.states.iter().flat_map(|&q| &self.idx[q * n + letter]) {
                    let t = &self.a.transitions[i];
                    tested = tested.union(t.eq).union(t.neq);
                    for (r, u) in t.update.iter().enumerate() {
                        match u {
                            NraUpdate::In => with_input.insert(r),
                            NraUpdate::Reg(y) if t.eq.contains(*y) => with_input.insert(r),
                            NraUpdate::Reg(y) => joined[r].insert(*y),
                            NraUpdate::Bot => {}
                        }
                    }
                }
                for r in with_input.iter() {
                    tested = tested.union(joined[r]);
                }
                tested.intersection(nonzero).intersection(active)
            }
        }
    }

    fn successor(&self, m: &Macrostate, letter: Letter, g: RegSet, universe: RegSet) -> Step {
        let a = self.a;
        let n = a.alphabet.len();
        let nregs = a.num_registers();
        let t_set: Vec<usize> = m
            .states
            .iter()
            .flat_map(|&q| self.idx[q * n + letter].iter().copied())
            .filter(|&i| {
                let t = &a.transitions[i];
                t.eq.is_subset(g) && !t.neq.intersects(g)
            })
            .collect();
        let targets: BTreeSet<StateId> = t_set.iter().map(|&i| a.transitions[i].dst).collect();
        for &i in &t_set {
            let t = &a.transitions[i];
            if let Some(r) = t.neq.iter().find(|&r| m.counters[r] == Cardinality::Many) {
                return Step::Bot(
                    BotReason::Cardinality,
                    format!("transition #{i} tests `neq {}` while it may hold several values", a.registers[r]),
                );
            }
        }
        let contrib: Vec<Vec<Option<Src>>> = t_set
            .iter()
            .map(|&i| {
                let t = &a.transitions[i];
                t.update.iter().map(|&u| self.contribution(&m.counters, t.eq, u)).collect()
            })
            .collect();
        let mut ops: Vec<BTreeSet<Src>> = vec![BTreeSet::new(); nregs];
        for c in &contrib {
            for (r, x) in c.iter().enumerate() {
                if let Some(x) = x {
                    ops[r].insert(*x);
                }
            }
        }
        for op in ops.iter_mut() {
            if op.iter().any(|x| matches!(x, Src::Reg(y) if g.contains(*y))) {
                op.remove(&Src::In);
            }
        }
        for &q2 in &targets {
            let regs: Vec<usize> = self.rgs[q2].iter().collect();
            if regs.iter().any(|&r| ops[r].is_empty()) {
                continue;
            }
            let realised: HashSet<Vec<Option<Src>>> = t_set
                .iter()
                .zip(&contrib)
                .filter(|(&i, _)| a.transitions[i].dst == q2)
                .map(|(_, c)| regs.iter().map(|&r| c[r]).collect())
                .collect();
            let choices: Vec<Vec<Src>> = regs.iter().map(|&r| ops[r].iter().copied().collect()).collect();
            let mut pick = vec![0usize; regs.len()];
            'combos: loop {
                let combo: Vec<Option<Src>> = pick.iter().zip(&choices).map(|(&k, ch)| Some(ch[k])).collect();
                let ok = realised.contains(&combo)
                    || (self.inclusions
                        && realised.iter().any(|c| {
                            combo.iter().zip(c).all(|(x, y)| match (x, y) {
                                (Some(x), Some(y)) => self.covered(m, g, *x, *y),
                                _ => false,
                            })
                        }));
                if !ok {
                    let show = |x: &Option<Src>| match x {
                        Some(Src::Reg(y)) => a.registers[*y].clone(),
                        Some(Src::In) => "in".into(),
                        None => "∅".into(),
                    };
                    let desc: Vec<String> =
                        regs.iter().zip(&combo).map(|(&r, x)| format!("{} ← {}", a.registers[r], show(x))).collect();
                    return Step::Bot(
                        BotReason::Cartesian,
                        format!("no transition into {} performs {}", a.states[q2], desc.join(", ")),
                    );
                }
                for k in 0..pick.len() {
                    pick[k] += 1;
                    if pick[k] < choices[k].len() {
                        continue 'combos;
                    }
                    pick[k] = 0;
                }
                break;
            }
        }
        let update: Vec<RsaUpdate> = ops
            .iter()
            .map(|op| {
                let mut u = RsaUpdate::CLEAR;
                for x in op {
                    match x {
                        Src::Reg(y) => u.regs.insert(*y),
                        Src::In => u.input = true,
                    }
                }
                u
            })
            .collect();
        let counters = update
            .iter()
            .map(|u| {
                let base = u.regs.iter().fold(Cardinality::Zero, |acc, y| acc.add(m.counters[y]));
                if u.input {
                    base.add(Cardinality::One)
                } else {
                    base
                }
            })
            .collect();
        let inclusions = if self.inclusions {
            (0..nregs)
                .map(|x| {
                    if ops[x].is_empty() {
                        return RegSet::EMPTY;
                    }
                    (0..nregs)
                        .filter(|&y| {
                            y != x
                                && !ops[y].is_empty()
                                && ops[x].iter().all(|&p| ops[y].iter().any(|&q| self.covered(m, g, p, q)))
                        })
                        .collect()
                })
                .collect()
        } else {
            Vec::new()
        };
        let next = Macrostate { states: targets, counters, inclusions };
        let t = RsaTransition {
            src: 0,
            letter,
            in_guard: g,
            notin_guard: universe.difference(g),
            update,
            dst: 0,
        };
        Step::Ok(t, next)
    }
}

/// Determinise a single-valued, register-local NRA.
pub fn determinise(a: &Nra) -> Result<Outcome> {
    determinise_with(a, &DeterminiseOptions::default())
}

pub fn determinise_with(a: &Nra, opts: &DeterminiseOptions) -> Result<Outcome> {
    let nregs = a.num_registers();
    let ctx = Ctx { a, rgs: rgs(a), idx: a.index(), minterms: opts.minterms, inclusions: opts.inclusions };
    let start = Macrostate {
        states: a.initial.clone(),
        counters: vec![Cardinality::Zero; nregs],
        inclusions: if opts.inclusions { vec![RegSet::EMPTY; nregs] } else { Vec::new() },
    };
    let mut ids: HashMap<Macrostate, usize> = HashMap::from([(start.clone(), 0)]);
    let mut macrostates = vec![start];
    let mut queue = VecDeque::from([0usize]);
    let mut transitions = Vec::new();
    let full = RegSet::full(nregs);
    while let Some(id) = queue.pop_front() {
        if opts.cancel.is_some_and(|c| c.load(Ordering::Relaxed)) {
            return Err(Error::Cancelled);
        }
        let m = macrostates[id].clone();
        for letter in 0..a.alphabet.len() {
            let universe = ctx.guard_universe(&m, letter);
            for g in universe.subsets() {
                let emitted = match opts.minterms {
                    Minterms::Full => full,
                    Minterms::Tested => universe,
                };
                match ctx.successor(&m, letter, g, emitted) {
                    Step::Bot(reason, detail) => {
                        return Ok(Outcome::Bot(Bot { reason, macrostate: m, letter, guard: g, detail }))
                    }
                    Step::Ok(mut t, next) => {
                        let dst = match ids.get(&next) {
                            Some(&d) => d,
                            None => {
                                let d = macrostates.len();
                                if d >= opts.macrostate_cap {
                                    return Err(Error::Resource(format!(
                                        "determinisation exceeded {} macrostates",
                                        opts.macrostate_cap
                                    )));
                                }
                                ids.insert(next.clone(), d);
                                macrostates.push(next);
                                queue.push_back(d);
                                d
                            }
                        };
                        t.src = id;
                        t.dst = dst;
                        transitions.push(t);
                    }
                }
            }
        }
    }
    let finals = macrostates
        .iter()
        .enumerate()
        .filter(|(_, m)| m.states.iter().any(|q| a.is_final(*q)))
        .map(|(i, _)| i)
        .collect();
    let rsa = Rsa {
        name: format!("det_{}", a.name),
        alphabet: a.alphabet.clone(),
        states: macrostates.iter().map(|m| m.label(a)).collect(),
        registers: a.registers.clone(),
        transitions,
        epsilon: Vec::new(),
        initial: BTreeSet::from([0]),
        finals,
    };
    Ok(Outcome::Drsa(Determinised { rsa, macrostates }))
}

/// Register-local and single-valued preprocessing, then determinisation.
/// The exact single-valued form is tried first; if it fails, the form that
/// only tracks copies is tried. When both stop on a combination check, both
/// are retried with inclusion tracking.
pub fn determinise_pipeline(a: &Nra) -> Result<Outcome> {
    determinise_pipeline_with(a, &DeterminiseOptions::default())
}

pub fn determinise_pipeline_with(a: &Nra, opts: &DeterminiseOptions) -> Result<Outcome> {
    let local = register_local(&clear_dead_registers(a));
    let strict = register_local(&single_valued_with(&local, SingleValuedMode::Strict));
    let first = determinise_with(&strict, opts)?;
    if first.drsa().is_some() {
        return Ok(first);
    }
    let aliasing = register_local(&single_valued_with(&local, SingleValuedMode::Aliasing));
    let second = determinise_with(&aliasing, opts)?;
    if second.drsa().is_some() {
        return Ok(second);
    }
    let cartesian = |o: &Outcome| o.bot().is_some_and(|b| b.reason == BotReason::Cartesian);
    if !opts.inclusions && (cartesian(&first) || cartesian(&second)) {
        let tracked = DeterminiseOptions { inclusions: true, ..opts.clone() };
        for b in [&strict, &aliasing] {
            let o = determinise_with(b, &tracked)?;
            if o.drsa().is_some() {
                return Ok(o);
            }
        }
    }
    Ok(first)
}
