use std::collections::{BTreeSet, HashMap};

use crate::automata::{Nra, NraTransition, NraUpdate};
use crate::regset::RegSet;

/// Which registers hold the same value. `labels[r]` is the representative
/// (smallest register) of r's block, or `None` when r holds ⊥.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    pub labels: Vec<Option<usize>>,
}

impl Partition {
    pub fn bottom(n: usize) -> Self {
        Partition { labels: vec![None; n] }
    }

    pub fn rep(&self, r: usize) -> Option<usize> {
        self.labels[r]
    }

    pub fn blocks(&self) -> Vec<RegSet> {
        let mut by_rep: Vec<RegSet> = vec![RegSet::EMPTY; self.labels.len()];
        for (r, l) in self.labels.iter().enumerate() {
            if let Some(p) = l {
                by_rep[*p].insert(r);
            }
        }
        by_rep.into_iter().filter(|b| !b.is_empty()).collect()
    }

    fn describe(&self, names: &[String]) -> String {
        let blocks: Vec<String> = self
            .blocks()
            .iter()
            .map(|b| b.iter().map(|r| names[r].as_str()).collect::<Vec<_>>().join("="))
            .collect();
        format!("{{{}}}", blocks.join(" "))
    }
}

/// How much equality information the construction tracks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SingleValuedMode {
    /// Blocks are exactly the equality classes. Storing the input while
    /// other values survive splits on whether it equals one of them.
    Strict,
    /// Blocks only record copies and equalities established by guards, so no
    /// disequality guards are introduced.
    Aliasing,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum Src {
    Bot,
    Block(usize),
    In,
}

/// States become `(q, partition)` pairs; only block representatives carry
/// values. Built on the fly from the initial all-⊥ partition.
pub fn single_valued(a: &Nra) -> Nra {
    single_valued_with(a, SingleValuedMode::Strict)
}

pub fn single_valued_with(a: &Nra, mode: SingleValuedMode) -> Nra {
    let n = a.num_registers();
    let mut ids: HashMap<(usize, Partition), usize> = HashMap::new();
    let mut states: Vec<String> = Vec::new();
    let mut keys: Vec<(usize, Partition)> = Vec::new();
    let mut intern = |key: (usize, Partition), states: &mut Vec<String>, keys: &mut Vec<(usize, Partition)>| {
        if let Some(&i) = ids.get(&key) {
            return i;
        }
        let i = states.len();
        states.push(format!("{}{}", a.states[key.0], key.1.describe(&a.registers)));
        ids.insert(key.clone(), i);
        keys.push(key);
        i
    };
    let initial: BTreeSet<usize> =
        a.initial.iter().map(|&q| intern((q, Partition::bottom(n)), &mut states, &mut keys)).collect();
    let idx = a.index();
    let mut transitions = Vec::new();
    let mut seen_edges = BTreeSet::new();
    let mut i = 0;
    while i < keys.len() {
        let (q, part) = keys[i].clone();
        let id = i;
        i += 1;
        for l in 0..a.alphabet.len() {
            for &ti in &idx[q * a.alphabet.len() + l] {
                let t = &a.transitions[ti];
                for (eq, neq, p2, update) in successors(t, &part, mode) {
                    let dst = intern((t.dst, p2), &mut states, &mut keys);
                    let nt = NraTransition { src: id, letter: l, eq, neq, update, dst };
                    if seen_edges.insert(nt.clone()) {
                        transitions.push(nt);
                    }
                }
            }
        }
    }
    let finals = keys.iter().enumerate().filter(|(_, (q, _))| a.is_final(*q)).map(|(i, _)| i).collect();
    Nra {
        name: a.name.clone(),
        alphabet: a.alphabet.clone(),
        states,
        registers: a.registers.clone(),
        transitions,
        initial,
        finals,
    }
}

type Case = (RegSet, RegSet, Partition, Vec<NraUpdate>);

fn successors(t: &NraTransition, part: &Partition, mode: SingleValuedMode) -> Vec<Case> {
    let n = part.labels.len();
    let mut eq = RegSet::EMPTY;
    for r in t.eq.iter() {
        match part.rep(r) {
            Some(p) => eq.insert(p),
            None => return Vec::new(),
        }
    }
    let neq: RegSet = t.neq.iter().filter_map(|r| part.rep(r)).collect();
    if eq.intersects(neq) || (mode == SingleValuedMode::Strict && eq.len() > 1) {
        return Vec::new();
    }
    let src: Vec<Src> = t
        .update
        .iter()
        .map(|u| match *u {
            NraUpdate::Reg(x) => part.rep(x).map_or(Src::Bot, Src::Block),
            NraUpdate::In => Src::In,
            NraUpdate::Bot => Src::Bot,
        })
        .collect();
    let stores_input = src.contains(&Src::In);
    let surviving: RegSet = src
        .iter()
        .filter_map(|s| match s {
            Src::Block(b) => Some(*b),
            _ => None,
        })
        .collect();
    // each case: extra eq guard, extra neq guard, blocks identified with the input
    let mut cases: Vec<(RegSet, RegSet, RegSet)> = Vec::new();
    if !eq.is_empty() || !stores_input || mode == SingleValuedMode::Aliasing {
        cases.push((RegSet::EMPTY, RegSet::EMPTY, eq));
    } else {
        let candidates = surviving.difference(neq);
        for b in candidates.iter() {
            cases.push((RegSet::singleton(b), RegSet::EMPTY, RegSet::singleton(b)));
        }
        cases.push((RegSet::EMPTY, candidates, RegSet::EMPTY));
    }
    cases
        .into_iter()
        .map(|(extra_eq, extra_neq, same_as_input)| {
            // class key: None for ⊥, Some(usize::MAX) for the input's class
            let class = |s: Src| match s {
                Src::Bot => None,
                Src::In => Some(usize::MAX),
                Src::Block(b) if same_as_input.contains(b) => Some(usize::MAX),
                Src::Block(b) => Some(b),
            };
            let mut rep_of: HashMap<usize, usize> = HashMap::new();
            let mut labels = vec![None; n];
            let mut update = vec![NraUpdate::Bot; n];
            for r in 0..n {
                if let Some(k) = class(src[r]) {
                    let rep = *rep_of.entry(k).or_insert(r);
                    labels[r] = Some(rep);
                    if rep == r {
                        update[r] = if k == usize::MAX { NraUpdate::In } else { NraUpdate::Reg(k) };
                    }
                }
            }
            (eq.union(extra_eq), neq.union(extra_neq), Partition { labels }, update)
        })
        .collect()
}

/// Empirical single-valuedness: no reachable configuration over `w` holds the
/// same datum in two registers.
pub fn is_single_valued_on(a: &Nra, w: &crate::automata::DataWord) -> bool {
    a.reachable_configs(w).iter().flatten().all(|c| {
        let vals: Vec<_> = c.regs.iter().flatten().collect();
        let set: BTreeSet<_> = vals.iter().collect();
        set.len() == vals.len()
    })
}
