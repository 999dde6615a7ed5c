use std::collections::{BTreeSet, VecDeque};

use super::ast::{CharClass, Node, RegexAst};
use crate::automata::{DataWord, Letter, Nra, NraTransition, NraUpdate};
use crate::regset::RegSet;

/// Maps characters to letters: every character the pattern mentions gets its
/// own letter, all others share a final catch-all letter. The datum is the
/// code point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Encoding {
    pub mentioned: Vec<char>,
}

pub const OTHER: &str = "other";

impl Encoding {
    pub fn for_ast(ast: &RegexAst) -> Self {
        Encoding { mentioned: ast.mentioned().into_iter().collect() }
    }

    pub fn other(&self) -> Letter {
        self.mentioned.len()
    }

    pub fn letter(&self, c: char) -> Letter {
        self.mentioned.binary_search(&c).unwrap_or(self.other())
    }

    pub fn alphabet(&self) -> Vec<String> {
        let mut out: Vec<String> = self.mentioned.iter().map(|c| c.to_string()).collect();
        out.push(OTHER.into());
        out
    }

    /// Letters whose characters all lie in `k`. Since `k` only names
    /// mentioned characters, each letter is either inside or outside.
    pub fn letters_of(&self, k: &CharClass) -> Vec<Letter> {
        let mut out: Vec<Letter> = (0..self.mentioned.len()).filter(|&l| k.matches(self.mentioned[l])).collect();
        if k.negated {
            out.push(self.other());
        }
        out
    }

    pub fn encode(&self, text: &str) -> DataWord {
        DataWord(text.chars().map(|c| (self.letter(c), c as u64)).collect())
    }

    pub fn decode(&self, w: &DataWord) -> Option<String> {
        w.0.iter()
            .map(|&(l, d)| {
                let c = char::from_u32(u32::try_from(d).ok()?)?;
                (self.letter(c) == l).then_some(c)
            })
            .collect()
    }
}

/// Anchored NRA for `ast` over the encoding's alphabet. Group `i` is
/// register `r{i}`; a back-reference is an equality guard.
pub fn compile_regex(ast: &RegexAst, enc: &Encoding) -> Nra {
    let k = ast.captures;
    let n = ast.nodes.len();
    let keep: Vec<NraUpdate> = (0..k).map(NraUpdate::Reg).collect();
    // Position i sits before node i; a star can be skipped.
    let skip = |i: usize| matches!(ast.nodes.get(i), Some(Node::Star(_)));
    let closure = |mut i: usize| {
        let mut out = vec![i];
        while skip(i) {
            i += 1;
            out.push(i);
        }
        out
    };
    let mut edges: Vec<(usize, Letter, RegSet, Vec<NraUpdate>, usize)> = Vec::new();
    for (i, node) in ast.nodes.iter().enumerate() {
        match node {
            Node::Literal(c) => edges.push((i, enc.letter(*c), RegSet::EMPTY, keep.clone(), i + 1)),
            Node::Class(cls) => {
                for l in enc.letters_of(cls) {
                    edges.push((i, l, RegSet::EMPTY, keep.clone(), i + 1));
                }
            }
            Node::Star(cls) => {
                for l in enc.letters_of(cls) {
                    edges.push((i, l, RegSet::EMPTY, keep.clone(), i));
                }
            }
            Node::Capture(g, cls) => {
                let mut up = keep.clone();
                up[g - 1] = NraUpdate::In;
                for l in enc.letters_of(cls) {
                    edges.push((i, l, RegSet::EMPTY, up.clone(), i + 1));
                }
            }
            Node::Backref(g) => {
                for l in 0..=enc.other() {
                    edges.push((i, l, RegSet::singleton(g - 1), keep.clone(), i + 1));
                }
            }
        }
    }
    // Fold the skips into the edges, keeping only positions reachable from 0.
    let mut index = vec![None; n + 1];
    let mut order = Vec::new();
    let mut queue = VecDeque::from([0]);
    index[0] = Some(0);
    let mut transitions = Vec::new();
    while let Some(p) = queue.pop_front() {
        order.push(p);
        for q in closure(p) {
            for (src, l, eq, up, dst) in &edges {
                if *src != q {
                    continue;
                }
                if index[*dst].is_none() {
                    index[*dst] = Some(order.len() + queue.len());
                    queue.push_back(*dst);
                }
                transitions.push((p, *l, *eq, up.clone(), *dst));
            }
        }
    }
    let finals: BTreeSet<usize> =
        order.iter().filter(|&&p| closure(p).contains(&n)).map(|&p| index[p].unwrap()).collect();
    let mut seen = BTreeSet::new();
    let transitions = transitions
        .into_iter()
        .map(|(p, letter, eq, update, d)| NraTransition {
            src: index[p].unwrap(),
            letter,
            eq,
            neq: RegSet::EMPTY,
            update,
            dst: index[d].unwrap(),
        })
        .filter(|t| seen.insert(t.clone()))
        .collect();
    Nra {
        name: "regex".into(),
        alphabet: enc.alphabet(),
        states: order.iter().map(|p| format!("n{p}")).collect(),
        registers: (1..=k).map(|i| format!("r{i}")).collect(),
        transitions,
        initial: BTreeSet::from([0]),
        finals,
    }
}
