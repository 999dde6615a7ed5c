use std::collections::BTreeSet;

use super::lexer::{quote, Parser, Tok};
use crate::algebra::RsaWithEmptyTest;
use crate::automata::{Nra, NraTransition, NraUpdate, Rsa, RsaTransition, RsaUpdate, Validate};
use crate::error::{Error, Result};
use crate::regset::RegSet;

pub(crate) const RESERVED: &[&str] = &[
    "eq", "neq", "in", "notin", "empty", "bot", "alphabet", "registers", "states", "init", "final",
    "nra", "rsa", "tpn", "places", "out", "transfer",
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Automaton {
    Nra(Nra),
    Rsa(Rsa),
    ERsa(RsaWithEmptyTest),
}

impl Automaton {
    pub fn kind(&self) -> &'static str {
        match self {
            Automaton::Nra(_) => "nra",
            Automaton::Rsa(_) => "rsa",
            Automaton::ERsa(_) => "rsa with emptiness guards",
        }
    }
}

#[derive(Default)]
struct Guards {
    pos: RegSet,
    neg: RegSet,
    empty: RegSet,
}

enum Rhs {
    Nra(NraUpdate),
    Rsa(RsaUpdate),
}

struct Edge {
    src: usize,
    letter: Option<usize>,
    dst: usize,
    guards: Guards,
    updates: Vec<(usize, Rhs)>,
    at: (usize, usize),
}

struct Builder {
    rsa: bool,
    alphabet: Vec<String>,
    registers: Vec<String>,
    states: Vec<String>,
    initial: BTreeSet<usize>,
    finals: BTreeSet<usize>,
    edges: Vec<Edge>,
}

impl Builder {
    fn state(&mut self, name: String) -> usize {
        match self.states.iter().position(|s| *s == name) {
            Some(i) => i,
            None => {
                self.states.push(name);
                self.states.len() - 1
            }
        }
    }
}

fn register(p: &Parser, b: &Builder, name: &str) -> Result<usize> {
    match b.registers.iter().position(|r| r == name) {
        Some(i) => Ok(i),
        None => p.error(format!("unknown register `{name}`")),
    }
}

fn is_plain(p: &Parser, kw: &str) -> bool {
    p.is_keyword(kw)
}

fn parse_guards(p: &mut Parser, b: &Builder) -> Result<Guards> {
    let mut g = Guards::default();
    loop {
        if p.is_punct("|") || p.is_punct("]") {
            return Ok(g);
        }
        if p.eat_punct(",") {
            continue;
        }
        let kind = match p.next() {
            Some(Tok::Ident(k)) => k,
            _ => {
                p.pos_back();
                return p.error("expected a guard");
            }
        };
        let slot = match (kind.as_str(), b.rsa) {
            ("eq", false) | ("in", true) => 0,
            ("neq", false) | ("notin", true) => 1,
            ("empty", true) => 2,
            _ => {
                p.pos_back();
                return p.error(format!("guard `{kind}` not allowed here"));
            }
        };
        let mut any = false;
        while p.is_name() && !is_guard_keyword(p) {
            let name = p.name()?;
            let r = register(p, b, &name)?;
            let set = match slot {
                0 => &mut g.pos,
                1 => &mut g.neg,
                _ => &mut g.empty,
            };
            set.insert(r);
            any = true;
        }
        if !any {
            return p.error("expected a register");
        }
    }
}

fn is_guard_keyword(p: &Parser) -> bool {
    ["eq", "neq", "in", "notin", "empty"].iter().any(|k| is_plain(p, k))
}

fn parse_updates(p: &mut Parser, b: &Builder) -> Result<Vec<(usize, Rhs)>> {
    let mut out: Vec<(usize, Rhs)> = Vec::new();
    loop {
        if p.is_punct("]") {
            return Ok(out);
        }
        if p.eat_punct(",") {
            continue;
        }
        let name = p.name()?;
        let r = register(p, b, &name)?;
        if out.iter().any(|(x, _)| *x == r) {
            return p.error(format!("register `{name}` assigned twice"));
        }
        p.expect_punct(":=")?;
        let rhs = if b.rsa {
            let mut u = RsaUpdate::CLEAR;
            if p.eat_punct("{") {
                p.expect_punct("}")?;
            } else {
                loop {
                    if p.eat_keyword("in") {
                        u.input = true;
                    } else {
                        let n = p.name()?;
                        u.regs.insert(register(p, b, &n)?);
                    }
                    if !p.eat_punct("+") {
                        break;
                    }
                }
            }
            Rhs::Rsa(u)
        } else if p.eat_keyword("in") {
            Rhs::Nra(NraUpdate::In)
        } else if p.eat_keyword("bot") {
            Rhs::Nra(NraUpdate::Bot)
        } else {
            let n = p.name()?;
            Rhs::Nra(NraUpdate::Reg(register(p, b, &n)?))
        };
        out.push((r, rhs));
    }
}

/// Parse an automaton in the text format. Any `empty` guard makes the
/// result an [`Automaton::ERsa`].
pub fn parse_automaton(src: &str) -> Result<Automaton> {
    let mut p = Parser::new(src)?;
    let rsa = if p.eat_keyword("nra") {
        false
    } else if p.eat_keyword("rsa") {
        true
    } else {
        return p.error("expected `nra` or `rsa`");
    };
    let name = p.name()?;
    p.expect_punct("{")?;
    let mut b = Builder {
        rsa,
        alphabet: Vec::new(),
        registers: Vec::new(),
        states: Vec::new(),
        initial: BTreeSet::new(),
        finals: BTreeSet::new(),
        edges: Vec::new(),
    };
    let mut epsilon = Vec::new();
    while !p.eat_punct("}") {
        if p.at_end() {
            return p.error("expected `}`");
        }
        let clause = match p.peek() {
            Some(Tok::Ident(k)) if !matches!(p.peek_at(1), Some(Tok::Punct("-" | "-->"))) => {
                Some(k.clone())
            }
            _ => None,
        };
        match clause.as_deref() {
            Some("alphabet") => {
                p.next();
                b.alphabet = p.name_list()?;
            }
            Some("registers") => {
                p.next();
                b.registers = p.name_list()?;
            }
            Some("states") => {
                p.next();
                for s in p.name_list()? {
                    b.state(s);
                }
            }
            Some("init") | Some("final") => {
                let fin = clause.as_deref() == Some("final");
                p.next();
                for s in p.name_list()? {
                    let q = b.state(s);
                    if fin { b.finals.insert(q) } else { b.initial.insert(q) };
                }
            }
            _ => {
                let at = p.position();
                let src_name = p.name()?;
                let src = b.state(src_name);
                if p.eat_punct("-->") {
                    if !rsa {
                        return p.error("epsilon edges are only allowed in rsa");
                    }
                    let dst_name = p.name()?;
                    let dst = b.state(dst_name);
                    p.expect_punct(";")?;
                    epsilon.push((src, dst));
                    continue;
                }
                p.expect_punct("-")?;
                let lname = p.name()?;
                let letter = match b.alphabet.iter().position(|a| *a == lname) {
                    Some(l) => l,
                    None => return p.error(format!("unknown letter `{lname}`")),
                };
                p.expect_punct("->")?;
                let dst_name = p.name()?;
                let dst = b.state(dst_name);
                let (mut guards, mut updates) = (Guards::default(), Vec::new());
                if p.eat_punct("[") {
                    guards = parse_guards(&mut p, &b)?;
                    if p.eat_punct("|") {
                        updates = parse_updates(&mut p, &b)?;
                    }
                    p.expect_punct("]")?;
                }
                p.expect_punct(";")?;
                if guards.pos.intersects(guards.neg) {
                    return Err(Error::Syntax {
                        line: at.0,
                        col: at.1,
                        msg: format!(
                            "overlapping guards on transition {} -{}-> {}",
                            b.states[src], b.alphabet[letter], b.states[dst]
                        ),
                    });
                }
                b.edges.push(Edge { src, letter: Some(letter), dst, guards, updates, at });
            }
        }
    }
    if !p.at_end() {
        return p.error("trailing input");
    }
    let n = b.registers.len();
    if n > crate::regset::MAX_REGISTERS {
        return Err(Error::input(format!("at most {} registers are supported", crate::regset::MAX_REGISTERS)));
    }
    let out = if rsa {
        let mut empties = Vec::new();
        let transitions = b
            .edges
            .iter_mut()
            .map(|e| {
                let mut up: Vec<RsaUpdate> = (0..n).map(RsaUpdate::keep).collect();
                for (r, rhs) in e.updates.drain(..) {
                    if let Rhs::Rsa(u) = rhs {
                        up[r] = u;
                    }
                }
                empties.push(e.guards.empty);
                RsaTransition {
                    src: e.src,
                    letter: e.letter.unwrap_or(0),
                    in_guard: e.guards.pos,
                    notin_guard: e.guards.neg,
                    update: up,
                    dst: e.dst,
                }
            })
            .collect();
        let a = Rsa {
            name,
            alphabet: b.alphabet,
            states: b.states,
            registers: b.registers,
            transitions,
            epsilon,
            initial: b.initial,
            finals: b.finals,
        };
        if empties.iter().any(|g| !g.is_empty()) {
            Automaton::ERsa(RsaWithEmptyTest { rsa: a, empty_guards: empties })
        } else {
            Automaton::Rsa(a)
        }
    } else {
        let transitions = b
            .edges
            .iter_mut()
            .map(|e| {
                let mut up: Vec<NraUpdate> = (0..n).map(NraUpdate::Reg).collect();
                for (r, rhs) in e.updates.drain(..) {
                    if let Rhs::Nra(u) = rhs {
                        up[r] = u;
                    }
                }
                let _ = e.at;
                NraTransition {
                    src: e.src,
                    letter: e.letter.unwrap_or(0),
                    eq: e.guards.pos,
                    neq: e.guards.neg,
                    update: up,
                    dst: e.dst,
                }
            })
            .collect();
        Automaton::Nra(Nra {
            name,
            alphabet: b.alphabet,
            states: b.states,
            registers: b.registers,
            transitions,
            initial: b.initial,
            finals: b.finals,
        })
    };
    let violations = match &out {
        Automaton::Nra(a) => a.validate(),
        Automaton::Rsa(a) => a.validate(),
        Automaton::ERsa(a) => a.rsa.validate(),
    };
    if violations.is_empty() {
        Ok(out)
    } else {
        Err(Error::Invalid(violations))
    }
}

pub fn parse_nra(src: &str) -> Result<Nra> {
    match parse_automaton(src)? {
        Automaton::Nra(a) => Ok(a),
        other => Err(Error::input(format!("expected an nra, found {}", other.kind()))),
    }
}

pub fn parse_rsa(src: &str) -> Result<Rsa> {
    match parse_automaton(src)? {
        Automaton::Rsa(a) => Ok(a),
        other => Err(Error::input(format!("expected an rsa, found {}", other.kind()))),
    }
}

fn q(name: &str) -> String {
    quote(name, RESERVED)
}

fn list(names: impl IntoIterator<Item = String>) -> String {
    names.into_iter().map(|n| format!(" {n}")).collect()
}

fn header(kind: &str, name: &str, alphabet: &[String], registers: &[String], states: &[String]) -> String {
    let mut s = format!("{kind} {} {{\n", q(name));
    s += &format!("  alphabet{};\n", list(alphabet.iter().map(|a| q(a))));
    s += &format!("  registers{};\n", list(registers.iter().map(|a| q(a))));
    s += &format!("  states{};\n", list(states.iter().map(|a| q(a))));
    s
}

fn ends(s: &mut String, states: &[String], initial: &BTreeSet<usize>, finals: &BTreeSet<usize>) {
    *s += &format!("  init{};\n", list(initial.iter().map(|&i| q(&states[i]))));
    *s += &format!("  final{};\n", list(finals.iter().map(|&i| q(&states[i]))));
}

fn guard_list(out: &mut Vec<String>, kw: &str, set: RegSet, regs: &[String]) {
    if !set.is_empty() {
        out.push(format!("{kw}{}", list(set.iter().map(|r| q(&regs[r])))));
    }
}

fn bracket(guards: Vec<String>, updates: Vec<String>) -> String {
    match (guards.is_empty(), updates.is_empty()) {
        (true, true) => String::new(),
        (_, true) => format!(" [{}]", guards.join(", ")),
        _ => format!(" [{} | {}]", guards.join(", "), updates.join(", ")).replace("[ |", "[|"),
    }
}

pub fn print_nra(a: &Nra) -> String {
    let mut s = header("nra", &a.name, &a.alphabet, &a.registers, &a.states);
    ends(&mut s, &a.states, &a.initial, &a.finals);
    for t in &a.transitions {
        let mut g = Vec::new();
        guard_list(&mut g, "eq", t.eq, &a.registers);
        guard_list(&mut g, "neq", t.neq, &a.registers);
        let u = t
            .update
            .iter()
            .enumerate()
            .filter(|(r, u)| **u != NraUpdate::Reg(*r))
            .map(|(r, u)| {
                let rhs = match u {
                    NraUpdate::In => "in".to_string(),
                    NraUpdate::Bot => "bot".to_string(),
                    NraUpdate::Reg(x) => q(&a.registers[*x]),
                };
                format!("{} := {rhs}", q(&a.registers[r]))
            })
            .collect();
        s += &format!(
            "  {} -{}-> {}{};\n",
            q(&a.states[t.src]),
            q(&a.alphabet[t.letter]),
            q(&a.states[t.dst]),
            bracket(g, u)
        );
    }
    s += "}\n";
    s
}

fn print_rsa_inner(a: &Rsa, empties: Option<&[RegSet]>) -> String {
    let mut s = header("rsa", &a.name, &a.alphabet, &a.registers, &a.states);
    ends(&mut s, &a.states, &a.initial, &a.finals);
    for (i, t) in a.transitions.iter().enumerate() {
        let mut g = Vec::new();
        guard_list(&mut g, "in", t.in_guard, &a.registers);
        guard_list(&mut g, "notin", t.notin_guard, &a.registers);
        if let Some(e) = empties {
            guard_list(&mut g, "empty", e[i], &a.registers);
        }
        let u = t
            .update
            .iter()
            .enumerate()
            .filter(|(r, u)| **u != RsaUpdate::keep(*r))
            .map(|(r, u)| {
                let mut parts: Vec<String> = u.regs.iter().map(|x| q(&a.registers[x])).collect();
                if u.input {
                    parts.push("in".into());
                }
                let rhs = if parts.is_empty() { "{}".to_string() } else { parts.join(" + ") };
                format!("{} := {rhs}", q(&a.registers[r]))
            })
            .collect();
        s += &format!(
            "  {} -{}-> {}{};\n",
            q(&a.states[t.src]),
            q(&a.alphabet[t.letter]),
            q(&a.states[t.dst]),
            bracket(g, u)
        );
    }
    for &(x, y) in &a.epsilon {
        s += &format!("  {} --> {};\n", q(&a.states[x]), q(&a.states[y]));
    }
    s += "}\n";
    s
}

pub fn print_rsa(a: &Rsa) -> String {
    print_rsa_inner(a, None)
}

pub fn print_automaton(a: &Automaton) -> String {
    match a {
        Automaton::Nra(a) => print_nra(a),
        Automaton::Rsa(a) => print_rsa(a),
        Automaton::ERsa(a) => print_rsa_inner(&a.rsa, Some(&a.empty_guards)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "rsa exists_rep { alphabet a; registers r; init q; final s;
        q -a-> q [notin r | r := r + in];
        q -a-> s [in r];
        s -a-> s; }";

    #[test]
    fn parses_exists_rep() {
        let a = parse_rsa(SAMPLE).unwrap();
        assert_eq!(a.num_states(), 2);
        assert_eq!(a.num_registers(), 1);
        assert_eq!(a.transitions[0].update[0], RsaUpdate { regs: RegSet::singleton(0), input: true });
    }

    #[test]
    fn round_trip_is_stable() {
        let once = print_automaton(&parse_automaton(SAMPLE).unwrap());
        let twice = print_automaton(&parse_automaton(&once).unwrap());
        assert_eq!(once, twice);
    }

    #[test]
    fn overlapping_guards_name_the_transition() {
        let err = parse_automaton("nra x { alphabet a; registers r; init q; final q; q -a-> q [eq r, neq r]; }")
            .unwrap_err();
        assert!(err.to_string().contains("q -a-> q"), "{err}");
    }

    #[test]
    fn empty_guard_gives_ersa() {
        let a = parse_automaton("rsa x { alphabet a; registers r; init q; final q; q -a-> q [empty r | r := in]; }")
            .unwrap();
        assert!(matches!(a, Automaton::ERsa(_)));
    }

    #[test]
    fn quoted_letters() {
        let src = "nra x { alphabet \";\" a; registers \"in\"; init q; final q; q -\";\"-> q [eq \"in\" | \"in\" := in]; }";
        let a = parse_nra(src).unwrap();
        assert_eq!(a.alphabet[0], ";");
        assert_eq!(a.transitions[0].update[0], NraUpdate::In);
        let printed = print_nra(&a);
        assert_eq!(print_nra(&parse_nra(&printed).unwrap()), printed);
    }

    #[test]
    fn unknown_register_is_positioned() {
        match parse_automaton("nra x { alphabet a; registers r;\n q -a-> q [eq z]; }") {
            Err(Error::Syntax { line: 2, .. }) => {}
            other => panic!("{other:?}"),
        }
    }
}
