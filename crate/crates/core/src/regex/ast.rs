use std::collections::BTreeSet;
use std::fmt;

use crate::{Error, Result};

/// A set of characters, possibly complemented.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CharClass {
    pub negated: bool,
    pub chars: BTreeSet<char>,
}

impl CharClass {
    pub fn single(c: char) -> Self {
        CharClass { negated: false, chars: BTreeSet::from([c]) }
    }

    /// `.`: anything but the delimiter.
    pub fn dot() -> Self {
        CharClass { negated: true, chars: BTreeSet::from([';']) }
    }

    pub fn any() -> Self {
        CharClass { negated: true, chars: BTreeSet::new() }
    }

    pub fn matches(&self, c: char) -> bool {
        self.chars.contains(&c) != self.negated
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Node {
    Literal(char),
    Class(CharClass),
    Star(CharClass),
    /// Capture of a single character into group `index` (from 1).
    Capture(usize, CharClass),
    Backref(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RegexAst {
    pub nodes: Vec<Node>,
    pub captures: usize,
}

impl RegexAst {
    /// Unanchored form: any text may surround a match.
    pub fn search(&self) -> RegexAst {
        let mut nodes = vec![Node::Star(CharClass::any())];
        nodes.extend(self.nodes.iter().cloned());
        nodes.push(Node::Star(CharClass::any()));
        RegexAst { nodes, captures: self.captures }
    }

    /// Characters the pattern distinguishes.
    pub fn mentioned(&self) -> BTreeSet<char> {
        let mut out = BTreeSet::new();
        for n in &self.nodes {
            match n {
                Node::Literal(c) => {
                    out.insert(*c);
                }
                Node::Class(k) | Node::Star(k) | Node::Capture(_, k) => out.extend(k.chars.iter().copied()),
                Node::Backref(_) => {}
            }
        }
        out
    }
}

const SPECIAL: &[char] = &['.', '*', '(', ')', '[', ']', '\\', '|', '+', '?', '{', '}', '^', '$'];

fn write_char(f: &mut fmt::Formatter<'_>, c: char) -> fmt::Result {
    if SPECIAL.contains(&c) {
        write!(f, "\\{c}")
    } else {
        write!(f, "{c}")
    }
}

impl fmt::Display for CharClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if *self == CharClass::dot() {
            return f.write_str(".");
        }
        if !self.negated && self.chars.len() == 1 {
            return write_char(f, *self.chars.iter().next().unwrap());
        }
        f.write_str(if self.negated { "[^" } else { "[" })?;
        for &c in &self.chars {
            if matches!(c, ']' | '\\' | '^' | '-') {
                write!(f, "\\{c}")?;
            } else {
                write!(f, "{c}")?;
            }
        }
        f.write_str("]")
    }
}

impl fmt::Display for RegexAst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, n) in self.nodes.iter().enumerate() {
            match n {
                // a digit right after `\k` would extend the reference
                Node::Literal(c) if c.is_ascii_digit() && i > 0 && matches!(self.nodes[i - 1], Node::Backref(_)) => {
                    write!(f, "[{c}]")?
                }
                Node::Literal(c) => write_char(f, *c)?,
                Node::Class(k) => write!(f, "{k}")?,
                Node::Star(k) => write!(f, "{k}*")?,
                Node::Capture(_, k) => write!(f, "({k})")?,
                Node::Backref(i) => write!(f, "\\{i}")?,
            }
        }
        Ok(())
    }
}

struct P<'a> {
    chars: Vec<char>,
    pos: usize,
    src: &'a str,
}

impl P<'_> {
    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Syntax { line: 1, col: self.pos + 1, msg: msg.into() }
    }

    fn unsupported(&self, what: &str) -> Error {
        Error::Unsupported(format!("{what} at column {} of {:?}", self.pos + 1, self.src))
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        self.pos += 1;
        c
    }

    fn escaped(&mut self) -> Result<char> {
        self.bump().ok_or_else(|| self.err("dangling backslash"))
    }

    fn bracket(&mut self) -> Result<CharClass> {
        let negated = self.peek() == Some('^');
        if negated {
            self.pos += 1;
        }
        let mut chars = BTreeSet::new();
        loop {
            match self.bump() {
                None => return Err(self.err("unterminated character class")),
                Some(']') => break,
                Some('\\') => {
                    chars.insert(self.escaped()?);
                }
                Some(c) => {
                    if self.peek() == Some('-') && self.chars.get(self.pos + 1).is_some_and(|&e| e != ']') {
                        self.pos += 1;
                        let end = self.bump().unwrap();
                        if end < c {
                            return Err(self.err("reversed range"));
                        }
                        chars.extend(c..=end);
                    } else {
                        chars.insert(c);
                    }
                }
            }
        }
        Ok(CharClass { negated, chars })
    }

    /// One single-character atom, or `None` at a closing paren or the end.
    fn atom(&mut self) -> Result<Option<CharClass>> {
        let Some(c) = self.peek() else { return Ok(None) };
        self.pos += 1;
        Ok(Some(match c {
            '.' => CharClass::dot(),
            '[' => self.bracket()?,
            '\\' => {
                let e = self.escaped()?;
                if e.is_ascii_digit() {
                    self.pos -= 2;
                    return Ok(None);
                }
                CharClass::single(e)
            }
            '|' => {
                self.pos -= 1;
                return Err(self.unsupported("alternation"));
            }
            '+' | '?' | '{' => {
                self.pos -= 1;
                return Err(self.unsupported("repetition other than *"));
            }
            '^' | '$' => {
                self.pos -= 1;
                return Err(self.unsupported("anchors"));
            }
            '*' => {
                self.pos -= 1;
                return Err(self.err("nothing to repeat"));
            }
            '(' | ')' => {
                self.pos -= 1;
                return Ok(None);
            }
            c => CharClass::single(c),
        }))
    }
}

fn node_of(k: CharClass) -> Node {
    if !k.negated && k.chars.len() == 1 {
        Node::Literal(*k.chars.iter().next().unwrap())
    } else {
        Node::Class(k)
    }
}

/// Parse the supported fragment: literals, `.`, bracket classes, `*` on a
/// single class, one-character groups `( )` and back-references `\k`.
pub fn parse_regex(src: &str) -> Result<RegexAst> {
    let mut p = P { chars: src.chars().collect(), pos: 0, src };
    let mut nodes = Vec::new();
    let mut captures = 0;
    while let Some(c) = p.peek() {
        match c {
            '(' => {
                p.pos += 1;
                if p.peek() == Some('?') {
                    return Err(p.unsupported("group modifiers"));
                }
                let Some(k) = p.atom()? else {
                    return Err(if p.peek().is_none() || p.peek() == Some(')') {
                        p.err("empty group")
                    } else {
                        p.unsupported("nested group")
                    });
                };
                match p.peek() {
                    Some(')') => p.pos += 1,
                    None => return Err(p.err("unclosed group")),
                    Some('*') => return Err(p.unsupported("repetition inside a group")),
                    Some(_) => return Err(p.unsupported("multi-character capture")),
                }
                if p.peek() == Some('*') {
                    return Err(p.unsupported("repeated group"));
                }
                captures += 1;
                nodes.push(Node::Capture(captures, k));
            }
            ')' => return Err(p.err("unmatched closing parenthesis")),
            '\\' if p.chars.get(p.pos + 1).is_some_and(|d| d.is_ascii_digit()) => {
                p.pos += 1;
                let start = p.pos;
                while p.peek().is_some_and(|d| d.is_ascii_digit()) {
                    p.pos += 1;
                }
                let k: usize = p.chars[start..p.pos].iter().collect::<String>().parse().unwrap();
                if k == 0 || k > captures {
                    p.pos = start;
                    return Err(p.err(format!("back-reference \\{k} to an undefined group")));
                }
                if p.peek() == Some('*') {
                    return Err(p.unsupported("repeated back-reference"));
                }
                nodes.push(Node::Backref(k));
            }
            _ => {
                let k = p.atom()?.expect("atom at a plain character");
                if p.peek() == Some('*') {
                    p.pos += 1;
                    nodes.push(Node::Star(k));
                } else {
                    nodes.push(node_of(k));
                }
            }
        }
    }
    Ok(RegexAst { nodes, captures })
}
