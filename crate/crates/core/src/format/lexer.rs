use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Str(String),
    Num(u64),
    Punct(&'static str),
}

#[derive(Clone, Debug)]
pub struct Token {
    pub tok: Tok,
    pub line: usize,
    pub col: usize,
}

const PUNCTS: [&str; 14] = ["-->", "->", ":=", "{", "}", "[", "]", "|", ";", ",", "+", ":", "-", "="];

pub fn is_ident_char(c: char) -> bool {
    c.is_alphanumeric() || matches!(c, '_' | '\'' | '.' | '#' | '$' | '@')
}

pub fn tokenize(src: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let (mut i, mut line, mut col) = (0, 1, 1);
    let advance = |i: &mut usize, line: &mut usize, col: &mut usize, c: char| {
        *i += 1;
        if c == '\n' {
            *line += 1;
            *col = 1;
        } else {
            *col += 1;
        }
    };
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            advance(&mut i, &mut line, &mut col, c);
            continue;
        }
        if c == '/' && chars.get(i + 1) == Some(&'/') {
            while i < chars.len() && chars[i] != '\n' {
                let ch = chars[i];
                advance(&mut i, &mut line, &mut col, ch);
            }
            continue;
        }
        let (l0, c0) = (line, col);
        if c == '"' {
            advance(&mut i, &mut line, &mut col, c);
            let mut s = String::new();
            loop {
                match chars.get(i) {
                    None => return Err(Error::Syntax { line: l0, col: c0, msg: "unterminated string".into() }),
                    Some('"') => {
                        advance(&mut i, &mut line, &mut col, '"');
                        break;
                    }
                    Some('\\') => {
                        advance(&mut i, &mut line, &mut col, '\\');
                        let e = *chars.get(i).ok_or_else(|| Error::Syntax {
                            line: l0,
                            col: c0,
                            msg: "unterminated string".into(),
                        })?;
                        s.push(match e {
                            'n' => '\n',
                            't' => '\t',
                            other => other,
                        });
                        advance(&mut i, &mut line, &mut col, e);
                    }
                    Some(&ch) => {
                        s.push(ch);
                        advance(&mut i, &mut line, &mut col, ch);
                    }
                }
            }
            out.push(Token { tok: Tok::Str(s), line: l0, col: c0 });
            continue;
        }
        if is_ident_char(c) {
            let mut s = String::new();
            while i < chars.len() && is_ident_char(chars[i]) {
                s.push(chars[i]);
                let ch = chars[i];
                advance(&mut i, &mut line, &mut col, ch);
            }
            let tok = if s.bytes().all(|b| b.is_ascii_digit()) {
                match s.parse() {
                    Ok(n) => Tok::Num(n),
                    Err(_) => {
                        return Err(Error::Syntax { line: l0, col: c0, msg: format!("number out of range: {s}") })
                    }
                }
            } else {
                Tok::Ident(s)
            };
            out.push(Token { tok, line: l0, col: c0 });
            continue;
        }
        let rest: String = chars[i..chars.len().min(i + 3)].iter().collect();
        match PUNCTS.iter().find(|p| rest.starts_with(*p)) {
            Some(p) => {
                for _ in 0..p.len() {
                    advance(&mut i, &mut line, &mut col, ' ');
                }
                out.push(Token { tok: Tok::Punct(p), line: l0, col: c0 });
            }
            None => {
                return Err(Error::Syntax { line: l0, col: c0, msg: format!("unexpected character {c:?}") })
            }
        }
    }
    Ok(out)
}

/// Cursor over a token stream.
pub struct Parser {
    toks: Vec<Token>,
    pos: usize,
    eof: (usize, usize),
}

impl Parser {
    pub fn new(src: &str) -> Result<Self> {
        let toks = tokenize(src)?;
        let lines = src.split('\n').count();
        let last = src.rsplit('\n').next().map_or(0, |l| l.chars().count());
        Ok(Parser { toks, pos: 0, eof: (lines, last + 1) })
    }

    pub fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    pub fn peek_at(&self, k: usize) -> Option<&Tok> {
        self.toks.get(self.pos + k).map(|t| &t.tok)
    }

    pub fn position(&self) -> (usize, usize) {
        self.toks.get(self.pos).map_or(self.eof, |t| (t.line, t.col))
    }

    pub(crate) fn pos_back(&mut self) {
        self.pos = self.pos.saturating_sub(1);
    }

    pub fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    pub fn error<T>(&self, msg: impl Into<String>) -> Result<T> {
        let (line, col) = self.toks.get(self.pos).map_or(self.eof, |t| (t.line, t.col));
        Err(Error::Syntax { line, col, msg: msg.into() })
    }

    pub fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|t| t.tok.clone());
        self.pos += 1;
        t
    }

    pub fn is_punct(&self, p: &str) -> bool {
        matches!(self.peek(), Some(Tok::Punct(q)) if *q == p)
    }

    pub fn is_keyword(&self, k: &str) -> bool {
        matches!(self.peek(), Some(Tok::Ident(s)) if s == k)
    }

    pub fn eat_punct(&mut self, p: &str) -> bool {
        if self.is_punct(p) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub fn eat_keyword(&mut self, k: &str) -> bool {
        if self.is_keyword(k) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub fn expect_punct(&mut self, p: &str) -> Result<()> {
        if self.eat_punct(p) {
            Ok(())
        } else {
            self.error(format!("expected `{p}`"))
        }
    }

    /// Identifier, quoted string, or number, as a name.
    pub fn name(&mut self) -> Result<String> {
        match self.peek().cloned() {
            Some(Tok::Ident(s)) | Some(Tok::Str(s)) => {
                self.pos += 1;
                Ok(s)
            }
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(n.to_string())
            }
            _ => self.error("expected a name"),
        }
    }

    pub fn number(&mut self) -> Result<u64> {
        match self.peek() {
            Some(Tok::Num(n)) => {
                let n = *n;
                self.pos += 1;
                Ok(n)
            }
            _ => self.error("expected a number"),
        }
    }

    pub fn is_name(&self) -> bool {
        matches!(self.peek(), Some(Tok::Ident(_) | Tok::Str(_) | Tok::Num(_)))
    }

    /// Names up to the next `;`, optionally comma-separated.
    pub fn name_list(&mut self) -> Result<Vec<String>> {
        let mut out = Vec::new();
        while !self.is_punct(";") {
            if self.eat_punct(",") {
                continue;
            }
            out.push(self.name()?);
        }
        self.expect_punct(";")?;
        Ok(out)
    }
}

/// Quote a name unless it lexes back as a single identifier that is not a
/// reserved word.
pub fn quote(name: &str, reserved: &[&str]) -> String {
    let plain = !name.is_empty()
        && name.chars().all(is_ident_char)
        && !name.bytes().all(|b| b.is_ascii_digit())
        && !reserved.contains(&name);
    if plain {
        name.to_string()
    } else {
        quote_always(name)
    }
}

pub fn quote_always(name: &str) -> String {
    {
        let mut s = String::from("\"");
        for c in name.chars() {
            match c {
                '"' => s.push_str("\\\""),
                '\\' => s.push_str("\\\\"),
                '\n' => s.push_str("\\n"),
                '\t' => s.push_str("\\t"),
                c => s.push(c),
            }
        }
        s.push('"');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arrows() {
        let t: Vec<Tok> = tokenize("q -a-> s --> t").unwrap().into_iter().map(|t| t.tok).collect();
        assert_eq!(
            t,
            vec![
                Tok::Ident("q".into()),
                Tok::Punct("-"),
                Tok::Ident("a".into()),
                Tok::Punct("->"),
                Tok::Ident("s".into()),
                Tok::Punct("-->"),
                Tok::Ident("t".into()),
            ]
        );
    }

    #[test]
    fn positions() {
        match tokenize("a\n  ?") {
            Err(Error::Syntax { line: 2, col: 3, .. }) => {}
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn quoting_round_trips() {
        for n in ["a", ";", "in", "x y", "12", "q\""] {
            let q = quote(n, &["in"]);
            let toks = tokenize(&q).unwrap();
            assert_eq!(toks.len(), 1);
            match &toks[0].tok {
                Tok::Ident(s) | Tok::Str(s) => assert_eq!(s, n),
                t => panic!("{t:?}"),
            }
        }
    }
}
