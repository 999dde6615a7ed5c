//! Boolean expressions over NRA files for `include`.
//!
//! ```text
//! expr := term ('|' term)*
//! term := unary ('&' unary)*
//! unary := '!' unary | '(' expr ')' | PATH
//! ```

use rsakit::decide::IncExpr;
use rsakit::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Open,
    Close,
    Not,
    And,
    Or,
    Path(String),
}

fn lex(src: &str) -> Vec<(usize, Tok)> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let tok = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '(' => Tok::Open,
            ')' => Tok::Close,
            '!' => Tok::Not,
            '&' => Tok::And,
            '|' => Tok::Or,
            _ => {
                let start = i;
                while i < chars.len() && !chars[i].is_whitespace() && !"()!&|".contains(chars[i]) {
                    i += 1;
                }
                out.push((start + 1, Tok::Path(chars[start..i].iter().collect())));
                continue;
            }
        };
        out.push((i + 1, tok));
        i += 1;
    }
    out
}

struct P<'a, F> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    load: &'a mut F,
}

impl<F: FnMut(&str) -> Result<IncExpr>> P<'_, F> {
    fn err(&self, msg: &str) -> Error {
        let col = self.toks.get(self.pos).map_or(self.end, |t| t.0);
        Error::Syntax { line: 1, col, msg: msg.into() }
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    fn expr(&mut self) -> Result<IncExpr> {
        let mut e = self.term()?;
        while self.peek() == Some(&Tok::Or) {
            self.pos += 1;
            e = e.union(self.term()?);
        }
        Ok(e)
    }

    fn term(&mut self) -> Result<IncExpr> {
        let mut e = self.unary()?;
        while self.peek() == Some(&Tok::And) {
            self.pos += 1;
            e = e.intersect(self.unary()?);
        }
        Ok(e)
    }

    fn unary(&mut self) -> Result<IncExpr> {
        match self.peek().cloned() {
            Some(Tok::Not) => {
                self.pos += 1;
                Ok(self.unary()?.complement())
            }
            Some(Tok::Open) => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(&Tok::Close) {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(Tok::Path(p)) => {
                self.pos += 1;
                (self.load)(&p)
            }
            _ => Err(self.err("expected a file, `!` or `(`")),
        }
    }
}

/// Parse `src`, loading each leaf with `load`.
pub fn parse_expr(src: &str, mut load: impl FnMut(&str) -> Result<IncExpr>) -> Result<IncExpr> {
    let mut p = P { toks: lex(src), pos: 0, end: src.chars().count() + 1, load: &mut load };
    let e = p.expr()?;
    if p.pos < p.toks.len() {
        return Err(p.err("trailing input"));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rsakit::fixtures;

    fn shape(src: &str) -> Result<String> {
        parse_expr(src, |p| {
            let mut a = fixtures::exists_rep_nra_eq();
            a.name = p.to_string();
            Ok(IncExpr::leaf(a))
        })
        .map(|e| e.to_string())
    }

    #[test]
    fn precedence() {
        let a = shape("a.nra | !b.nra & c.nra").unwrap();
        let b = shape("a.nra | ((!b.nra) & c.nra)").unwrap();
        assert_eq!(a, b);
        assert_ne!(a, shape("(a.nra | !b.nra) & c.nra").unwrap());
    }

    #[test]
    fn errors_have_columns() {
        match shape("a.nra & (b.nra").unwrap_err() {
            Error::Syntax { col, .. } => assert_eq!(col, 15),
            e => panic!("{e}"),
        }
        match shape("a.nra )").unwrap_err() {
            Error::Syntax { col, .. } => assert_eq!(col, 7),
            e => panic!("{e}"),
        }
    }
}
