use std::collections::HashMap;

use super::automaton::RESERVED;
use super::lexer::{quote, quote_always, Parser, Tok};
use crate::automata::{DataWord, Datum};
use crate::error::Result;

const STRING_BASE: Datum = 1 << 63;

/// Per-invocation table mapping quoted data strings to naturals above
/// the numeric range.
#[derive(Clone, Debug, Default)]
pub struct DataTable {
    ids: HashMap<String, Datum>,
    names: Vec<String>,
}

impl DataTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn intern(&mut self, s: &str) -> Datum {
        if let Some(&d) = self.ids.get(s) {
            return d;
        }
        let d = STRING_BASE + self.names.len() as Datum;
        self.ids.insert(s.to_string(), d);
        self.names.push(s.to_string());
        d
    }

    pub fn display(&self, d: Datum) -> String {
        match d.checked_sub(STRING_BASE).and_then(|i| self.names.get(i as usize)) {
            Some(s) => quote_always(s),
            None => d.to_string(),
        }
    }
}

/// Parse `a:1 b:"x"` against an alphabet.
pub fn parse_word(alphabet: &[String], src: &str, table: &mut DataTable) -> Result<DataWord> {
    let mut p = Parser::new(src)?;
    let mut out = Vec::new();
    while !p.at_end() {
        if p.eat_punct(",") {
            continue;
        }
        let name = p.name()?;
        let letter = match alphabet.iter().position(|a| *a == name) {
            Some(l) => l,
            None => {
                p.pos_back();
                return p.error(format!("unknown letter `{name}`"));
            }
        };
        p.expect_punct(":")?;
        let d = match p.next() {
            Some(Tok::Num(n)) if n < STRING_BASE => n,
            Some(Tok::Str(s)) => table.intern(&s),
            _ => {
                p.pos_back();
                return p.error("expected a natural number or a quoted string");
            }
        };
        out.push((letter, d));
    }
    Ok(DataWord(out))
}

pub fn print_word(alphabet: &[String], w: &DataWord, table: &DataTable) -> String {
    w.iter()
        .map(|&(a, d)| format!("{}:{}", quote(&alphabet[a], RESERVED), table.display(d)))
        .collect::<Vec<_>>()
        .join(" ")
}
