use crate::algebra::complete_rsa;
use crate::automata::{rsa_step, DataWord, Rsa, RsaConfig, Symbol};
use crate::determinise::{determinise_pipeline_with, DeterminiseOptions, Outcome};
use crate::{Error, Result};

use super::ast::RegexAst;
use super::backtrack::backtrack_match;
use super::compile::{compile_regex, Encoding};
use super::parse_regex;

/// One configuration of a complete deterministic RsA, advanced one symbol
/// at a time.
#[derive(Clone, Debug)]
pub struct MatcherState<'a> {
    drsa: &'a Rsa,
    index: Vec<Vec<usize>>,
    pub config: RsaConfig,
    pub steps: usize,
}

impl<'a> MatcherState<'a> {
    pub fn new(drsa: &'a Rsa) -> Result<Self> {
        if !drsa.is_deterministic() || drsa.initial.len() != 1 {
            return Err(Error::NotDeterministic);
        }
        let q0 = *drsa.initial.iter().next().unwrap();
        Ok(MatcherState {
            drsa,
            index: drsa.index(),
            config: RsaConfig::initial(q0, drsa.num_registers()),
            steps: 0,
        })
    }

    /// Take the unique enabled transition. Returns `false` when none is
    /// enabled, which cannot happen on a complete automaton.
    pub fn step(&mut self, sym: Symbol) -> bool {
        let n = self.drsa.alphabet.len();
        for &i in &self.index[self.config.state * n + sym.0] {
            if let Some(next) = rsa_step(&self.config, &self.drsa.transitions[i], sym) {
                self.config = next;
                self.steps += 1;
                return true;
            }
        }
        false
    }

    pub fn is_accepting(&self) -> bool {
        self.drsa.is_final(self.config.state)
    }
}

/// Run a deterministic RsA over `w` in one pass. Returns the verdict and
/// the number of transitions taken.
pub fn match_stream(drsa: &Rsa, w: &DataWord) -> Result<(bool, usize)> {
    let mut m = MatcherState::new(drsa)?;
    for &sym in &w.0 {
        if !m.step(sym) {
            return Ok((false, m.steps));
        }
    }
    Ok((m.is_accepting(), m.steps))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MatchPath {
    Deterministic,
    /// Determinisation gave up; the reason is carried for diagnostics.
    Backtracking(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrepOutcome {
    pub matched: bool,
    pub steps: u64,
    pub path: MatchPath,
}

/// A compiled search pattern: a complete DRsA when determinisation
/// succeeds, otherwise the backtracking matcher.
#[derive(Clone, Debug)]
pub struct Grep {
    pub ast: RegexAst,
    pub encoding: Encoding,
    pub drsa: Option<Rsa>,
    pub fallback: Option<String>,
}

impl Grep {
    pub fn new(pattern: &str) -> Result<Self> {
        Self::with_options(pattern, &DeterminiseOptions::default())
    }

    pub fn with_options(pattern: &str, opts: &DeterminiseOptions) -> Result<Self> {
        let ast = parse_regex(pattern)?;
        let search = ast.search();
        let encoding = Encoding::for_ast(&search);
        let nra = compile_regex(&search, &encoding);
        let (drsa, fallback) = match determinise_pipeline_with(&nra, opts) {
            Ok(Outcome::Drsa(d)) => (Some(complete_rsa(&d.rsa)), None),
            Ok(Outcome::Bot(b)) => (None, Some(format!("BOT {} {}", b.reason, b.detail))),
            Err(Error::Resource(msg)) => (None, Some(format!("resource cap: {msg}"))),
            Err(e) => return Err(e),
        };
        Ok(Grep { ast, encoding, drsa, fallback })
    }

    pub fn is_match(&self, text: &str) -> GrepOutcome {
        match &self.drsa {
            Some(d) => {
                let (matched, steps) = match_stream(d, &self.encoding.encode(text)).expect("compiled automaton is deterministic");
                GrepOutcome { matched, steps: steps as u64, path: MatchPath::Deterministic }
            }
            None => {
                let (matched, steps) = backtrack_match(&self.ast.search(), text);
                GrepOutcome { matched, steps, path: MatchPath::Backtracking(self.fallback.clone().unwrap_or_default()) }
            }
        }
    }
}

/// Whether `pattern` occurs in `text`, through the deterministic matcher
/// when possible.
pub fn grep_pipeline(pattern: &str, text: &str) -> Result<GrepOutcome> {
    Ok(Grep::new(pattern)?.is_match(text))
}
