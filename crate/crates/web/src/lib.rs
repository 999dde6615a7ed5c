//! Browser bindings: regex search with step counts, data-word membership,
//! and determinisation.

use rsakit::automata::{nra_membership, rsa_membership};
use rsakit::determinise::{determinise_pipeline, Outcome};
use rsakit::format::{parse_automaton, parse_nra, parse_word, print_rsa, Automaton, DataTable};
use rsakit::regex::{backtrack_search, Grep, MatchPath};
use wasm_bindgen::prelude::*;

#[wasm_bindgen]
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchReport {
    matched: bool,
    steps: u64,
    backtrack_steps: u64,
    deterministic: bool,
    states: usize,
    note: String,
}

#[wasm_bindgen]
impl MatchReport {
    #[wasm_bindgen(getter)]
    pub fn matched(&self) -> bool {
        self.matched
    }

    /// Steps taken by the matcher that answered.
    #[wasm_bindgen(getter)]
    pub fn steps(&self) -> u64 {
        self.steps
    }

    #[wasm_bindgen(getter)]
    pub fn backtrack_steps(&self) -> u64 {
        self.backtrack_steps
    }

    #[wasm_bindgen(getter)]
    pub fn deterministic(&self) -> bool {
        self.deterministic
    }

    /// States of the compiled automaton, 0 on the fallback path.
    #[wasm_bindgen(getter)]
    pub fn states(&self) -> usize {
        self.states
    }

    #[wasm_bindgen(getter)]
    pub fn note(&self) -> String {
        self.note.clone()
    }
}

/// Search `text` for `pattern` with the deterministic matcher, and with the
/// backtracking matcher for comparison.
pub fn run_match(pattern: &str, text: &str) -> Result<MatchReport, String> {
    let g = Grep::new(pattern).map_err(|e| e.to_string())?;
    let out = g.is_match(text);
    let (_, backtrack_steps) = backtrack_search(&g.ast, text);
    let (deterministic, note) = match out.path {
        MatchPath::Deterministic => (true, String::new()),
        MatchPath::Backtracking(why) => (false, why),
    };
    Ok(MatchReport {
        matched: out.matched,
        steps: out.steps,
        backtrack_steps,
        deterministic,
        states: g.drsa.as_ref().map_or(0, |d| d.num_states()),
        note,
    })
}

/// `ACCEPT` or `REJECT`.
pub fn run_member(automaton: &str, word: &str) -> Result<String, String> {
    let a = parse_automaton(automaton).map_err(|e| e.to_string())?;
    let mut table = DataTable::new();
    let ok = match &a {
        Automaton::Nra(a) => nra_membership(a, &parse_word(&a.alphabet, word, &mut table).map_err(|e| e.to_string())?),
        Automaton::Rsa(a) => rsa_membership(a, &parse_word(&a.alphabet, word, &mut table).map_err(|e| e.to_string())?),
        Automaton::ERsa(a) => a.accepts(&parse_word(&a.rsa.alphabet, word, &mut table).map_err(|e| e.to_string())?),
    };
    Ok(if ok { "ACCEPT" } else { "REJECT" }.into())
}

/// The printed DRsA, or `BOT <reason>: <detail>`.
pub fn run_determinise(nra: &str) -> Result<String, String> {
    let a = parse_nra(nra).map_err(|e| e.to_string())?;
    match determinise_pipeline(&a).map_err(|e| e.to_string())? {
        Outcome::Drsa(d) => Ok(print_rsa(&d.rsa)),
        Outcome::Bot(b) => Ok(format!("BOT {}: {}", b.reason, b.detail)),
    }
}

#[wasm_bindgen(js_name = regexMatch)]
pub fn regex_match(pattern: &str, text: &str) -> Result<MatchReport, JsValue> {
    run_match(pattern, text).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn member(automaton: &str, word: &str) -> Result<String, JsValue> {
    run_member(automaton, word).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn determinise(nra: &str) -> Result<String, JsValue> {
    run_determinise(nra).map_err(|e| JsValue::from_str(&e))
}

/// Sample inputs for the page.
#[wasm_bindgen]
pub fn sample(name: &str) -> String {
    use rsakit::fixtures;
    match name {
        "regex" => fixtures::FLAGSHIP_REGEX.into(),
        "text" => fixtures::FLAGSHIP_TEXT.into(),
        "exists_rep" => fixtures::EXISTS_REP_DRSA.into(),
        "not_all_rep" => fixtures::NOT_ALL_REP_RSA.into(),
        "nra" => rsakit::format::print_nra(&fixtures::exists_rep_nra_eq()),
        _ => String::new(),
    }
}
