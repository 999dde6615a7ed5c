//! Regexes with single-character captures and back-references, matched by a
//! deterministic register set automaton in one pass.

mod ast;
mod backtrack;
mod compile;
mod matcher;

pub use ast::{parse_regex, CharClass, Node, RegexAst};
pub use backtrack::{backtrack_match, backtrack_search};
pub use compile::{compile_regex, Encoding, OTHER};
pub use matcher::{grep_pipeline, match_stream, Grep, GrepOutcome, MatchPath, MatcherState};
