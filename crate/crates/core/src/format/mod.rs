//! Text formats for automata, nets and data words.

mod automaton;
mod lexer;
mod tpn;
mod word;

pub use automaton::{parse_automaton, parse_nra, parse_rsa, print_automaton, print_nra, print_rsa, Automaton};
pub use lexer::quote;
pub use tpn::{parse_marking, parse_tpn, print_marking, print_tpn};
pub use word::{parse_word, print_word, DataTable};
