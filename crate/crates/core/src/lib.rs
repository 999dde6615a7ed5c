//! Register automata and register set automata over data words.
//!
//! Simulation of both models, normal forms and Boolean closures,
//! determinisation of register automata into deterministic register set
//! automata, emptiness through transfer Petri net coverability, inclusion
//! against Boolean combinations of one-register equality automata, and a
//! back-reference regex matcher built on top.

pub mod algebra;
pub mod automata;
pub mod decide;
pub mod determinise;
mod error;
pub mod fixtures;
pub mod format;
pub mod random;
pub mod reduction;
pub mod regex;
pub mod regset;
pub mod tpn;

pub use error::{Error, Result};
