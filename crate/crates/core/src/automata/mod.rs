//! Data words, register automata (NRA) and register set automata (RsA),
//! validation and configuration-level simulation.

mod nra;
mod rsa;
mod validate;
mod word;

pub use nra::{
    is_complete, nra_membership, nra_step, ura_membership, Nra, NraConfig, NraTransition, NraUpdate,
};
pub use rsa::{
    rsa_membership, rsa_reachable_configs, rsa_step, Rsa, RsaConfig, RsaTransition, RsaUpdate,
};
pub use validate::{Validate, Violation};
pub use word::{DataWord, Symbol};

pub type StateId = usize;
pub type RegId = usize;
pub type Letter = usize;
pub type Datum = u64;

/// Merge two alphabets by name, returning the merged alphabet and the
/// letter translation for each input.
pub fn merge_alphabets(a: &[String], b: &[String]) -> (Vec<String>, Vec<Letter>, Vec<Letter>) {
    let mut merged: Vec<String> = a.to_vec();
    let map_a = (0..a.len()).collect();
    let map_b = b
        .iter()
        .map(|name| match merged.iter().position(|m| m == name) {
            Some(i) => i,
            None => {
                merged.push(name.clone());
                merged.len() - 1
            }
        })
        .collect();
    (merged, map_a, map_b)
}

/// `(src, letter) -> transition indices`, flattened.
pub(crate) fn index_transitions<'a>(
    nstates: usize,
    nletters: usize,
    edges: impl Iterator<Item = (StateId, Letter)>,
) -> Vec<Vec<usize>> {
    let mut idx = vec![Vec::new(); nstates * nletters.max(1)];
    for (i, (src, letter)) in edges.enumerate() {
        idx[src * nletters + letter].push(i);
    }
    idx
}
