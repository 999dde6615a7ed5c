//! Emptiness of register set automata against coverability in transfer
//! Petri nets, in both directions.

mod from_tpn;
mod to_tpn;
pub mod transfer;

pub use from_tpn::{normalise_initial, tpn_to_rsa};
pub use to_tpn::{region_support, rsa_to_tpn, Origin, RsaTpnMap, DEFAULT_MAX_REGISTERS};
pub use transfer::compute_transfer;
