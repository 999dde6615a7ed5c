//! Normal forms and closure constructions.

mod complete;
mod embed;
mod emptiness;
mod epsilon;
mod local;
mod product;
mod single;

pub use complete::{complement_drsa, complement_swap, complete, complete_rsa};
pub use embed::embed_nra_to_rsa;
pub use emptiness::{eliminate_emptiness_guards, RsaWithEmptyTest};
pub use epsilon::{eliminate_epsilon, trim};
pub use local::{clear_dead_registers, is_register_local, live_registers, register_local, rgs};
pub use product::{intersect_rsa, product, union_drsa, union_rsa};
pub use single::{is_single_valued_on, single_valued, single_valued_with, Partition, SingleValuedMode};
