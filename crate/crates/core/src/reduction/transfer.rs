//! How a register-set update moves the regions of the Venn diagram of the
//! registers. A region is named by the set of registers its values lie in;
//! the empty set is the all-complement region.

use std::collections::BTreeSet;

use crate::automata::RsaUpdate;
use crate::regset::RegSet;
use crate::{Error, Result};

fn check(up: &[RsaUpdate], nregs: usize) -> Result<()> {
    if up.len() != nregs {
        return Err(Error::input(format!("update has {} entries for {nregs} registers", up.len())));
    }
    let all = RegSet::full(nregs);
    if up.iter().any(|u| !u.regs.is_subset(all)) {
        return Err(Error::input("update mentions an unknown register"));
    }
    Ok(())
}

/// The register sets whose intersection of unions describes `rho` after the
/// update: one entry per register in `rho`.
pub fn posit_x(up: &[RsaUpdate], rho: RegSet) -> BTreeSet<RegSet> {
    rho.iter().map(|r| up[r].regs).collect()
}

/// Registers whose new content draws on some register outside `rho`.
pub fn negat(up: &[RsaUpdate], rho: RegSet) -> RegSet {
    (0..up.len()).filter(|&r| !rho.contains(r)).fold(RegSet::EMPTY, |acc, r| acc.union(up[r].regs))
}

/// Unordered Cartesian product of `posit_x`, i.e. the product of sums
/// rewritten as a sum of products.
pub fn posit_sop(up: &[RsaUpdate], rho: RegSet) -> BTreeSet<RegSet> {
    let mut acc = BTreeSet::from([RegSet::EMPTY]);
    for d in posit_x(up, rho) {
        acc = acc.iter().flat_map(|x| d.iter().map(move |r| x.union(RegSet::singleton(r)))).collect();
    }
    acc
}

pub fn posit_sop_prime(up: &[RsaUpdate], rho: RegSet) -> BTreeSet<RegSet> {
    let neg = negat(up, rho);
    posit_sop(up, rho).into_iter().filter(|x| !x.intersects(neg)).collect()
}

/// Region a value in `rho` lands in, ignoring the input symbol.
pub fn image(up: &[RsaUpdate], rho: RegSet) -> RegSet {
    (0..up.len()).filter(|&r| up[r].regs.intersects(rho)).collect()
}

/// The region map indexed by region bitmask. Every source region has exactly
/// one image; values that no register keeps land in the all-complement
/// region.
pub fn compute_transfer(up: &[RsaUpdate], nregs: usize) -> Result<Vec<RegSet>> {
    check(up, nregs)?;
    Ok(RegSet::full(nregs).subsets().map(|rho| image(up, rho)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(v: &[usize]) -> RegSet {
        v.iter().copied().collect()
    }

    fn example() -> Vec<RsaUpdate> {
        vec![RsaUpdate { regs: rs(&[0]), input: true }, RsaUpdate { regs: rs(&[0, 1]), input: false }]
    }

    #[test]
    fn appendix_example() {
        let up = example();
        let d = compute_transfer(&up, 2).unwrap();
        assert_eq!(d[0b11], rs(&[0, 1]));
        assert_eq!(d[0b01], rs(&[0, 1]));
        assert_eq!(d[0b10], rs(&[1]));
        assert_eq!(d[0b00], RegSet::EMPTY);

        assert_eq!(posit_x(&up, rs(&[0, 1])), BTreeSet::from([rs(&[0]), rs(&[0, 1])]));
        assert_eq!(posit_x(&up, rs(&[0])), BTreeSet::from([rs(&[0])]));
        assert_eq!(posit_x(&up, rs(&[1])), BTreeSet::from([rs(&[0, 1])]));
        assert!(posit_x(&up, RegSet::EMPTY).is_empty());

        assert_eq!(posit_sop(&up, rs(&[0, 1])), BTreeSet::from([rs(&[0]), rs(&[0, 1])]));
        assert_eq!(posit_sop(&up, rs(&[1])), BTreeSet::from([rs(&[0]), rs(&[1])]));
        assert_eq!(posit_sop(&up, RegSet::EMPTY), BTreeSet::from([RegSet::EMPTY]));

        assert_eq!(negat(&up, rs(&[0, 1])), RegSet::EMPTY);
        assert_eq!(negat(&up, rs(&[0])), rs(&[0, 1]));
        assert_eq!(negat(&up, rs(&[1])), rs(&[0]));
        assert_eq!(negat(&up, RegSet::EMPTY), rs(&[0, 1]));

        assert_eq!(posit_sop_prime(&up, rs(&[0, 1])), BTreeSet::from([rs(&[0]), rs(&[0, 1])]));
        assert!(posit_sop_prime(&up, rs(&[0])).is_empty());
        assert_eq!(posit_sop_prime(&up, rs(&[1])), BTreeSet::from([rs(&[1])]));
        assert_eq!(posit_sop_prime(&up, RegSet::EMPTY), BTreeSet::from([RegSet::EMPTY]));
    }

    #[test]
    fn identity_and_clear() {
        let id: Vec<_> = (0..3).map(RsaUpdate::keep).collect();
        let d = compute_transfer(&id, 3).unwrap();
        assert!(d.iter().enumerate().all(|(i, r)| r.0 == i as u64));
        let clear = vec![RsaUpdate::CLEAR; 3];
        assert!(compute_transfer(&clear, 3).unwrap().iter().all(|r| r.is_empty()));
    }

    #[test]
    fn rejects_bad_update() {
        assert!(compute_transfer(&example(), 3).is_err());
        assert!(compute_transfer(&[RsaUpdate::keep(4)], 1).is_err());
    }
}
