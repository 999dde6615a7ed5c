//! Small register sets backed by a 64-bit mask.

use std::fmt;

/// Maximum number of registers an automaton may declare.
pub const MAX_REGISTERS: usize = 64;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct RegSet(pub u64);

impl RegSet {
    pub const EMPTY: RegSet = RegSet(0);

    pub fn singleton(r: usize) -> Self {
        debug_assert!(r < MAX_REGISTERS);
        RegSet(1 << r)
    }

    /// The set `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        if n >= 64 {
            RegSet(u64::MAX)
        } else {
            RegSet((1u64 << n) - 1)
        }
    }

    pub fn contains(self, r: usize) -> bool {
        r < 64 && self.0 >> r & 1 == 1
    }

    pub fn insert(&mut self, r: usize) {
        self.0 |= 1 << r;
    }

    pub fn remove(&mut self, r: usize) {
        self.0 &= !(1 << r);
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn union(self, o: RegSet) -> RegSet {
        RegSet(self.0 | o.0)
    }

    pub fn intersection(self, o: RegSet) -> RegSet {
        RegSet(self.0 & o.0)
    }

    pub fn difference(self, o: RegSet) -> RegSet {
        RegSet(self.0 & !o.0)
    }

    pub fn intersects(self, o: RegSet) -> bool {
        self.0 & o.0 != 0
    }

    pub fn is_subset(self, o: RegSet) -> bool {
        self.0 & !o.0 == 0
    }

    pub fn max_reg(self) -> Option<usize> {
        (self.0 != 0).then(|| 63 - self.0.leading_zeros() as usize)
    }

    pub fn iter(self) -> RegIter {
        RegIter(self.0)
    }

    /// All subsets of `self`, in increasing order of their masks.
    pub fn subsets(self) -> Subsets {
        Subsets { universe: self.0, next: Some(0) }
    }
}

impl FromIterator<usize> for RegSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = RegSet::EMPTY;
        for r in iter {
            s.insert(r);
        }
        s
    }
}

impl fmt::Debug for RegSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

pub struct RegIter(u64);

impl Iterator for RegIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let r = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(r)
    }
}

/// Enumerates submasks of a universe with the usual `(s - u) & u` trick,
/// which visits them in increasing numeric order.
pub struct Subsets {
    universe: u64,
    next: Option<u64>,
}

impl Iterator for Subsets {
    type Item = RegSet;

    fn next(&mut self) -> Option<RegSet> {
        let cur = self.next?;
        self.next = if cur == self.universe {
            None
        } else {
            Some(cur.wrapping_sub(self.universe) & self.universe)
        };
        Some(RegSet(cur))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subsets_enumerates_all() {
        let u = RegSet(0b1011);
        let subs: Vec<_> = u.subsets().map(|s| s.0).collect();
        assert_eq!(subs, vec![0, 1, 2, 3, 8, 9, 10, 11]);
        assert_eq!(RegSet::EMPTY.subsets().count(), 1);
    }

    #[test]
    fn basic_ops() {
        let s: RegSet = [0, 3].into_iter().collect();
        assert!(s.contains(3) && !s.contains(1));
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![0, 3]);
        assert_eq!(s.max_reg(), Some(3));
        assert_eq!(RegSet::full(3).0, 7);
        assert!(s.is_subset(RegSet::full(4)));
    }
}
