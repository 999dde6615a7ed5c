use super::{Datum, Letter};

pub type Symbol = (Letter, Datum);

/// A finite sequence of `(letter, datum)` pairs.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DataWord(pub Vec<Symbol>);

impl DataWord {
    pub fn new(items: Vec<Symbol>) -> Self {
        DataWord(items)
    }

    pub fn empty() -> Self {
        DataWord(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Symbol> {
        self.0.iter()
    }

    pub fn letters(&self) -> Vec<Letter> {
        self.0.iter().map(|s| s.0).collect()
    }

    pub fn data(&self) -> Vec<Datum> {
        self.0.iter().map(|s| s.1).collect()
    }

    /// Every word of length `<= max_len` over `letters` x `data`, shortest first.
    pub fn enumerate(letters: usize, data: &[Datum], max_len: usize) -> Vec<DataWord> {
        let mut out = vec![DataWord::empty()];
        let mut layer = vec![DataWord::empty()];
        for _ in 0..max_len {
            let mut next = Vec::with_capacity(layer.len() * letters * data.len());
            for w in &layer {
                for l in 0..letters {
                    for &d in data {
                        let mut v = w.0.clone();
                        v.push((l, d));
                        next.push(DataWord(v));
                    }
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }

    /// Words up to renaming of data: each datum is at most one more than the
    /// largest seen so far, starting at 1. Register automata cannot tell
    /// apart words that differ by a bijection on data, so these suffice for
    /// exhaustive checks.
    pub fn enumerate_canonical(letters: usize, max_len: usize) -> Vec<DataWord> {
        let mut out = vec![DataWord::empty()];
        let mut layer = vec![(DataWord::empty(), 0u64)];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for (w, top) in &layer {
                for l in 0..letters {
                    for d in 1..=top + 1 {
                        let mut v = w.0.clone();
                        v.push((l, d));
                        next.push((DataWord(v), d.max(*top)));
                    }
                }
            }
            out.extend(next.iter().map(|(w, _)| w.clone()));
            layer = next;
        }
        out
    }
}

impl From<Vec<Symbol>> for DataWord {
    fn from(v: Vec<Symbol>) -> Self {
        DataWord(v)
    }
}
