//! Emptiness with witnesses, and inclusion of an RsA in a Boolean
//! combination of one-register equality NRAs.

use std::fmt;
use std::sync::atomic::AtomicBool;

use crate::algebra::{complement_drsa, eliminate_epsilon, intersect_rsa, trim, union_drsa};
use crate::automata::{merge_alphabets, nra_membership, rsa_step, DataWord, Datum, Nra, Rsa, RsaConfig, Validate};
#[cfg(test)]
use crate::automata::RsaUpdate;
use crate::determinise::{determinise_pipeline_with, DeterminiseOptions, Outcome};
use crate::reduction::{region_support, rsa_to_tpn, Origin, DEFAULT_MAX_REGISTERS};
use crate::tpn::{find_cover_witness, is_coverable_with, CoverOptions};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub answer: bool,
    pub witness: Option<DataWord>,
}

#[derive(Clone, Debug)]
pub struct DecideOptions<'a> {
    pub witness: bool,
    pub max_registers: usize,
    pub basis_cap: usize,
    pub witness_depth: usize,
    pub macrostate_cap: usize,
    pub cancel: Option<&'a AtomicBool>,
}

impl Default for DecideOptions<'_> {
    fn default() -> Self {
        DecideOptions {
            witness: true,
            max_registers: DEFAULT_MAX_REGISTERS,
            basis_cap: 1_000_000,
            witness_depth: 4096,
            macrostate_cap: 100_000,
            cancel: None,
        }
    }
}

pub fn is_empty(a: &Rsa) -> Result<Verdict> {
    is_empty_with(a, &DecideOptions::default())
}

pub fn is_empty_with(a: &Rsa, opts: &DecideOptions) -> Result<Verdict> {
    a.check()?;
    let a = trim(&eliminate_epsilon(a));
    if a.initial.is_empty() || a.finals.is_empty() {
        return Ok(Verdict { answer: true, witness: None });
    }
    let (net, target, map) = rsa_to_tpn(&a, opts.max_registers)?;
    let support = region_support(&a)?;
    let cover = CoverOptions {
        basis_cap: opts.basis_cap,
        cancel: opts.cancel,
        bounds: vec![(map.control_places(), 1)],
        compatible: map.compatible(&support),
    };
    if !is_coverable_with(&net, &target, &cover)? {
        return Ok(Verdict { answer: true, witness: None });
    }
    if !opts.witness {
        return Ok(Verdict { answer: false, witness: None });
    }
    let seq = find_cover_witness(&net, &target, opts.witness_depth, opts.cancel)?
        .ok_or_else(|| Error::Resource(format!("no witness within {} firings", opts.witness_depth)))?;
    let origins: Vec<Origin> = seq.iter().map(|&i| map.transitions[i]).collect();
    let w = materialise(&a, &origins).ok_or_else(|| Error::Resource("witness replay failed".into()))?;
    Ok(Verdict { answer: false, witness: Some(w) })
}

/// Turn a firing sequence into a data word: a value read from a region is
/// the smallest stored value lying in exactly that region, a fresh value is
/// the smallest positive natural not stored anywhere.
fn materialise(a: &Rsa, origins: &[Origin]) -> Option<DataWord> {
    let mut cfg: Option<RsaConfig> = None;
    let mut word = Vec::new();
    for o in origins {
        match *o {
            Origin::Init(q) => cfg = Some(RsaConfig::initial(q, a.num_registers())),
            Origin::Final(q) => return (cfg?.state == q && a.accepts(&DataWord(word.clone()))).then_some(DataWord(word)),
            Origin::Step(i, g) => {
                let c = cfg.take()?;
                let t = &a.transitions[i];
                let d: Datum = if g.is_empty() {
                    (1..).find(|d| c.regs.iter().all(|r| !r.contains(d)))?
                } else {
                    c.regs.iter().flatten().copied().filter(|&d| c.region_of(d) == g).min()?
                };
                cfg = Some(rsa_step(&c, t, (t.letter, d))?);
                word.push((t.letter, d));
            }
        }
    }
    None
}

/// Boolean combination of one-register NRAs without disequality guards.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IncExpr {
    Leaf(Nra),
    Union(Box<IncExpr>, Box<IncExpr>),
    Intersect(Box<IncExpr>, Box<IncExpr>),
    Complement(Box<IncExpr>),
}

impl IncExpr {
    pub fn leaf(a: Nra) -> Self {
        IncExpr::Leaf(a)
    }

    pub fn union(self, o: IncExpr) -> Self {
        IncExpr::Union(Box::new(self), Box::new(o))
    }

    pub fn intersect(self, o: IncExpr) -> Self {
        IncExpr::Intersect(Box::new(self), Box::new(o))
    }

    pub fn complement(self) -> Self {
        IncExpr::Complement(Box::new(self))
    }

    pub fn leaves(&self) -> Vec<&Nra> {
        match self {
            IncExpr::Leaf(a) => vec![a],
            IncExpr::Union(x, y) | IncExpr::Intersect(x, y) => {
                let mut v = x.leaves();
                v.extend(y.leaves());
                v
            }
            IncExpr::Complement(x) => x.leaves(),
        }
    }

    pub fn check(&self) -> Result<()> {
        for a in self.leaves() {
            a.check()?;
            if a.num_registers() != 1 || !a.is_equality_only() {
                return Err(Error::input(format!(
                    "leaf {} must have one register and no disequality guards",
                    a.name
                )));
            }
        }
        Ok(())
    }

    /// Membership evaluated leaf by leaf, independently of any compiled
    /// automaton. Letters of `w` index into `alphabet`; a leaf rejects words
    /// using letters it does not know.
    pub fn accepts(&self, alphabet: &[String], w: &DataWord) -> bool {
        match self {
            IncExpr::Leaf(a) => {
                let local: Option<Vec<_>> = w.0.iter().map(|&(l, d)| Some((a.letter(&alphabet[l])?, d))).collect();
                local.is_some_and(|v| nra_membership(a, &DataWord(v)))
            }
            IncExpr::Union(x, y) => x.accepts(alphabet, w) || y.accepts(alphabet, w),
            IncExpr::Intersect(x, y) => x.accepts(alphabet, w) && y.accepts(alphabet, w),
            IncExpr::Complement(x) => !x.accepts(alphabet, w),
        }
    }

    pub fn alphabet(&self) -> Vec<String> {
        let mut out: Vec<String> = Vec::new();
        for a in self.leaves() {
            out = merge_alphabets(&out, &a.alphabet).0;
        }
        out
    }
}

impl fmt::Display for IncExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IncExpr::Leaf(a) => write!(f, "{}", a.name),
            IncExpr::Union(x, y) => write!(f, "({x} | {y})"),
            IncExpr::Intersect(x, y) => write!(f, "({x} & {y})"),
            IncExpr::Complement(x) => write!(f, "!{x}"),
        }
    }
}

/// Deterministic RsA for `e` over the union of its leaves' alphabets.
pub fn compile_expr(e: &IncExpr) -> Result<Rsa> {
    compile_expr_with(e, &DecideOptions::default())
}

pub fn compile_expr_with(e: &IncExpr, opts: &DecideOptions) -> Result<Rsa> {
    e.check()?;
    let alphabet = e.alphabet();
    compile(e, &alphabet, opts)
}

fn widen(a: &Rsa, alphabet: &[String]) -> Rsa {
    let map: Vec<usize> = a.alphabet.iter().map(|l| alphabet.iter().position(|x| x == l).unwrap()).collect();
    a.relabel(alphabet.to_vec(), &map)
}

fn compile(e: &IncExpr, alphabet: &[String], opts: &DecideOptions) -> Result<Rsa> {
    Ok(match e {
        IncExpr::Leaf(a) => {
            let dopts = DeterminiseOptions { macrostate_cap: opts.macrostate_cap, cancel: opts.cancel, ..Default::default() };
            match determinise_pipeline_with(a, &dopts)? {
                Outcome::Drsa(d) => widen(&d.rsa, alphabet),
                Outcome::Bot(b) => return Err(Error::input(format!("leaf {} is outside the fragment: {} {}", a.name, b.reason, b.detail))),
            }
        }
        IncExpr::Complement(x) => complement_drsa(&compile(x, alphabet, opts)?)?,
        IncExpr::Union(x, y) => trim_keep(union_drsa(&compile(x, alphabet, opts)?, &compile(y, alphabet, opts)?)?),
        IncExpr::Intersect(x, y) => trim_keep(intersect_rsa(&compile(x, alphabet, opts)?, &compile(y, alphabet, opts)?)?),
    })
}

/// Trim, keeping one initial state when the language is empty so that a
/// later complement still has somewhere to start.
fn trim_keep(a: Rsa) -> Rsa {
    let t = trim(&a);
    if !t.initial.is_empty() || a.initial.is_empty() {
        return t;
    }
    Rsa {
        states: vec!["empty".into()],
        transitions: Vec::new(),
        initial: [0].into(),
        finals: Default::default(),
        ..a
    }
}

/// Whether `L(a) ⊆ L(e)`; a counterexample is in `a` and not in `e`.
pub fn check_inclusion(a: &Rsa, e: &IncExpr) -> Result<Verdict> {
    check_inclusion_with(a, e, &DecideOptions::default())
}

pub fn check_inclusion_with(a: &Rsa, e: &IncExpr, opts: &DecideOptions) -> Result<Verdict> {
    a.check()?;
    let a = eliminate_epsilon(a);
    e.check()?;
    let alphabet = merge_alphabets(&a.alphabet, &e.alphabet()).0;
    let c = compile(e, &alphabet, opts)?;
    let not_e = complement_drsa(&c)?;
    let both = intersect_rsa(&a, &not_e)?;
    let v = is_empty_with(&both, opts)?;
    Ok(Verdict { answer: v.answer, witness: v.witness })
}
