//! Transfer Petri nets: firing, backward coverability over minimal bases,
//! and bounded forward search for witnesses.

use std::collections::{HashMap, HashSet, VecDeque};
use std::ops::{Index, IndexMut};
use std::sync::atomic::{AtomicBool, Ordering};

use crate::error::{Error, Result};

pub type PlaceId = usize;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Marking(pub Vec<u32>);

impl Marking {
    pub fn zeros(n: usize) -> Self {
        Marking(vec![0; n])
    }

    pub fn unit(n: usize, p: PlaceId) -> Self {
        let mut m = Marking::zeros(n);
        m.0[p] = 1;
        m
    }

    pub fn from_pairs(n: usize, pairs: &[(PlaceId, u32)]) -> Self {
        let mut m = Marking::zeros(n);
        for &(p, k) in pairs {
            m.0[p] += k;
        }
        m
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Pointwise order.
    pub fn le(&self, other: &Marking) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn total(&self) -> u64 {
        self.0.iter().map(|&k| k as u64).sum()
    }

    pub fn support(&self) -> impl Iterator<Item = PlaceId> + '_ {
        self.0.iter().enumerate().filter(|(_, &k)| k > 0).map(|(p, _)| p)
    }
}

impl Index<PlaceId> for Marking {
    type Output = u32;
    fn index(&self, p: PlaceId) -> &u32 {
        &self.0[p]
    }
}

impl IndexMut<PlaceId> for Marking {
    fn index_mut(&mut self, p: PlaceId) -> &mut u32 {
        &mut self.0[p]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TpnTransition {
    pub name: String,
    pub input: Marking,
    pub output: Marking,
    /// Total map over places.
    pub transfer: Vec<PlaceId>,
}

impl TpnTransition {
    /// Transition with identity transfer.
    pub fn simple(name: impl Into<String>, input: Marking, output: Marking) -> Self {
        let n = input.len();
        TpnTransition { name: name.into(), input, output, transfer: (0..n).collect() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tpn {
    pub name: String,
    pub places: Vec<String>,
    pub transitions: Vec<TpnTransition>,
    pub initial: Marking,
}

impl Tpn {
    pub fn num_places(&self) -> usize {
        self.places.len()
    }

    pub fn place(&self, name: &str) -> Option<PlaceId> {
        self.places.iter().position(|p| p == name)
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.places.len();
        if self.initial.len() != n {
            return Err(Error::input("initial marking does not match the place count"));
        }
        for t in &self.transitions {
            if t.input.len() != n || t.output.len() != n || t.transfer.len() != n {
                return Err(Error::input(format!("transition {} is not total over places", t.name)));
            }
            if t.transfer.iter().any(|&p| p >= n) {
                return Err(Error::input(format!("transition {} transfers to an unknown place", t.name)));
            }
            if self.places.contains(&t.name) {
                return Err(Error::input(format!("`{}` names both a place and a transition", t.name)));
            }
        }
        Ok(())
    }
}

/// Fire `t` from `m`, or `None` when the input is not covered.
pub fn fire(t: &TpnTransition, m: &Marking) -> Option<Marking> {
    if !t.input.le(m) {
        return None;
    }
    let mut out = t.output.clone();
    for (p, (&have, &need)) in m.0.iter().zip(&t.input.0).enumerate() {
        out.0[t.transfer[p]] += have - need;
    }
    Some(out)
}

/// `δ⁻¹` per place.
fn preimages(t: &TpnTransition) -> Vec<Vec<PlaceId>> {
    let mut pre = vec![Vec::new(); t.transfer.len()];
    for (p, &q) in t.transfer.iter().enumerate() {
        pre[q].push(p);
    }
    pre
}

fn compositions(total: u32, parts: usize, out: &mut Vec<Vec<u32>>) {
    fn go(left: u32, parts: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if parts == 1 {
            cur.push(left);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for k in 0..=left {
            cur.push(k);
            go(left - k, parts - 1, cur, out);
            cur.pop();
        }
    }
    go(total, parts, &mut Vec::new(), out);
}

fn pre_basis_with(t: &TpnTransition, pre: &[Vec<PlaceId>], m: &Marking) -> Vec<Marking> {
    let mut acc = vec![t.input.clone()];
    for p in 0..m.len() {
        let deficit = m[p].saturating_sub(t.output[p]);
        if deficit == 0 {
            continue;
        }
        if pre[p].is_empty() {
            return Vec::new();
        }
        let mut comps = Vec::new();
        compositions(deficit, pre[p].len(), &mut comps);
        let mut next = Vec::with_capacity(acc.len() * comps.len());
        for base in &acc {
            for c in &comps {
                let mut b = base.clone();
                for (&src, &k) in pre[p].iter().zip(c) {
                    b[src] += k;
                }
                next.push(b);
            }
        }
        acc = next;
    }
    minimize_basis(acc)
}

/// Minimal markings from which firing `t` covers `m`.
pub fn min_pre_basis(t: &TpnTransition, m: &Marking) -> Vec<Marking> {
    pre_basis_with(t, &preimages(t), m)
}

/// The minimal antichain with the same upward closure.
pub fn minimize_basis(mut ms: Vec<Marking>) -> Vec<Marking> {
    ms.sort_by_key(|m| (m.total(), m.0.clone()));
    ms.dedup();
    let mut out: Vec<Marking> = Vec::with_capacity(ms.len());
    for m in ms {
        if !out.iter().any(|b| b.le(&m)) {
            out.push(m);
        }
    }
    out
}

#[derive(Clone, Debug)]
pub struct CoverOptions<'a> {
    pub basis_cap: usize,
    pub cancel: Option<&'a AtomicBool>,
    /// Place groups whose total token count is known to stay within the
    /// bound in every reachable marking.
    pub bounds: Vec<(Vec<PlaceId>, u32)>,
    /// `(p, allowed)`: whenever `p` is marked in a reachable marking, only
    /// places flagged in `allowed` are.
    pub compatible: Vec<(PlaceId, Vec<bool>)>,
}

impl Default for CoverOptions<'_> {
    fn default() -> Self {
        CoverOptions { basis_cap: 1_000_000, cancel: None, bounds: Vec::new(), compatible: Vec::new() }
    }
}

/// Places that can ever hold a token, over-approximated forward.
pub fn markable_places(net: &Tpn) -> Vec<bool> {
    let mut mark: Vec<bool> = net.initial.0.iter().map(|&k| k > 0).collect();
    loop {
        let mut changed = false;
        for t in &net.transitions {
            if !t.input.support().all(|p| mark[p]) {
                continue;
            }
            let mut set = |p: PlaceId, mark: &mut Vec<bool>| {
                if !mark[p] {
                    mark[p] = true;
                    changed = true;
                }
            };
            for p in t.output.support() {
                set(p, &mut mark);
            }
            for p in 0..mark.len() {
                if mark[p] {
                    set(t.transfer[p], &mut mark);
                }
            }
        }
        if !changed {
            return mark;
        }
    }
}

/// Whether some reachable marking covers `target`, by backward saturation.
pub fn is_coverable(net: &Tpn, target: &Marking) -> Result<bool> {
    is_coverable_with(net, target, &CoverOptions::default())
}

pub fn is_coverable_with(net: &Tpn, target: &Marking, opts: &CoverOptions) -> Result<bool> {
    net.validate()?;
    if target.len() != net.num_places() {
        return Err(Error::input("target marking does not match the place count"));
    }
    let markable = markable_places(net);
    let viable = |m: &Marking| {
        m.support().all(|p| markable[p])
            && opts.bounds.iter().all(|(ps, k)| ps.iter().map(|&p| m[p]).sum::<u32>() <= *k)
            && opts.compatible.iter().all(|(p, ok)| m[*p] == 0 || m.support().all(|x| ok[x]))
    };
    if !viable(target) {
        return Ok(false);
    }
    // Transitions that can never fire are dropped, and tokens are only ever
    // pulled back from places that can hold them.
    let live: Vec<&TpnTransition> = net.transitions.iter().filter(|t| viable(&t.input)).collect();
    let pre: Vec<Vec<Vec<PlaceId>>> = live
        .iter()
        .map(|t| preimages(t).into_iter().map(|ps| ps.into_iter().filter(|&p| markable[p]).collect()).collect())
        .collect();
    if target.le(&net.initial) {
        return Ok(true);
    }
    let mut basis: Vec<Marking> = vec![target.clone()];
    let mut members: HashSet<Marking> = HashSet::from([target.clone()]);
    let mut queue: VecDeque<Marking> = VecDeque::from([target.clone()]);
    while let Some(cur) = queue.pop_front() {
        if !members.contains(&cur) {
            continue;
        }
        if opts.cancel.is_some_and(|c| c.load(Ordering::Relaxed)) {
            return Err(Error::Cancelled);
        }
        for (t, pre_t) in live.iter().zip(&pre) {
            for b in pre_basis_with(t, pre_t, &cur) {
                if !viable(&b) || basis.iter().any(|x| x.le(&b)) {
                    continue;
                }
                if b.le(&net.initial) {
                    return Ok(true);
                }
                basis.retain(|x| {
                    let keep = !b.le(x);
                    if !keep {
                        members.remove(x);
                    }
                    keep
                });
                basis.push(b.clone());
                members.insert(b.clone());
                queue.push_back(b);
                if basis.len() > opts.basis_cap {
                    return Err(Error::Resource(format!(
                        "coverability basis exceeded {} elements",
                        opts.basis_cap
                    )));
                }
            }
        }
    }
    Ok(false)
}

/// Places whose tokens can never enable a transition or reach the target.
fn irrelevant_places(net: &Tpn, target: &Marking) -> Vec<bool> {
    let n = net.num_places();
    let mut irr: Vec<bool> = (0..n)
        .map(|p| target[p] == 0 && net.transitions.iter().all(|t| t.input[p] == 0))
        .collect();
    loop {
        let mut changed = false;
        for p in 0..n {
            if irr[p] && net.transitions.iter().any(|t| !irr[t.transfer[p]]) {
                irr[p] = false;
                changed = true;
            }
        }
        if !changed {
            return irr;
        }
    }
}

/// Breadth-first search for a firing sequence covering `target`, within
/// `max_depth` firings and discarding markings above `token_cap` on any
/// place. Returns transition indices.
pub fn forward_cover_search(net: &Tpn, target: &Marking, max_depth: usize, token_cap: u32) -> Option<Vec<usize>> {
    forward_search_bounded(net, target, max_depth, token_cap, usize::MAX, None).ok().flatten()
}

fn forward_search_bounded(
    net: &Tpn,
    target: &Marking,
    max_depth: usize,
    token_cap: u32,
    max_states: usize,
    cancel: Option<&AtomicBool>,
) -> Result<Option<Vec<usize>>> {
    let irr = irrelevant_places(net, target);
    let norm = |mut m: Marking| {
        for (p, &i) in irr.iter().enumerate() {
            if i {
                m[p] = 0;
            }
        }
        m
    };
    let start = norm(net.initial.clone());
    if target.le(&start) {
        return Ok(Some(Vec::new()));
    }
    let mut parent: HashMap<Marking, (usize, Marking)> = HashMap::new();
    let mut seen: HashSet<Marking> = HashSet::from([start.clone()]);
    let mut layer = vec![start];
    for _ in 0..max_depth {
        let mut next = Vec::new();
        for m in &layer {
            if cancel.is_some_and(|c| c.load(Ordering::Relaxed)) {
                return Err(Error::Cancelled);
            }
            for (ti, t) in net.transitions.iter().enumerate() {
                let Some(n) = fire(t, m) else { continue };
                let n = norm(n);
                if n.0.iter().any(|&k| k > token_cap) || seen.contains(&n) {
                    continue;
                }
                seen.insert(n.clone());
                parent.insert(n.clone(), (ti, m.clone()));
                if target.le(&n) {
                    let mut seq = vec![ti];
                    let mut cur = m.clone();
                    while let Some((tj, prev)) = parent.get(&cur) {
                        seq.push(*tj);
                        cur = prev.clone();
                    }
                    seq.reverse();
                    return Ok(Some(seq));
                }
                if seen.len() > max_states {
                    return Err(Error::Resource(format!("forward search exceeded {max_states} markings")));
                }
                next.push(n);
            }
        }
        if next.is_empty() {
            break;
        }
        layer = next;
    }
    Ok(None)
}

/// Iterative deepening over depth and token cap. Meant to be called after a
/// positive coverability verdict, so it only gives up at `max_depth`.
pub fn find_cover_witness(
    net: &Tpn,
    target: &Marking,
    max_depth: usize,
    cancel: Option<&AtomicBool>,
) -> Result<Option<Vec<usize>>> {
    let mut depth = 8.min(max_depth);
    let mut cap = target.0.iter().copied().max().unwrap_or(0).max(1);
    loop {
        if let Some(seq) = forward_search_bounded(net, target, depth, cap, 2_000_000, cancel)? {
            return Ok(Some(seq));
        }
        if depth >= max_depth {
            return Ok(None);
        }
        depth = (depth * 2).min(max_depth);
        cap = cap.saturating_mul(2);
    }
}

/// Replay a firing sequence from the initial marking.
pub fn replay(net: &Tpn, seq: &[usize]) -> Option<Marking> {
    seq.iter().try_fold(net.initial.clone(), |m, &t| fire(&net.transitions[t], &m))
}
