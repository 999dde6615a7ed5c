use crate::automata::{Rsa, StateId};
use crate::regset::RegSet;
use crate::tpn::{Marking, PlaceId, Tpn, TpnTransition};
use crate::{Error, Result};

use super::transfer::{compute_transfer, image};

pub const DEFAULT_MAX_REGISTERS: usize = 12;

/// Where a TPN transition came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Origin {
    Init(StateId),
    Final(StateId),
    /// RsA transition index and the region the input value was read from.
    Step(usize, RegSet),
}

#[derive(Clone, Debug)]
pub struct RsaTpnMap {
    pub num_states: usize,
    pub num_registers: usize,
    pub transitions: Vec<Origin>,
}

impl RsaTpnMap {
    pub fn state_place(&self, q: StateId) -> PlaceId {
        q
    }

    pub fn init_place(&self) -> PlaceId {
        self.num_states
    }

    pub fn fin_place(&self) -> PlaceId {
        self.num_states + 1
    }

    pub fn region_place(&self, rho: RegSet) -> PlaceId {
        self.num_states + 2 + rho.0 as usize
    }

    /// Place groups holding at most one token in every reachable marking.
    pub fn control_places(&self) -> Vec<PlaceId> {
        (0..self.num_states + 2).collect()
    }

    /// For each state place, the places that may be marked alongside it,
    /// from the per-state region support.
    pub fn compatible(&self, support: &[Vec<bool>]) -> Vec<(PlaceId, Vec<bool>)> {
        let n = self.num_states + 2 + (1 << self.num_registers);
        (0..self.num_states)
            .map(|q| {
                let mut ok = vec![false; n];
                ok[self.state_place(q)] = true;
                for (mask, &on) in support[q].iter().enumerate() {
                    ok[self.region_place(RegSet(mask as u64))] = on;
                }
                (self.state_place(q), ok)
            })
            .collect()
    }
}

/// Over-approximates, for every state, the regions that can hold a stored
/// value whenever a run is there. Indexed by state, then by region bitmask.
/// Unreachable states get no entries.
pub fn region_support(a: &Rsa) -> Result<Vec<Vec<bool>>> {
    let k = a.num_registers();
    let all = RegSet::full(k);
    let deltas = a.transitions.iter().map(|t| compute_transfer(&t.update, k)).collect::<Result<Vec<_>>>()?;
    let mut reached = vec![false; a.num_states()];
    let mut support = vec![vec![false; 1 << k]; a.num_states()];
    for &q in &a.initial {
        reached[q] = true;
    }
    loop {
        let mut changed = false;
        for (t, delta) in a.transitions.iter().zip(&deltas) {
            if !reached[t.src] {
                continue;
            }
            let with_input: RegSet = (0..k).filter(|&r| t.update[r].input).collect();
            let mut add = Vec::new();
            let mut fired = false;
            for g in all.subsets() {
                let present = g.is_empty() || support[t.src][g.0 as usize];
                if !present || !t.in_guard.is_subset(g) || t.notin_guard.intersects(g) {
                    continue;
                }
                fired = true;
                add.push(with_input.union(image(&t.update, g)));
            }
            if !fired {
                continue;
            }
            for (mask, &on) in support[t.src].iter().enumerate() {
                if on {
                    add.push(delta[mask]);
                }
            }
            if !reached[t.dst] {
                reached[t.dst] = true;
                changed = true;
            }
            for rho in add {
                if !rho.is_empty() && !support[t.dst][rho.0 as usize] {
                    support[t.dst][rho.0 as usize] = true;
                    changed = true;
                }
            }
        }
        if !changed {
            return Ok(support);
        }
    }
}

fn region_name(a: &Rsa, rho: RegSet) -> String {
    let names: Vec<&str> = rho.iter().map(|r| a.registers[r].as_str()).collect();
    format!("region{{{}}}", names.join(","))
}

/// Build the net whose coverability of `{fin: 1}` decides nonemptiness.
/// Tokens on a region place count the stored values lying in exactly that
/// set of registers.
pub fn rsa_to_tpn(a: &Rsa, max_registers: usize) -> Result<(Tpn, Marking, RsaTpnMap)> {
    if !a.epsilon.is_empty() {
        return Err(Error::input("epsilon edges must be eliminated first"));
    }
    let k = a.num_registers();
    if k > max_registers {
        return Err(Error::Resource(format!("{k} registers give 2^{k} region places (cap 2^{max_registers})")));
    }
    let map = RsaTpnMap { num_states: a.num_states(), num_registers: k, transitions: Vec::new() };
    let all = RegSet::full(k);
    let mut places: Vec<String> = a.states.iter().map(|s| format!("state:{s}")).collect();
    places.push("init".into());
    places.push("fin".into());
    places.extend(all.subsets().map(|rho| region_name(a, rho)));
    let n = places.len();
    let unit = |p| Marking::unit(n, p);
    let identity: Vec<PlaceId> = (0..n).collect();

    let mut transitions = Vec::new();
    let mut origins = Vec::new();
    for &q in &a.initial {
        transitions.push(TpnTransition::simple(
            format!("init>{}", a.states[q]),
            unit(map.init_place()),
            unit(map.state_place(q)),
        ));
        origins.push(Origin::Init(q));
    }
    for &q in &a.finals {
        transitions.push(TpnTransition::simple(
            format!("{}>fin", a.states[q]),
            unit(map.state_place(q)),
            unit(map.fin_place()),
        ));
        origins.push(Origin::Final(q));
    }
    for (i, t) in a.transitions.iter().enumerate() {
        let delta = compute_transfer(&t.update, k)?;
        let mut transfer = identity.clone();
        for rho in all.subsets() {
            transfer[map.region_place(rho)] = map.region_place(delta[rho.0 as usize]);
        }
        let with_input: RegSet = (0..k).filter(|&r| t.update[r].input).collect();
        for g in all.subsets() {
            if !t.in_guard.is_subset(g) || t.notin_guard.intersects(g) {
                continue;
            }
            let mut input = unit(map.state_place(t.src));
            if !g.is_empty() {
                input.0[map.region_place(g)] += 1;
            }
            let mut output = unit(map.state_place(t.dst));
            let lands = with_input.union(image(&t.update, g));
            if !lands.is_empty() {
                output.0[map.region_place(lands)] += 1;
            }
            transitions.push(TpnTransition {
                name: format!("t{i}@{}", region_name(a, g)),
                input,
                output,
                transfer: transfer.clone(),
            });
            origins.push(Origin::Step(i, g));
        }
    }
    let net = Tpn { name: a.name.clone(), places, transitions, initial: unit(map.init_place()) };
    let target = unit(map.fin_place());
    Ok((net, target, RsaTpnMap { transitions: origins, ..map }))
}
