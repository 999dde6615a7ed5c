use std::collections::{BTreeSet, VecDeque};

use crate::automata::Rsa;

fn closures(a: &Rsa) -> Vec<BTreeSet<usize>> {
    let mut succ = vec![Vec::new(); a.num_states()];
    for &(x, y) in &a.epsilon {
        succ[x].push(y);
    }
    (0..a.num_states())
        .map(|p| {
            let mut seen = BTreeSet::from([p]);
            let mut queue = VecDeque::from([p]);
            while let Some(x) = queue.pop_front() {
                for &y in &succ[x] {
                    if seen.insert(y) {
                        queue.push_back(y);
                    }
                }
            }
            seen
        })
        .collect()
}

/// Fold epsilon closures into outgoing transitions and final states.
/// Epsilon edges carry no guards and keep every register, so the result
/// accepts the same language.
pub fn eliminate_epsilon(a: &Rsa) -> Rsa {
    if a.epsilon.is_empty() {
        return a.clone();
    }
    let cl = closures(a);
    let mut out = a.clone();
    out.epsilon.clear();
    let mut seen: BTreeSet<_> = a.transitions.iter().cloned().collect();
    let mut transitions = a.transitions.clone();
    for (p, reach) in cl.iter().enumerate() {
        for &q in reach {
            if q == p {
                continue;
            }
            for t in a.transitions.iter().filter(|t| t.src == q) {
                let mut nt = t.clone();
                nt.src = p;
                if seen.insert(nt.clone()) {
                    transitions.push(nt);
                }
            }
        }
    }
    out.transitions = transitions;
    out.finals = (0..a.num_states()).filter(|&p| cl[p].iter().any(|q| a.is_final(*q))).collect();
    out
}

/// Drop states that are unreachable from an initial state or cannot reach a
/// final one, ignoring guards.
pub fn trim(a: &Rsa) -> Rsa {
    let n = a.num_states();
    let mut fwd = vec![Vec::new(); n];
    let mut bwd = vec![Vec::new(); n];
    for t in &a.transitions {
        fwd[t.src].push(t.dst);
        bwd[t.dst].push(t.src);
    }
    for &(x, y) in &a.epsilon {
        fwd[x].push(y);
        bwd[y].push(x);
    }
    let sweep = |start: &BTreeSet<usize>, adj: &Vec<Vec<usize>>| {
        let mut seen = vec![false; n];
        let mut stack: Vec<usize> = start.iter().copied().collect();
        for &s in start {
            seen[s] = true;
        }
        while let Some(x) = stack.pop() {
            for &y in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        seen
    };
    let reach = sweep(&a.initial, &fwd);
    let coreach = sweep(&a.finals, &bwd);
    let keep: Vec<bool> = (0..n).map(|q| reach[q] && coreach[q]).collect();
    let mut new_id = vec![usize::MAX; n];
    let mut states = Vec::new();
    for q in 0..n {
        if keep[q] {
            new_id[q] = states.len();
            states.push(a.states[q].clone());
        }
    }
    let remap = |set: &BTreeSet<usize>| set.iter().filter(|&&q| keep[q]).map(|&q| new_id[q]).collect();
    Rsa {
        name: a.name.clone(),
        alphabet: a.alphabet.clone(),
        states,
        registers: a.registers.clone(),
        transitions: a
            .transitions
            .iter()
            .filter(|t| keep[t.src] && keep[t.dst])
            .map(|t| {
                let mut nt = t.clone();
                nt.src = new_id[t.src];
                nt.dst = new_id[t.dst];
                nt
            })
            .collect(),
        epsilon: a
            .epsilon
            .iter()
            .filter(|(x, y)| keep[*x] && keep[*y])
            .map(|&(x, y)| (new_id[x], new_id[y]))
            .collect(),
        initial: remap(&a.initial),
        finals: remap(&a.finals),
    }
}
