//! Naive greatest fixpoints over all state pairs, kept deliberately
//! simple so they can referee the partition-refinement checker.

use std::collections::BTreeSet;

use netccs::{Action, Lts};

/// Weak successors: `tau` means zero or more tau steps, a visible action
/// means tau* a tau*.
fn weak_succ(lts: &Lts, s: usize, a: &Action) -> BTreeSet<usize> {
    let tau_reach = |from: &BTreeSet<usize>| {
        let mut seen = from.clone();
        let mut stack: Vec<usize> = from.iter().copied().collect();
        while let Some(x) = stack.pop() {
            for (b, y) in lts.successors(x) {
                if b.is_tau() && seen.insert(*y) {
                    stack.push(*y);
                }
            }
        }
        seen
    };
    let before = tau_reach(&BTreeSet::from([s]));
    if a.is_tau() {
        return before;
    }
    let mid: BTreeSet<usize> = before
        .iter()
        .flat_map(|&x| {
            lts.successors(x)
                .iter()
                .filter(|(b, _)| b == a)
                .map(|(_, y)| *y)
        })
        .collect();
    tau_reach(&mid)
}

/// Decides bisimilarity of the two initial states. `weak` switches the
/// answering moves from single steps to weak steps.
pub fn bisimilar(left: &Lts, right: &Lts, weak: bool) -> bool {
    let n1 = left.num_states();
    let n2 = right.num_states();
    let answers = |lts: &Lts, s: usize, a: &Action| -> BTreeSet<usize> {
        if weak {
            weak_succ(lts, s, a)
        } else {
            lts.successors(s)
                .iter()
                .filter(|(b, _)| b == a)
                .map(|(_, t)| *t)
                .collect()
        }
    };
    let mut rel = vec![vec![true; n2]; n1];
    loop {
        let mut changed = false;
        for s in 0..n1 {
            for t in 0..n2 {
                if !rel[s][t] {
                    continue;
                }
                let fwd = left
                    .successors(s)
                    .iter()
                    .all(|(a, s2)| answers(right, t, a).iter().any(|&t2| rel[*s2][t2]));
                let bwd = fwd
                    && right
                        .successors(t)
                        .iter()
                        .all(|(a, t2)| answers(left, s, a).iter().any(|&s2| rel[s2][*t2]));
                if !bwd {
                    rel[s][t] = false;
                    changed = true;
                }
            }
        }
        if !changed {
            return rel[left.initial()][right.initial()];
        }
    }
}
