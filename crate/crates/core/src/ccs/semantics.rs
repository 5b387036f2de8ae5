//! Structural operational semantics over canonical states.

use std::collections::{BTreeSet, HashMap, VecDeque};

use super::state::{canonicalize, flatten_into, nested_restriction, CcsState, Factor};
use super::syntax::{DefiningEquations, Process, SeqProcess};
use crate::action::{Action, Ident};
use crate::error::{Error, Result};
use crate::lts::Lts;
use crate::ExplorationLimits;

/// A move of a single component: the action and the factors it leaves.
type Move = (Action, Vec<Factor>);

/// All transitions of `state` under `defs` (rules Pref, Sum, Par, Com, Res,
/// Cons), as a set of (action, canonical successor).
pub fn step(state: &CcsState, defs: &DefiningEquations) -> Result<BTreeSet<(Action, CcsState)>> {
    let factors = state.factors();
    let restricted = state.restricted();

    // Distinct factors with their moves; factors are sorted, so equal ones
    // are adjacent.
    let mut groups: Vec<(usize, usize, Vec<Move>)> = Vec::new();
    let mut i = 0;
    while i < factors.len() {
        let mut j = i + 1;
        while j < factors.len() && factors[j] == factors[i] {
            j += 1;
        }
        let moves = factor_moves(&factors[i], defs)?;
        groups.push((i, j - i, moves));
        i = j;
    }

    let successor = |consumed: &[usize], produced: &[&[Factor]]| {
        let mut next: Vec<Factor> = Vec::with_capacity(factors.len() + 2);
        let mut skip = consumed.to_vec();
        skip.sort_unstable();
        for (k, f) in factors.iter().enumerate() {
            if skip.binary_search(&k).is_err() {
                next.push(f.clone());
            }
        }
        for p in produced {
            next.extend(p.iter().cloned());
        }
        CcsState::from_parts(restricted.clone(), next)
    };

    let mut out = BTreeSet::new();
    for (gi, (first, _, moves)) in groups.iter().enumerate() {
        for (action, rest) in moves {
            if !is_restricted(action, restricted) {
                out.insert((action.clone(), successor(&[*first], &[rest])));
            }
        }
        // Com between two copies of the same factor
        let (_, count, _) = groups[gi];
        if count >= 2 {
            for (a, ra) in moves {
                for (b, rb) in moves {
                    if a.complements(b) {
                        out.insert((Action::Tau, successor(&[*first, first + 1], &[ra, rb])));
                    }
                }
            }
        }
        // Com between distinct factors
        for (other, _, other_moves) in &groups[gi + 1..] {
            for (a, ra) in moves {
                for (b, rb) in other_moves {
                    if a.complements(b) {
                        out.insert((Action::Tau, successor(&[*first, *other], &[ra, rb])));
                    }
                }
            }
        }
    }
    Ok(out)
}

fn is_restricted(action: &Action, restricted: &BTreeSet<Ident>) -> bool {
    action.name().is_some_and(|n| restricted.contains(n))
}

fn factor_moves(f: &Factor, defs: &DefiningEquations) -> Result<Vec<Move>> {
    let mut unfolding = Vec::new();
    match f {
        Factor::Seq(s) => seq_moves(s),
        Factor::Name(n) => name_moves(n, defs, &mut unfolding),
    }
}

fn seq_moves(s: &SeqProcess) -> Result<Vec<Move>> {
    match s {
        SeqProcess::Nil => Ok(Vec::new()),
        SeqProcess::Prefix(a, q) => {
            let mut rest = Vec::new();
            flatten_into(q, &mut rest)?;
            Ok(vec![(a.clone(), rest)])
        }
        SeqProcess::Sum(branches) => {
            let mut out = Vec::new();
            for b in branches {
                out.extend(seq_moves(b)?);
            }
            Ok(out)
        }
    }
}

fn name_moves(
    n: &Ident,
    defs: &DefiningEquations,
    unfolding: &mut Vec<Ident>,
) -> Result<Vec<Move>> {
    if unfolding.contains(n) {
        return Err(Error::Unsupported(format!(
            "unguarded recursion through `{n}`"
        )));
    }
    let body = defs
        .get(n)
        .ok_or_else(|| Error::Input(format!("process name `{n}` is not defined")))?;
    unfolding.push(n.clone());
    let moves = process_moves(body, defs, unfolding);
    unfolding.pop();
    moves
}

/// Moves of an arbitrary (restriction-free) process term; continuations are
/// the flattened factor lists of the whole term after the move.
fn process_moves(
    q: &Process,
    defs: &DefiningEquations,
    unfolding: &mut Vec<Ident>,
) -> Result<Vec<Move>> {
    match q {
        Process::Seq(s) => seq_moves(s),
        Process::Name(n) => name_moves(n, defs, unfolding),
        Process::Restrict(..) => Err(nested_restriction()),
        Process::Par(items) => {
            let mut parts = Vec::with_capacity(items.len());
            let mut idle = Vec::with_capacity(items.len());
            for item in items {
                parts.push(process_moves(item, defs, unfolding)?);
                let mut fs = Vec::new();
                flatten_into(item, &mut fs)?;
                idle.push(fs);
            }
            let rest_without = |skip: &[usize]| -> Vec<Factor> {
                idle.iter()
                    .enumerate()
                    .filter(|(k, _)| !skip.contains(k))
                    .flat_map(|(_, fs)| fs.iter().cloned())
                    .collect()
            };
            let mut out = Vec::new();
            for (i, moves) in parts.iter().enumerate() {
                for (a, r) in moves {
                    let mut next = rest_without(&[i]);
                    next.extend(r.iter().cloned());
                    out.push((a.clone(), next));
                }
                for (j, other) in parts.iter().enumerate().skip(i + 1) {
                    for (a, ra) in moves {
                        for (b, rb) in other {
                            if a.complements(b) {
                                let mut next = rest_without(&[i, j]);
                                next.extend(ra.iter().cloned());
                                next.extend(rb.iter().cloned());
                                out.push((Action::Tau, next));
                            }
                        }
                    }
                }
            }
            Ok(out)
        }
    }
}

/// Breadth-first state space of `q` under `defs`, states numbered in
/// discovery order and labelled with their canonical term.
pub fn build_ccs_lts(
    q: &Process,
    defs: &DefiningEquations,
    limits: &ExplorationLimits,
) -> Result<Lts> {
    defs.check_closed(q)?;
    let start = canonicalize(q)?;
    let mut index: HashMap<CcsState, usize> = HashMap::new();
    let mut states = vec![start.clone()];
    index.insert(start, 0);
    let mut queue = VecDeque::from([0usize]);
    let mut edges = Vec::new();
    let mut explored = 0;

    while let Some(s) = queue.pop_front() {
        explored += 1;
        for (action, next) in step(&states[s], defs)? {
            let target = match index.get(&next) {
                Some(&i) => i,
                None => {
                    if states.len() >= limits.max_states {
                        return Err(Error::ResourceLimit {
                            limit: limits.max_states,
                            explored,
                            frontier: queue.len() + 1,
                        });
                    }
                    let i = states.len();
                    index.insert(next.clone(), i);
                    states.push(next);
                    queue.push_back(i);
                    i
                }
            };
            edges.push((s, action, target));
        }
    }
    let labels = states.iter().map(ToString::to_string).collect();
    Lts::new(labels, 0, edges, [])
}
