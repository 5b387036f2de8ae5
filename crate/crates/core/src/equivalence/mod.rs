//! Strong and weak bisimulation, divergence and deadlock analysis on finite
//! LTSs.

mod closure;
mod refine;

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};

use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;
use serde::Serialize;

pub use closure::weak_closure;

use crate::action::Action;
use crate::lts::Lts;
use refine::{Graph, Refinement};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Strong,
    Weak,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl Side {
    fn other(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

/// One attacker move in a distinguishing play.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Challenge {
    pub side: Side,
    pub action: Action,
}

/// A play the defender cannot answer: after the listed challenges (each
/// answered as well as possible by the other side), `refusing_side` has no
/// move matching the last one. In weak mode a `tau` challenge stands for an
/// internal step matched by zero or more internal steps.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Distinguisher {
    pub challenges: Vec<Challenge>,
    pub refusing_side: Side,
}

impl Distinguisher {
    pub fn actions(&self) -> Vec<Action> {
        self.challenges.iter().map(|c| c.action.clone()).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EquivalenceReport {
    pub mode: Mode,
    pub verdict: bool,
    /// A bisimulation containing the pair of initial states, as
    /// (left state, right state) pairs. Empty when `verdict` is false.
    pub relation: Vec<(usize, usize)>,
    pub distinguisher: Option<Distinguisher>,
    /// Blocks in the coarsest stable partition of the disjoint union.
    pub blocks: usize,
}

pub fn strong_bisim(left: &Lts, right: &Lts) -> EquivalenceReport {
    compare(left, right, Mode::Strong)
}

/// Weak bisimilarity. Divergence is not taken into account; see
/// [`has_divergent_path`].
pub fn weak_bisim(left: &Lts, right: &Lts) -> EquivalenceReport {
    compare(&weak_closure(left), &weak_closure(right), Mode::Weak)
}

fn compare(left: &Lts, right: &Lts, mode: Mode) -> EquivalenceReport {
    let actions: BTreeMap<&Action, u32> = left
        .alphabet()
        .iter()
        .chain(right.alphabet())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .enumerate()
        .map(|(i, a)| (a, i as u32))
        .collect();
    let names: Vec<&Action> = actions.keys().copied().collect();
    let offset = left.num_states();
    let mut succ = Vec::with_capacity(offset + right.num_states());
    for (lts, shift) in [(left, 0), (right, offset)] {
        for s in 0..lts.num_states() {
            succ.push(
                lts.successors(s)
                    .iter()
                    .map(|(a, t)| (actions[a], t + shift))
                    .collect::<Vec<_>>(),
            );
        }
    }
    let graph = Graph { succ };
    let refinement = Refinement::run(&graph);
    let (l0, r0) = (left.initial(), offset + right.initial());
    let stable = refinement.stable();
    let verdict = stable[l0] == stable[r0];

    let (relation, distinguisher) = if verdict {
        (matched_pairs(&graph, stable, l0, r0, offset), None)
    } else {
        (
            Vec::new(),
            Some(distinguish(&graph, &refinement, &names, l0, r0, offset)),
        )
    };
    EquivalenceReport {
        mode,
        verdict,
        relation,
        distinguisher,
        blocks: refinement.num_blocks(),
    }
}

/// Pairs reachable from the initial pair when every challenge is answered
/// by the first move into the same stable block.
fn matched_pairs(
    graph: &Graph,
    stable: &[u32],
    l0: usize,
    r0: usize,
    offset: usize,
) -> Vec<(usize, usize)> {
    let mut seen = HashSet::from([(l0, r0)]);
    let mut queue = VecDeque::from([(l0, r0)]);
    while let Some((s, t)) = queue.pop_front() {
        let mut add = |p: (usize, usize)| {
            if seen.insert(p) {
                queue.push_back(p);
            }
        };
        for &(a, s2) in &graph.succ[s] {
            if let Some(&(_, t2)) = graph.succ[t]
                .iter()
                .find(|&&(b, t2)| b == a && stable[t2] == stable[s2])
            {
                add((s2, t2));
            }
        }
        for &(a, t2) in &graph.succ[t] {
            if let Some(&(_, s2)) = graph.succ[s]
                .iter()
                .find(|&&(b, s2)| b == a && stable[s2] == stable[t2])
            {
                add((s2, t2));
            }
        }
    }
    let mut out: Vec<(usize, usize)> = seen.into_iter().map(|(s, t)| (s, t - offset)).collect();
    out.sort_unstable();
    out
}

/// Walks the refinement history from the initial pair. At each step the
/// attacker plays the smallest action (in action order) witnessing the
/// split; the defender answers with the move that stays together longest.
fn distinguish(
    graph: &Graph,
    refinement: &Refinement,
    names: &[&Action],
    l0: usize,
    r0: usize,
    offset: usize,
) -> Distinguisher {
    let mut challenges = Vec::new();
    let (mut s, mut t) = (l0, r0);
    loop {
        let level = refinement.split_level(s, t).expect("pair is not bisimilar");
        let prev = &refinement.history[level - 1];

        // candidate (action, side, mover target) whose previous-round block
        // the other side cannot reach with the same action
        let mut best: Option<(u32, Side, usize)> = None;
        for (side, x, y) in [(Side::Left, s, t), (Side::Right, t, s)] {
            for &(a, x2) in &graph.succ[x] {
                let answered = graph.succ[y]
                    .iter()
                    .any(|&(b, y2)| b == a && prev[y2] == prev[x2]);
                if !answered && best.is_none_or(|(ba, bs, bx)| (a, side, x2) < (ba, bs, bx)) {
                    best = Some((a, side, x2));
                }
            }
        }
        let (a, side, x2) = best.expect("split must be witnessed by a move");
        challenges.push(Challenge {
            side,
            action: names[a as usize].clone(),
        });
        let y = if side == Side::Left { t } else { s };
        let answer = graph.succ[y]
            .iter()
            .filter(|&&(b, _)| b == a)
            .map(|&(_, y2)| y2)
            .max_by_key(|&y2| {
                let lvl = if side == Side::Left {
                    refinement.split_level(x2, y2)
                } else {
                    refinement.split_level(y2, x2)
                };
                (lvl.unwrap_or(usize::MAX), std::cmp::Reverse(y2))
            });
        match answer {
            None => {
                return Distinguisher {
                    challenges,
                    refusing_side: side.other(),
                }
            }
            Some(y2) => {
                (s, t) = if side == Side::Left {
                    (x2, y2)
                } else {
                    (y2, x2)
                };
                debug_assert!(s < offset && t >= offset);
            }
        }
    }
}

/// Checks a claimed relation directly against the transfer conditions:
/// every move of either side must be answered (by a single move in strong
/// mode, by a weak move in weak mode) into a related pair, and the initial
/// pair must be related.
pub fn audit_relation(
    left: &Lts,
    right: &Lts,
    relation: &[(usize, usize)],
    mode: Mode,
) -> Result<(), String> {
    let related: HashSet<(usize, usize)> = relation.iter().copied().collect();
    if !related.contains(&(left.initial(), right.initial())) {
        return Err("initial states are not related".into());
    }
    let (lw, rw) = match mode {
        Mode::Strong => (left.clone(), right.clone()),
        Mode::Weak => (weak_closure(left), weak_closure(right)),
    };
    for &(s, t) in relation {
        for (a, s2) in left.successors(s) {
            let ok = rw
                .successors(t)
                .iter()
                .any(|(b, t2)| b == a && related.contains(&(*s2, *t2)));
            if !ok {
                return Err(format!(
                    "left move {s} -{a}-> {s2} unanswered from right state {t}"
                ));
            }
        }
        for (a, t2) in right.successors(t) {
            let ok = lw
                .successors(s)
                .iter()
                .any(|(b, s2)| b == a && related.contains(&(*s2, *t2)));
            if !ok {
                return Err(format!(
                    "right move {t} -{a}-> {t2} unanswered from left state {s}"
                ));
            }
        }
    }
    Ok(())
}

/// True iff a cycle of tau edges (self-loops included) is reachable from
/// the initial state, i.e. an infinite tau path exists.
pub fn has_divergent_path(lts: &Lts) -> bool {
    let reachable = lts.reachable();
    let mut graph: DiGraph<(), ()> = DiGraph::with_capacity(lts.num_states(), 0);
    let nodes: Vec<_> = (0..lts.num_states()).map(|_| graph.add_node(())).collect();
    let mut live = vec![false; lts.num_states()];
    for &s in &reachable {
        live[s] = true;
    }
    for &s in &reachable {
        for (a, t) in lts.successors(s) {
            if a.is_tau() {
                if *t == s {
                    return true;
                }
                graph.add_edge(nodes[s], nodes[*t], ());
            }
        }
    }
    tarjan_scc(&graph)
        .iter()
        .any(|scc| scc.len() > 1 && live[scc[0].index()])
}

/// States without outgoing transitions.
pub fn deadlocks(lts: &Lts) -> BTreeSet<usize> {
    (0..lts.num_states())
        .filter(|&s| lts.successors(s).is_empty())
        .collect()
}
