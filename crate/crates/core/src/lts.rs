//! Finite labelled transition systems with a designated initial state.

use std::collections::BTreeSet;

use crate::action::Action;
use crate::error::{Error, Result};

/// A finite LTS. States are `0..num_states()`; each carries an opaque
/// display label. Outgoing edges of every state are sorted and duplicate-free.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lts {
    initial: usize,
    labels: Vec<String>,
    edges: Vec<Vec<(Action, usize)>>,
    alphabet: BTreeSet<Action>,
}

impl Lts {
    /// Assembles an LTS, validating endpoints. `alphabet` may declare actions
    /// that label no edge; every edge label is added to it.
    pub fn new(
        labels: Vec<String>,
        initial: usize,
        edges: impl IntoIterator<Item = (usize, Action, usize)>,
        alphabet: impl IntoIterator<Item = Action>,
    ) -> Result<Self> {
        let n = labels.len();
        if initial >= n {
            return Err(Error::Input(format!(
                "initial state {initial} out of range ({n} states)"
            )));
        }
        let mut out: Vec<Vec<(Action, usize)>> = vec![Vec::new(); n];
        let mut alphabet: BTreeSet<Action> = alphabet.into_iter().collect();
        for (src, action, dst) in edges {
            if src >= n || dst >= n {
                return Err(Error::Input(format!(
                    "edge ({src}, {action}, {dst}) references a missing state"
                )));
            }
            alphabet.insert(action.clone());
            out[src].push((action, dst));
        }
        for list in &mut out {
            list.sort();
            list.dedup();
        }
        Ok(Self {
            initial,
            labels,
            edges: out,
            alphabet,
        })
    }

    /// States numbered `0..n` with their numbers as labels.
    pub fn unlabelled(
        num_states: usize,
        initial: usize,
        edges: impl IntoIterator<Item = (usize, Action, usize)>,
    ) -> Result<Self> {
        let labels = (0..num_states).map(|i| i.to_string()).collect();
        Self::new(labels, initial, edges, [])
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn num_states(&self) -> usize {
        self.labels.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.iter().map(Vec::len).sum()
    }

    pub fn state_label(&self, state: usize) -> &str {
        &self.labels[state]
    }

    pub fn state_labels(&self) -> &[String] {
        &self.labels
    }

    pub fn alphabet(&self) -> &BTreeSet<Action> {
        &self.alphabet
    }

    pub fn successors(&self, state: usize) -> &[(Action, usize)] {
        &self.edges[state]
    }

    /// All edges in (source, action, target) order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, &Action, usize)> + '_ {
        self.edges
            .iter()
            .enumerate()
            .flat_map(|(s, list)| list.iter().map(move |(a, t)| (s, a, *t)))
    }

    /// Actions that actually label an edge.
    pub fn used_actions(&self) -> BTreeSet<Action> {
        self.edges().map(|(_, a, _)| a.clone()).collect()
    }

    /// States reachable from the initial state, in BFS order.
    pub fn reachable(&self) -> Vec<usize> {
        let mut seen = vec![false; self.num_states()];
        let mut order = vec![self.initial];
        seen[self.initial] = true;
        let mut i = 0;
        while i < order.len() {
            let s = order[i];
            i += 1;
            for (_, t) in &self.edges[s] {
                if !seen[*t] {
                    seen[*t] = true;
                    order.push(*t);
                }
            }
        }
        order
    }
}
