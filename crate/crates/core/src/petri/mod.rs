//! Labelled Petri nets, markings and the firing rule.

mod classify;
mod marking;

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::Arc;

pub use classify::{
    classify, place_groups, satisfies_unique_choice, satisfies_unique_synchronisation,
    ClassDiagnostics, NetClassification,
};
pub use marking::Marking;

use crate::action::{Action, Ident, CO_MARKER};
use crate::error::{Error, Result};
use crate::lts::Lts;
use crate::ExplorationLimits;

/// Either endpoint of an edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Node {
    Place(usize),
    Transition(usize),
}

/// A labelled Petri net `(P, T, F, A, σ)` with unweighted edges.
///
/// Places and transitions are stored in lexicographic identifier order and
/// addressed by their index in that order. Every iteration order in the
/// crate derives from it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PetriNet {
    places: Vec<Ident>,
    transitions: Vec<Ident>,
    labels: Vec<Action>,
    // per transition, sorted place indices
    pre: Vec<Vec<usize>>,
    post: Vec<Vec<usize>>,
    // per place, sorted transition indices
    place_pre: Vec<Vec<usize>>,
    place_post: Vec<Vec<usize>>,
    place_index: HashMap<Ident, usize>,
    transition_index: HashMap<Ident, usize>,
}

impl PetriNet {
    /// Validates and assembles a net. Edges are given as identifier pairs;
    /// their direction follows from which endpoint is a place.
    pub fn new<P, T, E>(places: P, transitions: T, edges: E) -> Result<Self>
    where
        P: IntoIterator,
        P::Item: AsRef<str>,
        T: IntoIterator<Item = (Ident, Action)>,
        E: IntoIterator<Item = (Ident, Ident)>,
    {
        let mut places: Vec<Ident> = places.into_iter().map(|p| Arc::from(p.as_ref())).collect();
        let mut transitions: Vec<(Ident, Action)> = transitions.into_iter().collect();
        places.sort();
        transitions.sort_by(|a, b| a.0.cmp(&b.0));

        for id in places.iter().chain(transitions.iter().map(|(t, _)| t)) {
            if id.is_empty() {
                return Err(Error::Input("empty identifier".into()));
            }
        }
        if let Some(w) = places.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Input(format!("duplicate place `{}`", w[0])));
        }
        if let Some(w) = transitions.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(Error::Input(format!("duplicate transition `{}`", w[0].0)));
        }

        let place_index: HashMap<Ident, usize> = places
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i))
            .collect();
        let transition_index: HashMap<Ident, usize> = transitions
            .iter()
            .enumerate()
            .map(|(i, (t, _))| (t.clone(), i))
            .collect();
        if let Some((t, _)) = transitions
            .iter()
            .find(|(t, _)| place_index.contains_key(t))
        {
            return Err(Error::Input(format!(
                "`{t}` is declared both as a place and as a transition"
            )));
        }
        for (t, a) in &transitions {
            match a {
                Action::Output(_) => {
                    return Err(Error::Input(format!(
                        "transition `{t}` is labelled with co-action `{a}`; co-actions are exclusive to CCS"
                    )))
                }
                Action::Input(name) if name.contains(CO_MARKER) || name.is_empty() => {
                    return Err(Error::Input(format!(
                        "transition `{t}` has invalid action name `{name}`"
                    )))
                }
                _ => {}
            }
        }

        let (names, labels): (Vec<Ident>, Vec<Action>) = transitions.into_iter().unzip();
        let mut net = PetriNet {
            pre: vec![Vec::new(); names.len()],
            post: vec![Vec::new(); names.len()],
            place_pre: vec![Vec::new(); places.len()],
            place_post: vec![Vec::new(); places.len()],
            places,
            transitions: names,
            labels,
            place_index,
            transition_index,
        };

        let mut seen = HashSet::new();
        for (a, b) in edges {
            let edge = match (net.node(&a), net.node(&b)) {
                (Some(Node::Place(p)), Some(Node::Transition(t))) => {
                    (Node::Place(p), Node::Transition(t))
                }
                (Some(Node::Transition(t)), Some(Node::Place(p))) => {
                    (Node::Transition(t), Node::Place(p))
                }
                (None, _) => {
                    return Err(Error::Input(format!("edge endpoint `{a}` is not declared")))
                }
                (_, None) => {
                    return Err(Error::Input(format!("edge endpoint `{b}` is not declared")))
                }
                _ => {
                    return Err(Error::Input(format!(
                        "edge `{a}` -> `{b}` must connect a place and a transition"
                    )))
                }
            };
            if !seen.insert(edge) {
                return Err(Error::Input(format!(
                    "duplicate edge `{a}` -> `{b}`; edges are unweighted"
                )));
            }
            match edge {
                (Node::Place(p), Node::Transition(t)) => {
                    net.pre[t].push(p);
                    net.place_post[p].push(t);
                }
                (Node::Transition(t), Node::Place(p)) => {
                    net.post[t].push(p);
                    net.place_pre[p].push(t);
                }
                _ => unreachable!(),
            }
        }
        for list in net
            .pre
            .iter_mut()
            .chain(net.post.iter_mut())
            .chain(net.place_pre.iter_mut())
            .chain(net.place_post.iter_mut())
        {
            list.sort_unstable();
        }
        Ok(net)
    }

    pub fn builder() -> NetBuilder {
        NetBuilder::default()
    }

    pub fn node(&self, id: &str) -> Option<Node> {
        if let Some(&p) = self.place_index.get(id) {
            Some(Node::Place(p))
        } else {
            self.transition_index.get(id).map(|&t| Node::Transition(t))
        }
    }

    pub fn places(&self) -> &[Ident] {
        &self.places
    }

    pub fn transitions(&self) -> &[Ident] {
        &self.transitions
    }

    pub fn place_index(&self, id: &str) -> Option<usize> {
        self.place_index.get(id).copied()
    }

    pub fn transition_index(&self, id: &str) -> Option<usize> {
        self.transition_index.get(id).copied()
    }

    pub fn label(&self, transition: usize) -> &Action {
        &self.labels[transition]
    }

    pub fn labels(&self) -> &[Action] {
        &self.labels
    }

    /// Places with an edge into `transition`.
    pub fn preset(&self, transition: usize) -> &[usize] {
        &self.pre[transition]
    }

    /// Places with an edge from `transition`.
    pub fn outputs(&self, transition: usize) -> &[usize] {
        &self.post[transition]
    }

    /// Transitions with an edge into `place`.
    pub fn producers(&self, place: usize) -> &[usize] {
        &self.place_pre[place]
    }

    /// `p•`: transitions with an edge from `place`.
    pub fn place_postset(&self, place: usize) -> &[usize] {
        &self.place_post[place]
    }

    /// `p•` by identifier.
    pub fn postset(&self, place: &str) -> Result<Vec<Ident>> {
        let p = self
            .place_index(place)
            .ok_or_else(|| Error::Input(format!("unknown place `{place}`")))?;
        Ok(self.place_post[p]
            .iter()
            .map(|&t| self.transitions[t].clone())
            .collect())
    }

    /// All edges as (source, target) identifier pairs, sorted.
    pub fn edges(&self) -> Vec<(Ident, Ident)> {
        let mut out = Vec::with_capacity(self.num_edges());
        for (t, pre) in self.pre.iter().enumerate() {
            for &p in pre {
                out.push((self.places[p].clone(), self.transitions[t].clone()));
            }
        }
        for (t, post) in self.post.iter().enumerate() {
            for &p in post {
                out.push((self.transitions[t].clone(), self.places[p].clone()));
            }
        }
        out.sort();
        out
    }

    pub fn num_edges(&self) -> usize {
        self.pre.iter().chain(self.post.iter()).map(Vec::len).sum()
    }

    /// `|P| + |T| + |F|`.
    pub fn size(&self) -> usize {
        self.places.len() + self.transitions.len() + self.num_edges()
    }

    /// Visible and internal actions used as labels.
    pub fn actions(&self) -> std::collections::BTreeSet<Action> {
        self.labels.iter().cloned().collect()
    }

    /// Dense token vector indexed like [`places`](Self::places).
    pub fn dense_marking(&self, m: &Marking) -> Result<Vec<u32>> {
        let mut v = vec![0; self.places.len()];
        for (p, n) in m.iter() {
            let i = self
                .place_index(p)
                .ok_or_else(|| Error::Input(format!("marking references unknown place `{p}`")))?;
            v[i] = n;
        }
        Ok(v)
    }

    pub fn marking_from_dense(&self, tokens: &[u32]) -> Marking {
        self.places
            .iter()
            .zip(tokens)
            .filter(|(_, &n)| n > 0)
            .map(|(p, &n)| (p.clone(), n))
            .collect()
    }

    fn enabled_dense(&self, tokens: &[u32], t: usize) -> bool {
        self.pre[t].iter().all(|&p| tokens[p] > 0)
    }

    fn fire_dense(&self, tokens: &[u32], t: usize) -> Result<Vec<u32>> {
        let mut next = tokens.to_vec();
        for &p in &self.pre[t] {
            next[p] -= 1;
        }
        for &p in &self.post[t] {
            next[p] = next[p].checked_add(1).ok_or_else(|| {
                Error::Unsupported(format!(
                    "token count overflow in place `{}`",
                    self.places[p]
                ))
            })?;
        }
        Ok(next)
    }

    /// Transitions whose every input place holds a token. Transitions with
    /// an empty preset are always enabled.
    pub fn enabled_transitions(&self, m: &Marking) -> Result<Vec<Ident>> {
        let tokens = self.dense_marking(m)?;
        Ok((0..self.transitions.len())
            .filter(|&t| self.enabled_dense(&tokens, t))
            .map(|t| self.transitions[t].clone())
            .collect())
    }

    /// Fires `transition`, returning its label and the successor marking.
    pub fn fire(&self, m: &Marking, transition: &str) -> Result<(Action, Marking)> {
        let t = self
            .transition_index(transition)
            .ok_or_else(|| Error::Input(format!("unknown transition `{transition}`")))?;
        let tokens = self.dense_marking(m)?;
        if !self.enabled_dense(&tokens, t) {
            return Err(Error::Precondition(format!(
                "transition `{transition}` is not enabled in {m}"
            )));
        }
        let next = self.fire_dense(&tokens, t)?;
        Ok((self.labels[t].clone(), self.marking_from_dense(&next)))
    }

    /// Breadth-first reachability graph from `m0`. States are numbered in
    /// discovery order and labelled with their marking.
    pub fn build_lts(&self, m0: &Marking, limits: &ExplorationLimits) -> Result<Lts> {
        let start = self.dense_marking(m0)?;
        let mut index: HashMap<Vec<u32>, usize> = HashMap::new();
        let mut states: Vec<Vec<u32>> = Vec::new();
        let mut edges = Vec::new();
        let mut queue = VecDeque::new();
        index.insert(start.clone(), 0);
        states.push(start);
        queue.push_back(0usize);
        let mut explored = 0;

        while let Some(s) = queue.pop_front() {
            explored += 1;
            for t in 0..self.transitions.len() {
                if !self.enabled_dense(&states[s], t) {
                    continue;
                }
                let next = self.fire_dense(&states[s], t)?;
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
                edges.push((s, self.labels[t].clone(), target));
            }
        }

        let labels = states
            .iter()
            .map(|v| self.marking_from_dense(v).to_string())
            .collect();
        Lts::new(labels, 0, edges, self.labels.iter().cloned())
    }
}

impl fmt::Display for PetriNet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "net with {} places, {} transitions, {} edges",
            self.places.len(),
            self.transitions.len(),
            self.num_edges()
        )
    }
}

/// Incremental construction helper, mostly for tests and fixtures.
#[derive(Debug, Default, Clone)]
pub struct NetBuilder {
    places: Vec<Ident>,
    transitions: Vec<(Ident, Action)>,
    edges: Vec<(Ident, Ident)>,
}

impl NetBuilder {
    pub fn place(mut self, id: &str) -> Self {
        self.places.push(Arc::from(id));
        self
    }

    pub fn places<'a>(mut self, ids: impl IntoIterator<Item = &'a str>) -> Self {
        self.places.extend(ids.into_iter().map(Arc::from));
        self
    }

    pub fn transition(mut self, id: &str, label: Action) -> Self {
        self.transitions.push((Arc::from(id), label));
        self
    }

    /// Adds `id` labelled with the visible action `label`, or tau for `"tau"`.
    pub fn labelled(self, id: &str, label: &str) -> Self {
        self.transition(id, Action::parse(label))
    }

    pub fn arc(mut self, from: &str, to: &str) -> Self {
        self.edges.push((Arc::from(from), Arc::from(to)));
        self
    }

    pub fn build(self) -> Result<PetriNet> {
        PetriNet::new(self.places, self.transitions, self.edges)
    }
}
