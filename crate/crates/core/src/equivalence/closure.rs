use crate::action::Action;
use crate::lts::Lts;

/// Dense bit set over `0..n`.
#[derive(Clone)]
pub(crate) struct Bits(Vec<u64>);

impl Bits {
    pub fn new(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64)])
    }

    pub fn insert(&mut self, i: usize) -> bool {
        let (w, b) = (i / 64, 1u64 << (i % 64));
        let fresh = self.0[w] & b == 0;
        self.0[w] |= b;
        fresh
    }

    pub fn union_with(&mut self, other: &Bits) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a |= b;
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(w, &word)| {
            let mut word = word;
            std::iter::from_fn(move || {
                if word == 0 {
                    return None;
                }
                let b = word.trailing_zeros() as usize;
                word &= word - 1;
                Some(w * 64 + b)
            })
        })
    }
}

/// `tau_star[s]`: states reachable from `s` by zero or more tau steps.
pub(crate) fn tau_star(lts: &Lts) -> Vec<Bits> {
    let n = lts.num_states();
    let mut out = Vec::with_capacity(n);
    let mut stack = Vec::new();
    for s in 0..n {
        let mut seen = Bits::new(n);
        seen.insert(s);
        stack.push(s);
        while let Some(u) = stack.pop() {
            for (a, v) in lts.successors(u) {
                if a.is_tau() && seen.insert(*v) {
                    stack.push(*v);
                }
            }
        }
        out.push(seen);
    }
    out
}

/// The saturated system `⇒`: a tau-labelled edge `q → q'` whenever `q'` is
/// reachable by zero or more tau steps (so every state has a tau self-loop),
/// and an `a`-labelled edge whenever `q (τ*) a (τ*) q'`.
pub fn weak_closure(lts: &Lts) -> Lts {
    let n = lts.num_states();
    let stars = tau_star(lts);
    let mut edges: Vec<(usize, Action, usize)> = Vec::new();

    // after[u] = [(a, τ*-closure of every a-successor of u)]
    let after: Vec<Vec<(Action, Bits)>> = (0..n)
        .map(|u| {
            let mut per_action: Vec<(Action, Bits)> = Vec::new();
            for (a, v) in lts.successors(u) {
                if a.is_tau() {
                    continue;
                }
                match per_action.iter_mut().find(|(b, _)| b == a) {
                    Some((_, set)) => set.union_with(&stars[*v]),
                    None => per_action.push((a.clone(), stars[*v].clone())),
                }
            }
            per_action
        })
        .collect();

    for (s, star) in stars.iter().enumerate() {
        edges.extend(star.iter().map(|t| (s, Action::Tau, t)));
        let mut per_action: Vec<(Action, Bits)> = Vec::new();
        for u in star.iter() {
            for (a, set) in &after[u] {
                match per_action.iter_mut().find(|(b, _)| b == a) {
                    Some((_, acc)) => acc.union_with(set),
                    None => per_action.push((a.clone(), set.clone())),
                }
            }
        }
        for (a, set) in per_action {
            edges.extend(set.iter().map(|t| (s, a.clone(), t)));
        }
    }
    Lts::new(
        lts.state_labels().to_vec(),
        lts.initial(),
        edges,
        lts.alphabet().iter().cloned(),
    )
    .expect("closure preserves state indices")
}
