use rand::seq::IndexedRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use netccs::{Action, Lts, Marking, PetriNet};

use super::bounded_lts;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

const VISIBLE: [&str; 4] = ["a", "b", "c", "d"];

fn label(rng: &mut impl Rng, tau_weight: f64) -> &'static str {
    if rng.random_bool(tau_weight) {
        "tau"
    } else {
        VISIBLE.choose(rng).unwrap()
    }
}

fn sample_places(rng: &mut impl Rng, n: usize, max: usize) -> Vec<usize> {
    let k = rng.random_range(0..=max.min(n));
    rand::seq::index::sample(rng, n, k).into_vec()
}

fn tokens(rng: &mut impl Rng, places: usize, max_total: u32) -> Vec<u32> {
    let mut m = vec![0; places];
    for _ in 0..rng.random_range(max_total / 2..=max_total) {
        m[rng.random_range(0..places)] += 1;
    }
    m
}

struct Draft {
    places: Vec<String>,
    transitions: Vec<(String, String)>,
    arcs: Vec<(String, String)>,
    tokens: Vec<u32>,
}

impl Draft {
    fn new(places: usize) -> Self {
        Draft {
            places: (0..places).map(|i| format!("p{i}")).collect(),
            transitions: Vec::new(),
            arcs: Vec::new(),
            tokens: vec![0; places],
        }
    }

    fn transition(&mut self, label: &str, pre: &[usize], post: &[usize]) -> usize {
        let t = format!("t{}", self.transitions.len());
        for &p in pre {
            self.arcs.push((self.places[p].clone(), t.clone()));
        }
        for &p in post {
            self.arcs.push((t.clone(), self.places[p].clone()));
        }
        self.transitions.push((t, label.to_owned()));
        self.transitions.len() - 1
    }

    fn place(&mut self) -> usize {
        self.places.push(format!("p{}", self.places.len()));
        self.tokens.push(0);
        self.places.len() - 1
    }

    fn build(self) -> (PetriNet, Marking) {
        let mut b = PetriNet::builder().places(self.places.iter().map(String::as_str));
        for (t, l) in &self.transitions {
            b = b.labelled(t, l);
        }
        for (x, y) in &self.arcs {
            b = b.arc(x, y);
        }
        let net = b.build().expect("generated net is well formed");
        let m0 = self
            .places
            .iter()
            .zip(&self.tokens)
            .map(|(p, &n)| (p.as_str(), n))
            .collect();
        (net, m0)
    }
}

/// Resamples until the reachability graph stays under the campaign cap.
fn bounded(
    rng: &mut ChaCha8Rng,
    mut make: impl FnMut(&mut ChaCha8Rng) -> (PetriNet, Marking),
) -> (PetriNet, Marking, Lts) {
    loop {
        let (net, m0) = make(rng);
        if let Some(lts) = bounded_lts(&net, &m0) {
            return (net, m0, lts);
        }
    }
}

/// CCS net: at most 8 places and 8 transitions, every transition with one
/// input or two inputs and a tau label, at most 6 tokens.
pub fn ccs_net(rng: &mut ChaCha8Rng) -> (PetriNet, Marking, Lts) {
    bounded(rng, |rng| {
        let n = rng.random_range(1..=8);
        let mut d = Draft::new(n);
        for _ in 0..rng.random_range(1..=8) {
            let two = n >= 2 && rng.random_bool(0.35);
            let pre = rand::seq::index::sample(rng, n, if two { 2 } else { 1 }).into_vec();
            let l = if two { "tau" } else { label(rng, 0.3) };
            let post = sample_places(rng, n, 2);
            d.transition(l, &pre, &post);
        }
        d.tokens = tokens(rng, n, 6);
        if d.tokens.iter().all(|&k| k == 0) {
            d.tokens[0] = rng.random_range(1..=6);
        }
        d.build()
    })
}

/// Free-choice workflow net built from a random process tree over
/// sequence, exclusive choice, parallel split/join and loops.
pub fn free_choice_workflow(rng: &mut ChaCha8Rng) -> (PetriNet, Marking, Lts) {
    bounded(rng, |rng| {
        let mut d = Draft::new(2);
        d.places = vec!["i".into(), "o".into()];
        d.tokens[0] = 1;
        let mut budget = rng.random_range(2..=10);
        tree(rng, &mut d, 0, 1, 0, &mut budget);
        d.build()
    })
}

fn tree(
    rng: &mut ChaCha8Rng,
    d: &mut Draft,
    entry: usize,
    exit: usize,
    depth: u32,
    budget: &mut i32,
) {
    *budget -= 1;
    let leaf = depth >= 4 || *budget <= 0;
    match if leaf { 0 } else { rng.random_range(0..5) } {
        0 => {
            let l = label(rng, 0.25);
            d.transition(l, &[entry], &[exit]);
        }
        1 => {
            let mid = d.place();
            tree(rng, d, entry, mid, depth + 1, budget);
            tree(rng, d, mid, exit, depth + 1, budget);
        }
        2 => {
            for _ in 0..rng.random_range(2..=3) {
                tree(rng, d, entry, exit, depth + 1, budget);
            }
        }
        3 => {
            let k = rng.random_range(2..=4);
            let starts: Vec<usize> = (0..k).map(|_| d.place()).collect();
            let ends: Vec<usize> = (0..k).map(|_| d.place()).collect();
            let split = label(rng, 0.4);
            d.transition(split, &[entry], &starts);
            for (&s, &e) in starts.iter().zip(&ends) {
                tree(rng, d, s, e, depth + 1, budget);
            }
            let join = label(rng, 0.4);
            d.transition(join, &ends, &[exit]);
        }
        _ => {
            // entry -> l0 -body-> l1 -> exit, with a redo edge l1 -> l0
            let l0 = d.place();
            let l1 = d.place();
            let enter = label(rng, 0.6);
            d.transition(enter, &[entry], &[l0]);
            tree(rng, d, l0, l1, depth + 1, budget);
            let leave = label(rng, 0.6);
            d.transition(leave, &[l1], &[exit]);
            let redo = label(rng, 0.5);
            d.transition(redo, &[l1], &[l0]);
        }
    }
}

/// Free-choice net made of choice clusters (one place, several
/// transitions) and synchronisation clusters (several places, one
/// transition), plus input-free generator transitions. The LTS is not
/// checked against the cap here; generators may make it unbounded.
pub fn free_choice(rng: &mut ChaCha8Rng) -> (PetriNet, Marking) {
    let n = rng.random_range(1..=7);
    let mut d = Draft::new(n);
    let mut order: Vec<usize> = (0..n).collect();
    rand::seq::SliceRandom::shuffle(order.as_mut_slice(), rng);
    let mut rest = order.as_slice();
    while !rest.is_empty() {
        let take = if rest.len() >= 2 && rng.random_bool(0.35) {
            rng.random_range(2..=rest.len().min(3))
        } else {
            1
        };
        let (cluster, tail) = rest.split_at(take);
        rest = tail;
        if take == 1 {
            for _ in 0..rng.random_range(0..=3) {
                let l = label(rng, 0.3);
                let post = sample_places(rng, n, 2);
                d.transition(l, cluster, &post);
            }
        } else {
            let l = label(rng, 0.4);
            let post = sample_places(rng, n, 2);
            d.transition(l, cluster, &post);
        }
    }
    for _ in 0..rng.random_range(0..=2) {
        let l = label(rng, 0.4);
        let post = if rng.random_bool(0.6) {
            Vec::new()
        } else {
            sample_places(rng, n, 1)
        };
        d.transition(l, &[], &post);
    }
    d.tokens = tokens(rng, n, 4);
    d.build()
}

/// Group-choice net: places are partitioned into groups and every
/// transition consumes from exactly one whole group, so postsets are
/// either equal or disjoint. May contain generators.
pub fn group_choice(rng: &mut ChaCha8Rng) -> (PetriNet, Marking) {
    let n = rng.random_range(1..=7);
    let mut d = Draft::new(n);
    let mut order: Vec<usize> = (0..n).collect();
    rand::seq::SliceRandom::shuffle(order.as_mut_slice(), rng);
    let mut rest = order.as_slice();
    while !rest.is_empty() {
        let take = rng.random_range(1..=rest.len().min(3));
        let (group, tail) = rest.split_at(take);
        rest = tail;
        for _ in 0..rng.random_range(0..=3) {
            let l = label(rng, 0.35);
            let post = sample_places(rng, n, 2);
            d.transition(l, group, &post);
        }
    }
    if rng.random_bool(0.3) {
        let l = label(rng, 0.4);
        let post = if rng.random_bool(0.6) {
            Vec::new()
        } else {
            sample_places(rng, n, 1)
        };
        d.transition(l, &[], &post);
    }
    d.tokens = tokens(rng, n, 4);
    d.build()
}

/// Unconstrained net: every place/transition pair is connected with a
/// small probability in either direction.
pub fn arbitrary_net(rng: &mut ChaCha8Rng) -> PetriNet {
    let n = rng.random_range(0..=6);
    let m = rng.random_range(0..=6);
    let density = rng.random_range(0.1..0.6);
    let mut d = Draft::new(n);
    for _ in 0..m {
        let pre: Vec<usize> = (0..n).filter(|_| rng.random_bool(density)).collect();
        let post: Vec<usize> = (0..n).filter(|_| rng.random_bool(density)).collect();
        let l = label(rng, 0.3);
        d.transition(l, &pre, &post);
    }
    d.build().0
}

/// Chain of `n` blocks; each block splits three ways and joins with a
/// visible three-input transition.
pub fn chain_workflow(n: usize) -> (PetriNet, Marking) {
    let mut d = Draft::new(1);
    d.places[0] = "i".into();
    d.tokens[0] = 1;
    let mut cur = 0;
    for k in 0..n {
        let mids: Vec<usize> = (0..3).map(|_| d.place()).collect();
        let ends: Vec<usize> = (0..3).map(|_| d.place()).collect();
        d.transition("tau", &[cur], &mids);
        for (j, (&a, &b)) in mids.iter().zip(&ends).enumerate() {
            d.transition(VISIBLE[j], &[a], &[b]);
        }
        let next = d.place();
        d.transition(if k % 2 == 0 { "d" } else { "tau" }, &ends, &[next]);
        cur = next;
    }
    d.build()
}

/// Random LTS with `n` states and edge density `p` over {tau, a, b}.
pub fn lts(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Lts {
    let acts = [Action::Tau, Action::input("a"), Action::input("b")];
    let mut edges = Vec::new();
    for s in 0..n {
        for t in 0..n {
            for a in &acts {
                if rng.random_bool(p) {
                    edges.push((s, a.clone(), t));
                }
            }
        }
    }
    Lts::unlabelled(n, rng.random_range(0..n), edges).unwrap()
}

/// Pair of LTSs with at most `max_total` states in total. A third are
/// unrelated, a third are a copy with a duplicated state (strongly
/// bisimilar), and a third insert a tau step (weakly bisimilar); the last
/// two are sometimes mutated afterwards.
pub fn lts_pair(rng: &mut ChaCha8Rng, max_total: usize) -> (Lts, Lts) {
    let half = max_total / 2;
    match rng.random_range(0..3) {
        0 => {
            let n1 = rng.random_range(1..=half);
            let n2 = rng.random_range(1..=max_total - n1);
            let p = rng.random_range(0.05..0.3);
            (lts(rng, n1, p), lts(rng, n2, p))
        }
        kind => {
            let n = rng.random_range(1..half);
            let p = rng.random_range(0.05..0.3);
            let left = lts(rng, n, p);
            let mut edges: Vec<(usize, Action, usize)> =
                left.edges().map(|(s, a, t)| (s, a.clone(), t)).collect();
            let extra = n;
            let victim = rng.random_range(0..n);
            if kind == 1 {
                // `extra` copies the outgoing edges of `victim`, and some
                // edges into `victim` are redirected to it
                let out: Vec<_> = left.successors(victim).to_vec();
                for (a, t) in out {
                    edges.push((extra, a, if t == victim { extra } else { t }));
                }
                for e in edges.iter_mut() {
                    if e.2 == victim && rng.random_bool(0.5) {
                        e.2 = extra;
                    }
                }
            } else {
                // split an edge s -a-> t into s -tau-> extra -a-> t
                if let Some(i) = (!edges.is_empty()).then(|| rng.random_range(0..edges.len())) {
                    let (s, a, t) = edges[i].clone();
                    edges[i] = (s, Action::Tau, extra);
                    edges.push((extra, a, t));
                }
            }
            if rng.random_bool(0.3) {
                let a = [Action::Tau, Action::input("a"), Action::input("b")]
                    .choose(rng)
                    .unwrap()
                    .clone();
                edges.push((rng.random_range(0..=n), a, rng.random_range(0..=n)));
            }
            let right = Lts::unlabelled(n + 1, left.initial(), edges).unwrap();
            (left, right)
        }
    }
}
