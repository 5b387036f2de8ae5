//! Preset reduction: rewrites that split n-ary synchronisations into chains
//! of binary tau synchronisations through fresh buffer places.
//!
//! The iterative drivers work on a mutable [`NetEditor`] so a full run costs
//! time linear in the size of the net (up to ordered-set overhead).

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::sync::Arc;

use rand::seq::IteratorRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::action::{Action, Ident};
use crate::error::{Error, Result};
use crate::petri::{classify, Marking, PetriNet};

/// One application of a reduction step.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RewriteRecord {
    /// The transition whose preset was reduced. For group steps this is the
    /// first transition of the shared postset.
    pub transition: Ident,
    pub places: (Ident, Ident),
    pub fresh_transition: Ident,
    pub fresh_place: Ident,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct TransformTrace {
    pub records: Vec<RewriteRecord>,
}

impl TransformTrace {
    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }
}

/// How the iterative drivers resolve the nondeterministic choices.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum Selection {
    /// Smallest violating transition, smallest place pair.
    #[default]
    Lexicographic,
    /// Uniformly random transition and pair from a seeded generator.
    Seeded(u64),
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct TransformOptions {
    pub selection: Selection,
    /// Run even when the input is outside the class the correctness results
    /// cover.
    pub force: bool,
}

/// Mutable net representation used while rewriting.
struct NetEditor {
    place_names: Vec<Ident>,
    transition_names: Vec<Ident>,
    labels: Vec<Action>,
    // per transition
    pre: Vec<BTreeSet<usize>>,
    post: Vec<Vec<usize>>,
    // per place
    place_post: Vec<BTreeSet<usize>>,
    place_pre: Vec<Vec<usize>>,
    tokens: Vec<u32>,
    used: HashSet<Ident>,
    counter: usize,
}

impl NetEditor {
    fn new(net: &PetriNet, m0: &Marking) -> Result<Self> {
        let tokens = net.dense_marking(m0)?;
        let nt = net.transitions().len();
        let np = net.places().len();
        let used = net
            .places()
            .iter()
            .chain(net.transitions())
            .cloned()
            .collect();
        Ok(Self {
            place_names: net.places().to_vec(),
            transition_names: net.transitions().to_vec(),
            labels: net.labels().to_vec(),
            pre: (0..nt)
                .map(|t| net.preset(t).iter().copied().collect())
                .collect(),
            post: (0..nt).map(|t| net.outputs(t).to_vec()).collect(),
            place_post: (0..np)
                .map(|p| net.place_postset(p).iter().copied().collect())
                .collect(),
            place_pre: (0..np).map(|p| net.producers(p).to_vec()).collect(),
            tokens,
            used,
            counter: 0,
        })
    }

    /// Allocates `t⁺ = _t<k>` and `p⁺ = _p<k>` for the smallest unused `k`
    /// not below the run's counter.
    fn fresh_pair(&mut self) -> (usize, usize) {
        let (tp, pp) = loop {
            let tp: Ident = Arc::from(format!("_t{}", self.counter));
            let pp: Ident = Arc::from(format!("_p{}", self.counter));
            self.counter += 1;
            if !self.used.contains(&tp) && !self.used.contains(&pp) {
                break (tp, pp);
            }
        };
        self.used.insert(tp.clone());
        self.used.insert(pp.clone());

        let t = self.transition_names.len();
        self.transition_names.push(tp);
        self.labels.push(Action::Tau);
        self.pre.push(BTreeSet::new());
        self.post.push(Vec::new());
        let p = self.place_names.len();
        self.place_names.push(pp);
        self.place_post.push(BTreeSet::new());
        self.place_pre.push(Vec::new());
        self.tokens.push(0);
        (t, p)
    }

    fn add_input(&mut self, p: usize, t: usize) {
        self.pre[t].insert(p);
        self.place_post[p].insert(t);
    }

    fn remove_input(&mut self, p: usize, t: usize) {
        self.pre[t].remove(&p);
        self.place_post[p].remove(&t);
    }

    fn add_output(&mut self, t: usize, p: usize) {
        self.post[t].push(p);
        self.place_pre[p].push(t);
    }

    /// Preset bound of the loop guard: 2 for tau, 1 otherwise.
    fn violates(&self, t: usize) -> bool {
        self.pre[t].len() > if self.labels[t].is_tau() { 2 } else { 1 }
    }

    fn by_name(&self, names: &[Ident], id: &str, what: &str) -> Result<usize> {
        names
            .iter()
            .position(|n| n.as_ref() == id)
            .ok_or_else(|| Error::Input(format!("unknown {what} `{id}`")))
    }

    /// Two smallest-named (or random) places of `t`'s preset.
    fn pick_pair(&self, t: usize, rng: Option<&mut ChaCha8Rng>) -> (usize, usize) {
        let mut pre: Vec<usize> = self.pre[t].iter().copied().collect();
        match rng {
            None => {
                pre.sort_by(|&a, &b| self.place_names[a].cmp(&self.place_names[b]));
                (pre[0], pre[1])
            }
            Some(rng) => {
                let picked = pre.into_iter().choose_multiple(rng, 2);
                (picked[0], picked[1])
            }
        }
    }

    /// Transition preset reduction on `t*` with the given pair.
    fn preset_step(&mut self, t_star: usize, p1: usize, p2: usize) -> RewriteRecord {
        let (t_plus, p_plus) = self.fresh_pair();
        self.remove_input(p1, t_star);
        self.remove_input(p2, t_star);
        self.add_input(p1, t_plus);
        self.add_input(p2, t_plus);
        self.add_output(t_plus, p_plus);
        self.add_input(p_plus, t_star);
        self.record(t_star, p1, p2, t_plus, p_plus)
    }

    /// Group-choice preset reduction on two places with equal postsets.
    fn group_step(&mut self, p1: usize, p2: usize) -> RewriteRecord {
        let postset: Vec<usize> = self.place_post[p1].iter().copied().collect();
        let (t_plus, p_plus) = self.fresh_pair();
        for &t in &postset {
            self.remove_input(p1, t);
            self.remove_input(p2, t);
            self.add_input(p_plus, t);
        }
        self.add_input(p1, t_plus);
        self.add_input(p2, t_plus);
        self.add_output(t_plus, p_plus);
        let first = postset
            .iter()
            .copied()
            .min_by(|&a, &b| self.transition_names[a].cmp(&self.transition_names[b]))
            .expect("postset is nonempty");
        self.record(first, p1, p2, t_plus, p_plus)
    }

    fn record(
        &self,
        t: usize,
        p1: usize,
        p2: usize,
        t_plus: usize,
        p_plus: usize,
    ) -> RewriteRecord {
        RewriteRecord {
            transition: self.transition_names[t].clone(),
            places: (self.place_names[p1].clone(), self.place_names[p2].clone()),
            fresh_transition: self.transition_names[t_plus].clone(),
            fresh_place: self.place_names[p_plus].clone(),
        }
    }

    fn finish(self) -> Result<(PetriNet, Marking)> {
        let mut edges = Vec::new();
        for (t, pre) in self.pre.iter().enumerate() {
            for &p in pre {
                edges.push((
                    self.place_names[p].clone(),
                    self.transition_names[t].clone(),
                ));
            }
        }
        for (t, post) in self.post.iter().enumerate() {
            for &p in post {
                edges.push((
                    self.transition_names[t].clone(),
                    self.place_names[p].clone(),
                ));
            }
        }
        let marking = self
            .place_names
            .iter()
            .zip(&self.tokens)
            .map(|(p, &n)| (p.clone(), n))
            .collect();
        let net = PetriNet::new(
            self.place_names,
            self.transition_names.into_iter().zip(self.labels),
            edges,
        )?;
        Ok((net, marking))
    }
}

/// Violating transitions keyed by name, so the smallest is always first.
struct Worklist {
    set: BTreeMap<Ident, usize>,
}

impl Worklist {
    fn new(ed: &NetEditor) -> Self {
        let set = (0..ed.transition_names.len())
            .filter(|&t| ed.violates(t))
            .map(|t| (ed.transition_names[t].clone(), t))
            .collect();
        Self { set }
    }

    fn refresh(&mut self, ed: &NetEditor, t: usize) {
        if ed.violates(t) {
            self.set.insert(ed.transition_names[t].clone(), t);
        } else {
            self.set.remove(&ed.transition_names[t]);
        }
    }

    fn pick(&self, rng: Option<&mut ChaCha8Rng>) -> Option<usize> {
        match rng {
            None => self.set.values().next().copied(),
            Some(rng) => self.set.values().copied().choose(rng),
        }
    }
}

/// One transition preset reduction on `t_star`, using the two
/// smallest-named places of its preset.
pub fn reduce_preset_step(
    net: &PetriNet,
    m0: &Marking,
    t_star: &str,
) -> Result<(PetriNet, Marking, RewriteRecord)> {
    let mut ed = NetEditor::new(net, m0)?;
    let t = ed.by_name(&ed.transition_names, t_star, "transition")?;
    check_preset(&ed, t)?;
    let (p1, p2) = ed.pick_pair(t, None);
    let rec = ed.preset_step(t, p1, p2);
    let (net, m) = ed.finish()?;
    Ok((net, m, rec))
}

/// As [`reduce_preset_step`] but with an explicit pair `(p*, p**)` of
/// distinct places from the preset of `t_star`.
pub fn reduce_preset_step_with_pair(
    net: &PetriNet,
    m0: &Marking,
    t_star: &str,
    p_star: &str,
    p_star2: &str,
) -> Result<(PetriNet, Marking, RewriteRecord)> {
    let mut ed = NetEditor::new(net, m0)?;
    let t = ed.by_name(&ed.transition_names, t_star, "transition")?;
    check_preset(&ed, t)?;
    let p1 = ed.by_name(&ed.place_names, p_star, "place")?;
    let p2 = ed.by_name(&ed.place_names, p_star2, "place")?;
    if p1 == p2 || !ed.pre[t].contains(&p1) || !ed.pre[t].contains(&p2) {
        return Err(Error::Precondition(format!(
            "`{p_star}` and `{p_star2}` must be two distinct input places of `{t_star}`"
        )));
    }
    let rec = ed.preset_step(t, p1, p2);
    let (net, m) = ed.finish()?;
    Ok((net, m, rec))
}

fn check_preset(ed: &NetEditor, t: usize) -> Result<()> {
    if ed.pre[t].len() < 2 {
        return Err(Error::Precondition(format!(
            "transition `{}` has {} ingoing edges, at least two are required",
            ed.transition_names[t],
            ed.pre[t].len()
        )));
    }
    Ok(())
}

/// Iterated preset reduction until every tau transition has at most two
/// ingoing edges and every other transition at most one. Expects a
/// free-choice net unless `options.force` is set.
pub fn reduce_presets(
    net: &PetriNet,
    m0: &Marking,
    options: TransformOptions,
) -> Result<(PetriNet, Marking, TransformTrace)> {
    let class = classify(net);
    if !class.is_free_choice {
        if !options.force {
            return Err(Error::Precondition(format!(
                "preset reduction requires a free-choice net: {}",
                class.diagnostics.free_choice.join("; ")
            )));
        }
        log::warn!(
            "reducing presets of a non-free-choice net; weak bisimilarity is not guaranteed"
        );
    }
    let mut ed = NetEditor::new(net, m0)?;
    let mut rng = seeded(options.selection);
    let mut work = Worklist::new(&ed);
    let mut trace = TransformTrace::default();
    while let Some(t) = work.pick(rng.as_mut()) {
        let (p1, p2) = ed.pick_pair(t, rng.as_mut());
        let rec = ed.preset_step(t, p1, p2);
        trace.records.push(rec);
        work.refresh(&ed, t);
        // the fresh tau transition has exactly two inputs and never violates
    }
    let (net, m) = ed.finish()?;
    Ok((net, m, trace))
}

/// Group-choice preset reduction on `p_star` and `p_star2`, which must have
/// equal, nonempty postsets.
pub fn group_reduce_step(
    net: &PetriNet,
    m0: &Marking,
    p_star: &str,
    p_star2: &str,
) -> Result<(PetriNet, Marking, RewriteRecord)> {
    let mut ed = NetEditor::new(net, m0)?;
    let p1 = ed.by_name(&ed.place_names, p_star, "place")?;
    let p2 = ed.by_name(&ed.place_names, p_star2, "place")?;
    if p1 == p2 {
        return Err(Error::Precondition(
            "the two places must be distinct".into(),
        ));
    }
    if ed.place_post[p1].is_empty() || ed.place_post[p1] != ed.place_post[p2] {
        return Err(Error::Precondition(format!(
            "places `{p_star}` and `{p_star2}` must have equal nonempty postsets"
        )));
    }
    let rec = ed.group_step(p1, p2);
    let (net, m) = ed.finish()?;
    Ok((net, m, rec))
}

/// Iterated group-choice reduction until the net is a 2-tau-synchronisation
/// net. Expects a group-choice net unless `options.force` is set.
pub fn group_reduce(
    net: &PetriNet,
    m0: &Marking,
    options: TransformOptions,
) -> Result<(PetriNet, Marking, TransformTrace)> {
    let class = classify(net);
    if !class.is_group_choice {
        if !options.force {
            return Err(Error::Precondition(format!(
                "group reduction requires a group-choice net: {}",
                class.diagnostics.group_choice.join("; ")
            )));
        }
        log::warn!("reducing a non-group-choice net; weak bisimilarity is not guaranteed");
    }
    let mut ed = NetEditor::new(net, m0)?;
    let mut rng = seeded(options.selection);
    let mut work = Worklist::new(&ed);
    let mut trace = TransformTrace::default();
    while let Some(t) = work.pick(rng.as_mut()) {
        let (p1, p2) = ed.pick_pair(t, rng.as_mut());
        if ed.place_post[p1] != ed.place_post[p2] {
            return Err(Error::Precondition(format!(
                "places `{}` and `{}` feed `{}` but have different postsets",
                ed.place_names[p1], ed.place_names[p2], ed.transition_names[t]
            )));
        }
        let affected: Vec<usize> = ed.place_post[p1].iter().copied().collect();
        let rec = ed.group_step(p1, p2);
        trace.records.push(rec);
        for u in affected {
            work.refresh(&ed, u);
        }
    }
    let (net, m) = ed.finish()?;
    Ok((net, m, trace))
}

fn seeded(selection: Selection) -> Option<ChaCha8Rng> {
    match selection {
        Selection::Lexicographic => None,
        Selection::Seeded(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
    }
}
