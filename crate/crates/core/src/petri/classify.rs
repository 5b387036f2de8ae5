//! Structural class membership: workflow, free-choice, CCS, 2-tau
//! synchronisation and group-choice nets.

use std::collections::BTreeMap;

use serde::Serialize;

use super::PetriNet;
use crate::action::Ident;
use crate::error::{Error, Result};

/// Class flags plus, for every failed flag, human-readable reasons.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NetClassification {
    pub is_workflow: bool,
    pub is_free_choice: bool,
    pub is_free_choice_workflow: bool,
    pub is_ccs_net: bool,
    pub is_2tau_sync: bool,
    pub is_group_choice: bool,
    pub diagnostics: ClassDiagnostics,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ClassDiagnostics {
    pub workflow: Vec<String>,
    pub free_choice: Vec<String>,
    pub ccs_net: Vec<String>,
    pub two_tau_sync: Vec<String>,
    pub group_choice: Vec<String>,
}

pub fn classify(net: &PetriNet) -> NetClassification {
    let mut diagnostics = ClassDiagnostics::default();

    let is_workflow = check_workflow(net, &mut diagnostics.workflow);

    let choice = unique_choice_violations(net);
    let sync = unique_synchronisation_violations(net);
    let is_free_choice = choice.is_empty() && sync.is_empty();
    diagnostics.free_choice.extend(choice);
    diagnostics.free_choice.extend(sync);

    let (is_ccs_net, is_2tau_sync) =
        check_presets(net, &mut diagnostics.ccs_net, &mut diagnostics.two_tau_sync);

    let group = group_choice_violation(net);
    if let Some((p, q)) = &group {
        diagnostics.group_choice.push(format!(
            "places `{p}` and `{q}` have partially overlapping postsets"
        ));
    }

    NetClassification {
        is_workflow,
        is_free_choice,
        is_free_choice_workflow: is_workflow && is_free_choice,
        is_ccs_net,
        is_2tau_sync,
        is_group_choice: group.is_none(),
        diagnostics,
    }
}

/// Unique source `i`, unique sink `o`, and every node on some `i → o` path.
fn check_workflow(net: &PetriNet, diag: &mut Vec<String>) -> bool {
    let np = net.places().len();
    let nt = net.transitions().len();
    if np == 0 {
        diag.push("net has no places".into());
        return false;
    }
    let sources: Vec<usize> = (0..np).filter(|&p| net.producers(p).is_empty()).collect();
    let sinks: Vec<usize> = (0..np)
        .filter(|&p| net.place_postset(p).is_empty())
        .collect();
    let names = |v: &[usize]| {
        v.iter()
            .map(|&p| format!("`{}`", net.places()[p]))
            .collect::<Vec<_>>()
            .join(", ")
    };
    let mut ok = true;
    if sources.len() != 1 {
        diag.push(format!(
            "expected exactly one input place without ingoing edges, found {} [{}]",
            sources.len(),
            names(&sources)
        ));
        ok = false;
    }
    if sinks.len() != 1 {
        diag.push(format!(
            "expected exactly one output place without outgoing edges, found {} [{}]",
            sinks.len(),
            names(&sinks)
        ));
        ok = false;
    }
    if !ok {
        return false;
    }
    let (i, o) = (sources[0], sinks[0]);
    if i == o {
        diag.push(format!(
            "degenerate workflow net: input and output place are both `{}`",
            net.places()[i]
        ));
    }

    // Node ids: places 0..np, transitions np..np+nt.
    let forward = |v: usize| -> Vec<usize> {
        if v < np {
            net.place_postset(v).iter().map(|&t| np + t).collect()
        } else {
            net.outputs(v - np).to_vec()
        }
    };
    let backward = |v: usize| -> Vec<usize> {
        if v < np {
            net.producers(v).iter().map(|&t| np + t).collect()
        } else {
            net.preset(v - np).to_vec()
        }
    };
    let from_i = reach(np + nt, i, forward);
    let to_o = reach(np + nt, o, backward);
    let mut stray = Vec::new();
    for v in 0..np + nt {
        if !(from_i[v] && to_o[v]) {
            stray.push(if v < np {
                net.places()[v].clone()
            } else {
                net.transitions()[v - np].clone()
            });
        }
    }
    if !stray.is_empty() {
        diag.push(format!(
            "nodes not on any path from `{}` to `{}`: {}",
            net.places()[i],
            net.places()[o],
            stray
                .iter()
                .map(|s| format!("`{s}`"))
                .collect::<Vec<_>>()
                .join(", ")
        ));
        return false;
    }
    true
}

fn reach(n: usize, start: usize, next: impl Fn(usize) -> Vec<usize>) -> Vec<bool> {
    let mut seen = vec![false; n];
    let mut stack = vec![start];
    seen[start] = true;
    while let Some(v) = stack.pop() {
        for w in next(v) {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen
}

fn unique_choice_violations(net: &PetriNet) -> Vec<String> {
    let mut out = Vec::new();
    for p in 0..net.places().len() {
        let post = net.place_postset(p);
        if post.len() <= 1 {
            continue;
        }
        for &t in post {
            if net.preset(t).len() != 1 {
                out.push(format!(
                    "unique choice: place `{}` chooses between {} transitions but `{}` has {} ingoing edges",
                    net.places()[p],
                    post.len(),
                    net.transitions()[t],
                    net.preset(t).len()
                ));
            }
        }
    }
    out
}

fn unique_synchronisation_violations(net: &PetriNet) -> Vec<String> {
    let mut out = Vec::new();
    for t in 0..net.transitions().len() {
        let pre = net.preset(t);
        if pre.len() <= 1 {
            continue;
        }
        for &p in pre {
            if net.place_postset(p).len() != 1 {
                out.push(format!(
                    "unique synchronisation: transition `{}` synchronises {} places but `{}` has {} outgoing edges",
                    net.transitions()[t],
                    pre.len(),
                    net.places()[p],
                    net.place_postset(p).len()
                ));
            }
        }
    }
    out
}

/// Every place with more than one outgoing edge only feeds transitions with
/// exactly one ingoing edge.
pub fn satisfies_unique_choice(net: &PetriNet) -> bool {
    (0..net.places().len()).all(|p| {
        let post = net.place_postset(p);
        post.len() <= 1 || post.iter().all(|&t| net.preset(t).len() == 1)
    })
}

/// Every transition with more than one ingoing edge is only fed by places
/// with exactly one outgoing edge.
pub fn satisfies_unique_synchronisation(net: &PetriNet) -> bool {
    (0..net.transitions().len()).all(|t| {
        let pre = net.preset(t);
        pre.len() <= 1 || pre.iter().all(|&p| net.place_postset(p).len() == 1)
    })
}

fn check_presets(net: &PetriNet, ccs: &mut Vec<String>, two_tau: &mut Vec<String>) -> (bool, bool) {
    for t in 0..net.transitions().len() {
        let name = &net.transitions()[t];
        let n = net.preset(t).len();
        let tau = net.label(t).is_tau();
        match n {
            0 => ccs.push(format!("transition `{name}` has no ingoing edges")),
            1 => {}
            2 if tau => {}
            2 => {
                let msg = format!(
                    "transition `{name}` has two ingoing edges but is labelled `{}`",
                    net.label(t)
                );
                ccs.push(msg.clone());
                two_tau.push(msg);
            }
            _ => {
                let msg = format!("transition `{name}` has {n} ingoing edges");
                ccs.push(msg.clone());
                two_tau.push(msg);
            }
        }
    }
    (ccs.is_empty(), two_tau.is_empty())
}

/// Two places sharing a transition in their postsets must have equal
/// postsets; returns the first pair that does not.
fn group_choice_violation(net: &PetriNet) -> Option<(Ident, Ident)> {
    for t in 0..net.transitions().len() {
        let pre = net.preset(t);
        let Some((&first, rest)) = pre.split_first() else {
            continue;
        };
        for &q in rest {
            if net.place_postset(first) != net.place_postset(q) {
                return Some((net.places()[first].clone(), net.places()[q].clone()));
            }
        }
    }
    None
}

/// Splits the places of a group-choice net into blocks of equal postset.
/// Places with an empty postset each get a singleton block. Blocks are
/// ordered by their smallest member.
pub fn place_groups(net: &PetriNet) -> Result<Vec<Vec<Ident>>> {
    if let Some((p, q)) = group_choice_violation(net) {
        return Err(Error::Precondition(format!(
            "not a group-choice net: places `{p}` and `{q}` have partially overlapping postsets"
        )));
    }
    let mut by_postset: BTreeMap<&[usize], Vec<usize>> = BTreeMap::new();
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for p in 0..net.places().len() {
        let post = net.place_postset(p);
        if post.is_empty() {
            blocks.push(vec![p]);
        } else {
            by_postset.entry(post).or_default().push(p);
        }
    }
    blocks.extend(by_postset.into_values());
    blocks.sort();
    Ok(blocks
        .into_iter()
        .map(|b| b.into_iter().map(|p| net.places()[p].clone()).collect())
        .collect())
}
