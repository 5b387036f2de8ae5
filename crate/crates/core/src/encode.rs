//! Petri net to CCS encodings and the composed class pipelines.
//!
//! Every place `p` becomes a process name `X_p` whose body chooses among the
//! transitions `p` feeds; a token in `p` is one parallel copy of `X_p`.
//! Two-input tau transitions become a synchronisation on a fresh restricted
//! action `s_t`, and input-free transitions become self-respawning
//! generators `X_t`.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::Serialize;

use crate::action::{Action, Ident};
use crate::ccs::{DefiningEquations, Process, SeqProcess};
use crate::error::{Error, Result};
use crate::petri::{classify, Marking, PetriNet};
use crate::transform::{group_reduce, reduce_presets, TransformOptions, TransformTrace};

/// Output of an encoding: the top-level process, its equations, and which
/// CCS identifier each net element was mapped to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EncodingResult {
    pub process: Process,
    pub defs: DefiningEquations,
    /// Places and generator transitions map to process names; two-input tau
    /// transitions map to their synchronisation action.
    pub name_map: BTreeMap<Ident, Ident>,
}

impl EncodingResult {
    /// Names restricted at the top of [`process`](Self::process).
    pub fn restricted_names(&self) -> Vec<Ident> {
        let mut out = Vec::new();
        let mut q = &self.process;
        while let Process::Restrict(n, inner) = q {
            out.push(n.clone());
            q = inner;
        }
        out
    }

    /// Symbol count of the process plus all equations.
    pub fn symbol_count(&self) -> usize {
        self.process.size() + self.defs.size()
    }
}

/// `X_<id>`
pub fn process_name(id: &str) -> Ident {
    Arc::from(format!("X_{id}"))
}

/// Builds one equation per place. Transitions without inputs are skipped
/// here; the generator encoding adds them separately.
fn place_equations(
    net: &PetriNet,
) -> Result<(DefiningEquations, Vec<Ident>, BTreeMap<Ident, Ident>)> {
    let mut name_map = BTreeMap::new();
    let mut taken: HashSet<Ident> = net
        .labels()
        .iter()
        .filter_map(|a| a.name().cloned())
        .collect();

    // sync action per two-input transition
    let mut sync: BTreeMap<usize, Ident> = BTreeMap::new();
    for t in 0..net.transitions().len() {
        if net.preset(t).len() == 2 {
            let base = format!("s_{}", net.transitions()[t]);
            let mut candidate: Ident = Arc::from(base.as_str());
            let mut k = 1;
            while taken.contains(&candidate) {
                candidate = Arc::from(format!("{base}_{k}"));
                k += 1;
            }
            taken.insert(candidate.clone());
            name_map.insert(net.transitions()[t].clone(), candidate.clone());
            sync.insert(t, candidate);
        }
    }

    let outputs = |t: usize| {
        Process::par(
            net.outputs(t)
                .iter()
                .map(|&q| Process::Name(process_name(&net.places()[q]))),
        )
    };

    let mut defs = DefiningEquations::new();
    for (p, place) in net.places().iter().enumerate() {
        let mut branches = Vec::new();
        for &t in net.place_postset(p) {
            let branch = match net.preset(t) {
                [_] => SeqProcess::prefix(net.label(t).clone(), outputs(t)),
                &[first, second] => {
                    let s = &sync[&t];
                    // the larger place hosts the continuation
                    let host = if net.places()[first] > net.places()[second] {
                        first
                    } else {
                        second
                    };
                    if p == host {
                        SeqProcess::prefix(Action::Input(s.clone()), outputs(t))
                    } else {
                        SeqProcess::prefix(Action::Output(s.clone()), Process::nil())
                    }
                }
                pre => {
                    return Err(Error::Precondition(format!(
                        "transition `{}` has {} ingoing edges",
                        net.transitions()[t],
                        pre.len()
                    )))
                }
            };
            branches.push(branch);
        }
        let name = process_name(place);
        name_map.insert(place.clone(), name.clone());
        defs.define(&name, SeqProcess::sum(branches).into())?;
    }
    let restricted: Vec<Ident> = sync
        .into_values()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    Ok((defs, restricted, name_map))
}

fn initial_factors(net: &PetriNet, m0: &Marking) -> Result<Vec<Process>> {
    let tokens = net.dense_marking(m0)?;
    Ok(net
        .places()
        .iter()
        .zip(tokens)
        .map(|(p, n)| Process::Name(process_name(p)).power(n))
        .collect())
}

/// Encodes a CCS net (every transition has one input, or two inputs and a
/// tau label) into a strongly bisimilar process.
pub fn encode_ccs_net(net: &PetriNet, m0: &Marking) -> Result<EncodingResult> {
    let class = classify(net);
    if !class.is_ccs_net {
        return Err(Error::Precondition(format!(
            "not a CCS net: {}",
            class.diagnostics.ccs_net.join("; ")
        )));
    }
    let (defs, restricted, name_map) = place_equations(net)?;
    let process = Process::restrict(&restricted, Process::par(initial_factors(net, m0)?));
    Ok(EncodingResult {
        process,
        defs,
        name_map,
    })
}

/// Encodes a 2-tau-synchronisation net; input-free transitions become
/// generators `X_t = σ(t).(X_t | outputs)` present once in the top process.
pub fn encode_2tau(net: &PetriNet, m0: &Marking) -> Result<EncodingResult> {
    let class = classify(net);
    if !class.is_2tau_sync {
        return Err(Error::Precondition(format!(
            "not a 2-tau-synchronisation net: {}",
            class.diagnostics.two_tau_sync.join("; ")
        )));
    }
    let (mut defs, restricted, mut name_map) = place_equations(net)?;
    let mut factors = initial_factors(net, m0)?;
    for t in (0..net.transitions().len()).filter(|&t| net.preset(t).is_empty()) {
        let id = &net.transitions()[t];
        let name = process_name(id);
        let body = Process::prefix(
            net.label(t).clone(),
            Process::par(
                std::iter::once(Process::Name(name.clone())).chain(
                    net.outputs(t)
                        .iter()
                        .map(|&q| Process::Name(process_name(&net.places()[q]))),
                ),
            ),
        );
        defs.define(&name, body)?;
        name_map.insert(id.clone(), name.clone());
        factors.push(Process::Name(name));
    }
    let process = Process::restrict(&restricted, Process::par(factors));
    Ok(EncodingResult {
        process,
        defs,
        name_map,
    })
}

/// The net classes with an encoding pipeline, narrowest first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EncodingClass {
    Ccs,
    #[serde(rename = "2tau")]
    TwoTau,
    Fcwf,
    Fc,
    Gc,
}

impl EncodingClass {
    pub const ALL: [EncodingClass; 5] = [
        EncodingClass::Ccs,
        EncodingClass::TwoTau,
        EncodingClass::Fcwf,
        EncodingClass::Fc,
        EncodingClass::Gc,
    ];

    /// Whether the pipeline rewrites the net first (and so only promises
    /// weak bisimilarity).
    pub fn transforms(self) -> bool {
        !matches!(self, EncodingClass::Ccs | EncodingClass::TwoTau)
    }

    fn admits(self, net: &PetriNet) -> bool {
        let c = classify(net);
        match self {
            EncodingClass::Ccs => c.is_ccs_net,
            EncodingClass::TwoTau => c.is_2tau_sync,
            EncodingClass::Fcwf => c.is_free_choice_workflow,
            EncodingClass::Fc => c.is_free_choice,
            EncodingClass::Gc => c.is_group_choice,
        }
    }

    /// Narrowest class whose pipeline accepts `net`.
    pub fn narrowest(net: &PetriNet) -> Option<EncodingClass> {
        EncodingClass::ALL.into_iter().find(|c| c.admits(net))
    }
}

impl fmt::Display for EncodingClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EncodingClass::Ccs => "ccs",
            EncodingClass::TwoTau => "2tau",
            EncodingClass::Fcwf => "fcwf",
            EncodingClass::Fc => "fc",
            EncodingClass::Gc => "gc",
        })
    }
}

impl FromStr for EncodingClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        EncodingClass::ALL
            .into_iter()
            .find(|c| c.to_string() == s)
            .ok_or_else(|| Error::Input(format!("unknown net class `{s}`")))
    }
}

/// Encoding plus the intermediate transformed net.
#[derive(Debug, Clone)]
pub struct PipelineOutput {
    pub encoding: EncodingResult,
    pub trace: TransformTrace,
    pub net: PetriNet,
    pub marking: Marking,
}

fn check_class(net: &PetriNet, class: EncodingClass, force: bool) -> Result<()> {
    if class.admits(net) {
        return Ok(());
    }
    let c = classify(net);
    let reasons = match class {
        EncodingClass::Ccs => &c.diagnostics.ccs_net,
        EncodingClass::TwoTau => &c.diagnostics.two_tau_sync,
        EncodingClass::Fcwf => {
            if c.is_free_choice {
                &c.diagnostics.workflow
            } else {
                &c.diagnostics.free_choice
            }
        }
        EncodingClass::Fc => &c.diagnostics.free_choice,
        EncodingClass::Gc => &c.diagnostics.group_choice,
    };
    let msg = format!("net is not in class `{class}`: {}", reasons.join("; "));
    if force {
        log::warn!("{msg}; continuing because of force");
        Ok(())
    } else {
        Err(Error::Precondition(msg))
    }
}

/// Runs the pipeline for `class`: the class's transformation (if any)
/// followed by the matching encoding.
pub fn encode_as(
    class: EncodingClass,
    net: &PetriNet,
    m0: &Marking,
    options: TransformOptions,
) -> Result<PipelineOutput> {
    check_class(net, class, options.force)?;
    // the class check above already validated the transformation input
    let forced = TransformOptions {
        force: true,
        ..options
    };
    let (net2, m2, trace) = match class {
        EncodingClass::Ccs | EncodingClass::TwoTau => {
            (net.clone(), m0.clone(), TransformTrace::default())
        }
        EncodingClass::Fcwf | EncodingClass::Fc => reduce_presets(net, m0, forced)?,
        EncodingClass::Gc => group_reduce(net, m0, forced)?,
    };
    let encoding = match class {
        EncodingClass::Ccs | EncodingClass::Fcwf => encode_ccs_net(&net2, &m2)?,
        _ => encode_2tau(&net2, &m2)?,
    };
    Ok(PipelineOutput {
        encoding,
        trace,
        net: net2,
        marking: m2,
    })
}

/// Free-choice workflow net → CCS net → CCS.
pub fn encode_free_choice_workflow(
    net: &PetriNet,
    m0: &Marking,
    options: TransformOptions,
) -> Result<PipelineOutput> {
    encode_as(EncodingClass::Fcwf, net, m0, options)
}

/// Free-choice net → 2-tau-synchronisation net → CCS.
pub fn encode_free_choice(
    net: &PetriNet,
    m0: &Marking,
    options: TransformOptions,
) -> Result<PipelineOutput> {
    encode_as(EncodingClass::Fc, net, m0, options)
}

/// Group-choice net → 2-tau-synchronisation net → CCS.
pub fn encode_group_choice(
    net: &PetriNet,
    m0: &Marking,
    options: TransformOptions,
) -> Result<PipelineOutput> {
    encode_as(EncodingClass::Gc, net, m0, options)
}
