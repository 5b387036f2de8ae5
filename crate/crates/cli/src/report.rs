use std::fmt::Write as _;
use std::time::Instant;

use netccs::encode::EncodingClass;
use netccs::equivalence::{Distinguisher, Side};
use netccs::NetClassification;
use serde::Serialize;
use sha2::{Digest, Sha256};

#[derive(Debug, Serialize)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

impl InputDigest {
    pub fn new(path: &str, bytes: &[u8]) -> Self {
        InputDigest {
            path: path.to_owned(),
            sha256: hex::encode(Sha256::digest(bytes)),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct TransformSummary {
    pub steps: usize,
    pub fresh_transitions: Vec<String>,
    pub fresh_places: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct EncodingStats {
    pub class: EncodingClass,
    pub equations: usize,
    pub restricted_names: usize,
    pub symbols: usize,
}

#[derive(Debug, Serialize)]
pub struct LtsStats {
    pub role: &'static str,
    pub states: usize,
    pub edges: usize,
}

#[derive(Debug, Default, Serialize)]
pub struct Verdicts {
    pub strong: Option<bool>,
    pub weak: Option<bool>,
    pub divergence_before: Option<bool>,
    pub divergence_after: Option<bool>,
}

#[derive(Debug, Serialize)]
pub struct Timing {
    pub phase: &'static str,
    pub ms: f64,
}

#[derive(Debug, Serialize)]
pub struct Failure {
    pub kind: &'static str,
    pub message: String,
}

/// Everything a command did, serialised as the `--format json` output.
#[derive(Debug, Default, Serialize)]
pub struct RunReport {
    pub command: Vec<String>,
    pub inputs: Vec<InputDigest>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classification: Option<NetClassification>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub transform: Option<TransformSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub encoding: Option<EncodingStats>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ccs: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub aut: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub lts: Vec<LtsStats>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdicts: Option<Verdicts>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub distinguisher: Option<Distinguisher>,
    pub timings: Vec<Timing>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<Failure>,
    pub exit_code: i32,
}

impl RunReport {
    /// Runs `f` and records its wall time under `phase`.
    pub fn timed<T>(&mut self, phase: &'static str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        self.timings.push(Timing {
            phase,
            ms: start.elapsed().as_secs_f64() * 1e3,
        });
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises") + "\n"
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for i in &self.inputs {
            writeln!(out, "input {} sha256 {}", i.path, i.sha256).unwrap();
        }
        if let Some(c) = &self.classification {
            let flags = [
                ("workflow", c.is_workflow, &c.diagnostics.workflow),
                ("free_choice", c.is_free_choice, &c.diagnostics.free_choice),
                (
                    "free_choice_workflow",
                    c.is_free_choice_workflow,
                    &c.diagnostics.workflow,
                ),
                ("ccs_net", c.is_ccs_net, &c.diagnostics.ccs_net),
                ("two_tau_sync", c.is_2tau_sync, &c.diagnostics.two_tau_sync),
                (
                    "group_choice",
                    c.is_group_choice,
                    &c.diagnostics.group_choice,
                ),
            ];
            for (name, flag, why) in flags {
                writeln!(out, "{name}: {flag}").unwrap();
                if !flag && name != "free_choice_workflow" {
                    for w in why {
                        writeln!(out, "  - {w}").unwrap();
                    }
                }
            }
        }
        if let Some(t) = &self.transform {
            writeln!(out, "transform steps: {}", t.steps).unwrap();
        }
        if let Some(e) = &self.encoding {
            writeln!(
                out,
                "encoding ({}): {} equations, {} restricted names, {} symbols",
                e.class, e.equations, e.restricted_names, e.symbols
            )
            .unwrap();
        }
        for l in &self.lts {
            writeln!(
                out,
                "{} lts: {} states, {} edges",
                l.role, l.states, l.edges
            )
            .unwrap();
        }
        if let Some(v) = &self.verdicts {
            let show = |b: Option<bool>| b.map_or("-".to_owned(), |b| b.to_string());
            writeln!(out, "strong: {}", show(v.strong)).unwrap();
            writeln!(out, "weak: {}", show(v.weak)).unwrap();
            writeln!(out, "divergence_before: {}", show(v.divergence_before)).unwrap();
            writeln!(out, "divergence_after: {}", show(v.divergence_after)).unwrap();
        }
        if let Some(d) = &self.distinguisher {
            let moves: Vec<String> = d
                .challenges
                .iter()
                .map(|c| format!("{}:{}", side(c.side), c.action))
                .collect();
            writeln!(
                out,
                "distinguisher: [{}], refused by {}",
                moves.join(", "),
                side(d.refusing_side)
            )
            .unwrap();
        }
        out
    }
}

fn side(s: Side) -> &'static str {
    match s {
        Side::Left => "left",
        Side::Right => "right",
    }
}
