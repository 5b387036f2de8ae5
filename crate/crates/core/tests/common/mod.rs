//! Random generators for the net classes and an independent bisimulation
//! oracle, shared by the integration tests and the acceptance runner.
#![allow(dead_code)]

pub mod gen;
pub mod oracle;

use netccs::{Error, ExplorationLimits, Lts, Marking, PetriNet};

/// State cap used by the randomized campaigns.
pub const CAMPAIGN_CAP: usize = 2000;

/// Cap for state spaces derived from a generated net (rewritten nets,
/// encodings), which pass through extra intermediate states.
pub const DERIVED_CAP: usize = CAMPAIGN_CAP * 20;

/// Builds the net's LTS, or `None` when it exceeds [`CAMPAIGN_CAP`].
pub fn bounded_lts(net: &PetriNet, m0: &Marking) -> Option<Lts> {
    lts_within(net, m0, CAMPAIGN_CAP)
}

/// LTS of a rewritten net, capped at [`DERIVED_CAP`].
pub fn derived_lts(net: &PetriNet, m0: &Marking) -> Lts {
    lts_within(net, m0, DERIVED_CAP).expect("derived state space within its cap")
}

fn lts_within(net: &PetriNet, m0: &Marking, cap: usize) -> Option<Lts> {
    match net.build_lts(m0, &ExplorationLimits::new(cap)) {
        Ok(lts) => Some(lts),
        Err(Error::ResourceLimit { .. }) => None,
        Err(e) => panic!("unexpected error building the LTS: {e}"),
    }
}

pub fn fixture(name: &str) -> String {
    let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

pub fn fixture_names(ext: &str) -> Vec<String> {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures");
    let mut names: Vec<String> = std::fs::read_dir(dir)
        .unwrap()
        .filter_map(|e| e.ok()?.file_name().into_string().ok())
        .filter(|n| n.ends_with(ext))
        .collect();
    names.sort();
    names
}
