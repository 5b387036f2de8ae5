//! Encodings from labelled Petri nets into CCS, together with the machinery
//! needed to check them: net and CCS state-space generation, the
//! preset-reduction transformations, and strong/weak bisimulation checking.
//!
//! The usual pipeline is
//!
//! ```
//! use netccs::{encode, io, equivalence, ExplorationLimits};
//!
//! let (net, m0) = io::parse_net_text(
//!     "place p tokens 1\nplace q\ntransition t label a\narc p t\narc t q\n",
//! ).unwrap();
//! let enc = encode::encode_ccs_net(&net, &m0).unwrap();
//! let limits = ExplorationLimits::default();
//! let lhs = net.build_lts(&m0, &limits).unwrap();
//! let rhs = netccs::ccs::build_ccs_lts(&enc.process, &enc.defs, &limits).unwrap();
//! assert!(equivalence::strong_bisim(&lhs, &rhs).verdict);
//! ```

pub mod action;
pub mod ccs;
pub mod encode;
pub mod equivalence;
pub mod error;
pub mod io;
pub mod lts;
pub mod petri;
pub mod transform;

pub use action::{Action, Ident};
pub use error::{Error, ParseError, Result};
pub use lts::Lts;
pub use petri::{Marking, NetClassification, PetriNet};

/// Cap on the number of states any LTS construction may discover.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExplorationLimits {
    pub max_states: usize,
}

impl ExplorationLimits {
    pub const DEFAULT_MAX_STATES: usize = 100_000;

    pub fn new(max_states: usize) -> Self {
        assert!(max_states > 0, "state cap must be positive");
        Self { max_states }
    }
}

impl Default for ExplorationLimits {
    fn default() -> Self {
        Self::new(Self::DEFAULT_MAX_STATES)
    }
}
