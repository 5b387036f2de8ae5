//! CCS terms, defining equations and their transition semantics.

mod semantics;
mod state;
mod syntax;

pub use semantics::{build_ccs_lts, step};
pub use state::{canonicalize, CcsState, Factor};
pub use syntax::{DefiningEquations, Process, SeqProcess};
