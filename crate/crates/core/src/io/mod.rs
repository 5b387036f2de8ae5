//! Textual formats: `.pn` nets, a PNML subset, CCS programs and Aldebaran
//! `.aut` transition systems.

mod assemble;
mod aut;
mod ccs_text;
mod net_text;
mod pnml;
mod span;

pub use aut::{read_aut, write_aut};
pub use ccs_text::{parse_ccs, print_ccs, print_program};
pub use net_text::{parse_net_text, print_net_text};
pub use pnml::parse_pnml;
pub use span::SourceSpan;
