//! Shared validation for the net front ends, so every structural error can
//! point at the offending declaration.

use std::collections::BTreeMap;

use crate::action::{Action, Ident};
use crate::error::{ParseError, Result};
use crate::petri::{Marking, PetriNet};

use super::SourceSpan;

#[derive(Clone, Copy, PartialEq, Eq)]
enum Kind {
    Place,
    Transition,
}

#[derive(Default)]
pub(super) struct NetAssembler {
    nodes: BTreeMap<Ident, (Kind, SourceSpan)>,
    places: Vec<Ident>,
    transitions: Vec<(Ident, Action)>,
    arcs: Vec<(Ident, Ident, SourceSpan)>,
    marking: Marking,
}

impl NetAssembler {
    fn declare(&mut self, id: &str, kind: Kind, span: SourceSpan) -> Result<Ident, ParseError> {
        if let Some((_, first)) = self.nodes.get(id) {
            return Err(ParseError::new(
                format!("`{id}` is already declared on line {}", first.line),
                span,
            ));
        }
        let id: Ident = id.into();
        self.nodes.insert(id.clone(), (kind, span));
        Ok(id)
    }

    pub fn place(&mut self, id: &str, tokens: u32, span: SourceSpan) -> Result<(), ParseError> {
        let id = self.declare(id, Kind::Place, span)?;
        self.marking.set(&id, tokens);
        self.places.push(id);
        Ok(())
    }

    pub fn transition(
        &mut self,
        id: &str,
        label: Action,
        span: SourceSpan,
    ) -> Result<(), ParseError> {
        let id = self.declare(id, Kind::Transition, span)?;
        self.transitions.push((id, label));
        Ok(())
    }

    /// Arcs are resolved in [`finish`](Self::finish), so they may precede
    /// the declarations they mention.
    pub fn arc(&mut self, from: &str, to: &str, span: SourceSpan) {
        self.arcs.push((from.into(), to.into(), span));
    }

    pub fn finish(self) -> Result<(PetriNet, Marking)> {
        let mut seen = BTreeMap::new();
        for (from, to, span) in &self.arcs {
            let kind = |id: &Ident| {
                self.nodes.get(id).map(|(k, _)| *k).ok_or_else(|| {
                    ParseError::new(format!("arc endpoint `{id}` is not declared"), *span)
                })
            };
            if kind(from)? == kind(to)? {
                return Err(ParseError::new(
                    format!("arc `{from}` -> `{to}` connects two nodes of the same kind"),
                    *span,
                )
                .into());
            }
            if let Some(first) = seen.insert((from.clone(), to.clone()), *span) {
                return Err(ParseError::new(
                    format!(
                        "arc `{from}` -> `{to}` already given on line {}",
                        first.line
                    ),
                    *span,
                )
                .into());
            }
        }
        let net = PetriNet::new(
            self.places,
            self.transitions,
            self.arcs.into_iter().map(|(a, b, _)| (a, b)),
        )?;
        Ok((net, self.marking))
    }
}
