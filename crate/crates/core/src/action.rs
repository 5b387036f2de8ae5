use std::fmt;
use std::sync::Arc;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Shared, cheaply clonable identifier.
pub type Ident = Arc<str>;

/// Marker used in concrete syntax for co-actions.
pub const CO_MARKER: char = '\'';

/// Textual name of the internal action.
pub const TAU: &str = "tau";

/// A CCS action: the internal action, a visible action, or its co-action.
///
/// Petri net transitions are labelled with `Tau` or `Input` only; co-actions
/// exist solely on the CCS side.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Action {
    Tau,
    Input(Ident),
    Output(Ident),
}

impl Action {
    pub fn input(name: impl AsRef<str>) -> Self {
        Action::Input(Arc::from(name.as_ref()))
    }

    pub fn output(name: impl AsRef<str>) -> Self {
        Action::Output(Arc::from(name.as_ref()))
    }

    /// Interprets `tau` as the internal action, `'x` as a co-action and
    /// anything else as a visible action.
    pub fn parse(text: &str) -> Self {
        if text == TAU {
            Action::Tau
        } else if let Some(rest) = text.strip_prefix(CO_MARKER) {
            Action::output(rest)
        } else {
            Action::input(text)
        }
    }

    pub fn is_tau(&self) -> bool {
        matches!(self, Action::Tau)
    }

    /// Channel name of a visible action; `None` for tau.
    pub fn name(&self) -> Option<&Ident> {
        match self {
            Action::Tau => None,
            Action::Input(n) | Action::Output(n) => Some(n),
        }
    }

    /// The complementary action. Undefined for tau.
    pub fn co(&self) -> Result<Action> {
        match self {
            Action::Tau => Err(Error::Precondition(
                "the internal action has no co-action".into(),
            )),
            Action::Input(n) => Ok(Action::Output(n.clone())),
            Action::Output(n) => Ok(Action::Input(n.clone())),
        }
    }

    /// True when `self` and `other` can synchronise.
    pub fn complements(&self, other: &Action) -> bool {
        match (self, other) {
            (Action::Input(a), Action::Output(b)) | (Action::Output(a), Action::Input(b)) => a == b,
            _ => false,
        }
    }
}

impl fmt::Display for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Action::Tau => f.write_str(TAU),
            Action::Input(n) => f.write_str(n),
            Action::Output(n) => write!(f, "{CO_MARKER}{n}"),
        }
    }
}

impl Serialize for Action {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// `[A-Za-z][A-Za-z0-9_]*`
pub fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}
