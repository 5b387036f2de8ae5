use std::collections::BTreeSet;
use std::fmt;

use super::syntax::{Process, SeqProcess};
use crate::action::Ident;
use crate::error::{Error, Result};

/// One parallel component of a canonical state.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Factor {
    Name(Ident),
    /// Never `0`.
    Seq(SeqProcess),
}

impl Factor {
    pub fn to_process(&self) -> Process {
        match self {
            Factor::Name(n) => Process::Name(n.clone()),
            Factor::Seq(s) => Process::Seq(s.clone()),
        }
    }
}

/// Canonical representative of `(νs₁)…(νsₙ)(F₁ | … | Fₖ)`: a set of
/// restricted names over a sorted multiset of factors. The empty multiset
/// stands for `0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CcsState {
    restricted: BTreeSet<Ident>,
    factors: Vec<Factor>,
}

impl CcsState {
    pub(crate) fn from_parts(restricted: BTreeSet<Ident>, mut factors: Vec<Factor>) -> Self {
        factors.sort_unstable();
        Self {
            restricted,
            factors,
        }
    }

    pub fn restricted(&self) -> &BTreeSet<Ident> {
        &self.restricted
    }

    /// Factors in canonical order.
    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn is_nil(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn to_process(&self) -> Process {
        Process::restrict(
            self.restricted.iter(),
            Process::par(self.factors.iter().map(Factor::to_process)),
        )
    }
}

impl fmt::Display for CcsState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_process())
    }
}

/// Peels the outermost restriction chain and flattens the rest into sorted
/// factors. Restrictions anywhere else are rejected.
pub fn canonicalize(q: &Process) -> Result<CcsState> {
    let mut restricted = BTreeSet::new();
    let mut body = q;
    while let Process::Restrict(n, inner) = body {
        restricted.insert(n.clone());
        body = inner;
    }
    if body.contains_restriction() {
        return Err(nested_restriction());
    }
    let mut factors = Vec::new();
    flatten_into(body, &mut factors)?;
    Ok(CcsState::from_parts(restricted, factors))
}

pub(crate) fn nested_restriction() -> Error {
    Error::Unsupported(
        "restriction is only supported as an outermost prefix of the top-level process".into(),
    )
}

/// Appends the parallel components of `q`, dropping `0`.
pub(crate) fn flatten_into(q: &Process, out: &mut Vec<Factor>) -> Result<()> {
    match q {
        Process::Seq(SeqProcess::Nil) => {}
        Process::Seq(s) => out.push(Factor::Seq(s.clone())),
        Process::Name(n) => out.push(Factor::Name(n.clone())),
        Process::Par(items) => {
            for item in items {
                flatten_into(item, out)?;
            }
        }
        Process::Restrict(..) => return Err(nested_restriction()),
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::Action;

    #[test]
    fn nil_elimination_under_restriction() {
        let q = Process::restrict(
            ["s"],
            Process::Par(vec![Process::nil(), Process::name("X"), Process::nil()]),
        );
        let st = canonicalize(&q).unwrap();
        assert_eq!(
            st.restricted()
                .iter()
                .map(|s| s.as_ref())
                .collect::<Vec<_>>(),
            ["s"]
        );
        assert_eq!(st.factors(), &[Factor::Name("X".into())]);
    }

    #[test]
    fn flatten_and_sort() {
        let q = Process::Par(vec![
            Process::name("X"),
            Process::Par(vec![Process::name("Y"), Process::name("X")]),
        ]);
        let st = canonicalize(&q).unwrap();
        let names: Vec<String> = st
            .factors()
            .iter()
            .map(|f| f.to_process().to_string())
            .collect();
        assert_eq!(names, ["X", "X", "Y"]);
    }

    #[test]
    fn nested_restriction_is_rejected() {
        let q = Process::Par(vec![
            Process::name("X"),
            Process::restrict(["s"], Process::name("Y")),
        ]);
        assert!(matches!(canonicalize(&q), Err(Error::Unsupported(_))));
        let under_prefix =
            Process::prefix(Action::input("a"), Process::restrict(["s"], Process::nil()));
        assert!(canonicalize(&under_prefix).is_err());
    }

    #[test]
    fn nil_state() {
        let st = canonicalize(&Process::nil()).unwrap();
        assert!(st.is_nil());
        assert_eq!(st.to_string(), "0");
    }
}
