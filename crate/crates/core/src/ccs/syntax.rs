use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use crate::action::{Action, Ident};
use crate::error::{Error, Result};

/// Sequential processes: `0`, `μ.Q`, and sums of sequential processes.
///
/// Sums are kept flat (no `Sum` directly inside a `Sum`) and always have at
/// least two branches; use [`SeqProcess::sum`] to build them.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SeqProcess {
    Nil,
    Prefix(Action, Box<Process>),
    Sum(Vec<SeqProcess>),
}

/// Processes: sequential terms, parallel composition, restriction and
/// process names.
///
/// Parallel compositions are kept flat and free of `0` factors (unless the
/// whole composition is `0`); use [`Process::par`] to build them.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Process {
    Seq(SeqProcess),
    Par(Vec<Process>),
    Restrict(Ident, Box<Process>),
    Name(Ident),
}

impl SeqProcess {
    pub fn prefix(action: Action, continuation: Process) -> Self {
        SeqProcess::Prefix(action, Box::new(continuation))
    }

    /// Flattening n-ary choice. Zero branches give `0`, one branch is
    /// returned as is.
    pub fn sum(branches: impl IntoIterator<Item = SeqProcess>) -> Self {
        let mut flat = Vec::new();
        for b in branches {
            match b {
                SeqProcess::Sum(inner) => flat.extend(inner),
                other => flat.push(other),
            }
        }
        match flat.len() {
            0 => SeqProcess::Nil,
            1 => flat.pop().unwrap(),
            _ => SeqProcess::Sum(flat),
        }
    }

    pub fn is_nil(&self) -> bool {
        matches!(self, SeqProcess::Nil)
    }

    fn size(&self) -> usize {
        match self {
            SeqProcess::Nil => 1,
            SeqProcess::Prefix(_, q) => 1 + q.size(),
            SeqProcess::Sum(bs) => bs.iter().map(SeqProcess::size).sum::<usize>() + bs.len() - 1,
        }
    }

    fn visit<'a>(&'a self, f: &mut impl FnMut(&'a Process)) {
        match self {
            SeqProcess::Nil => {}
            SeqProcess::Prefix(_, q) => q.visit(f),
            SeqProcess::Sum(bs) => bs.iter().for_each(|b| b.visit(f)),
        }
    }

    fn visit_actions<'a>(&'a self, f: &mut impl FnMut(&'a Action)) {
        match self {
            SeqProcess::Nil => {}
            SeqProcess::Prefix(a, q) => {
                f(a);
                q.visit_actions(f);
            }
            SeqProcess::Sum(bs) => bs.iter().for_each(|b| b.visit_actions(f)),
        }
    }
}

impl Process {
    pub fn nil() -> Self {
        Process::Seq(SeqProcess::Nil)
    }

    pub fn name(id: impl AsRef<str>) -> Self {
        Process::Name(Arc::from(id.as_ref()))
    }

    pub fn prefix(action: Action, continuation: Process) -> Self {
        Process::Seq(SeqProcess::prefix(action, continuation))
    }

    /// Flattening parallel composition that drops `0` factors.
    pub fn par(factors: impl IntoIterator<Item = Process>) -> Self {
        let mut flat = Vec::new();
        for f in factors {
            match f {
                Process::Par(inner) => flat.extend(inner),
                Process::Seq(SeqProcess::Nil) => {}
                other => flat.push(other),
            }
        }
        match flat.len() {
            0 => Process::nil(),
            1 => flat.pop().unwrap(),
            _ => Process::Par(flat),
        }
    }

    /// `n` parallel copies of `self`; `0` copies is `0`.
    pub fn power(&self, n: u32) -> Self {
        Process::par((0..n).map(|_| self.clone()))
    }

    /// Wraps `body` in restrictions, outermost first.
    pub fn restrict<I>(names: I, body: Process) -> Self
    where
        I: IntoIterator,
        I::IntoIter: DoubleEndedIterator,
        I::Item: AsRef<str>,
    {
        names.into_iter().rev().fold(body, |acc, n| {
            Process::Restrict(Arc::from(n.as_ref()), Box::new(acc))
        })
    }

    pub fn is_nil(&self) -> bool {
        matches!(self, Process::Seq(SeqProcess::Nil))
    }

    /// Symbol count: one per `0`, action prefix, name and restriction, plus
    /// one per binary operator occurrence.
    pub fn size(&self) -> usize {
        match self {
            Process::Seq(s) => s.size(),
            Process::Par(items) => items.iter().map(Process::size).sum::<usize>() + items.len() - 1,
            Process::Restrict(_, q) => 1 + q.size(),
            Process::Name(_) => 1,
        }
    }

    /// Pre-order walk over every subprocess, including `self`.
    fn visit<'a>(&'a self, f: &mut impl FnMut(&'a Process)) {
        f(self);
        match self {
            Process::Seq(s) => s.visit(f),
            Process::Par(items) => items.iter().for_each(|q| q.visit(f)),
            Process::Restrict(_, q) => q.visit(f),
            Process::Name(_) => {}
        }
    }

    fn visit_actions<'a>(&'a self, f: &mut impl FnMut(&'a Action)) {
        match self {
            Process::Seq(s) => s.visit_actions(f),
            Process::Par(items) => items.iter().for_each(|q| q.visit_actions(f)),
            Process::Restrict(_, q) => q.visit_actions(f),
            Process::Name(_) => {}
        }
    }

    /// Process names referenced anywhere in the term.
    pub fn referenced_names(&self) -> BTreeSet<Ident> {
        let mut out = BTreeSet::new();
        self.visit(&mut |q| {
            if let Process::Name(n) = q {
                out.insert(n.clone());
            }
        });
        out
    }

    /// Every action prefix occurring in the term.
    pub fn actions(&self) -> Vec<&Action> {
        let mut out = Vec::new();
        self.visit_actions(&mut |a| out.push(a));
        out
    }

    pub fn contains_restriction(&self) -> bool {
        let mut found = false;
        self.visit(&mut |q| found |= matches!(q, Process::Restrict(..)));
        found
    }
}

impl From<SeqProcess> for Process {
    fn from(s: SeqProcess) -> Self {
        Process::Seq(s)
    }
}

/// The name → body mapping used by the `Cons` rule.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DefiningEquations {
    bodies: BTreeMap<Ident, Process>,
}

impl DefiningEquations {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `name = body`. Bodies must be restriction-free and names may be
    /// defined only once.
    pub fn define(&mut self, name: impl AsRef<str>, body: Process) -> Result<()> {
        let name: Ident = Arc::from(name.as_ref());
        if body.contains_restriction() {
            return Err(Error::Unsupported(format!(
                "finite-net violation: the definition of `{name}` contains a restriction"
            )));
        }
        if self.bodies.contains_key(&name) {
            return Err(Error::Input(format!("`{name}` is defined twice")));
        }
        self.bodies.insert(name, body);
        Ok(())
    }

    pub fn get(&self, name: &str) -> Option<&Process> {
        self.bodies.get(name)
    }

    /// Equations in name order.
    pub fn iter(&self) -> impl Iterator<Item = (&Ident, &Process)> + '_ {
        self.bodies.iter()
    }

    pub fn len(&self) -> usize {
        self.bodies.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bodies.is_empty()
    }

    /// Total symbol count: one for each defined name plus its body.
    pub fn size(&self) -> usize {
        self.bodies.values().map(|b| 1 + b.size()).sum()
    }

    /// Checks that every name used in `top` or in a body is defined.
    pub fn check_closed(&self, top: &Process) -> Result<()> {
        let mut used = top.referenced_names();
        for body in self.bodies.values() {
            used.extend(body.referenced_names());
        }
        match used.into_iter().find(|n| !self.bodies.contains_key(n)) {
            Some(n) => Err(Error::Input(format!("process name `{n}` is not defined"))),
            None => Ok(()),
        }
    }
}

// Printing. Precedence, loosest first: restriction, parallel, sum, prefix.

impl fmt::Display for SeqProcess {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeqProcess::Nil => f.write_str("0"),
            SeqProcess::Prefix(a, q) => {
                write!(f, "{a}.")?;
                write_primary(f, q)
            }
            SeqProcess::Sum(bs) => {
                for (i, b) in bs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" + ")?;
                    }
                    write!(f, "{b}")?;
                }
                Ok(())
            }
        }
    }
}

fn write_primary(f: &mut fmt::Formatter<'_>, q: &Process) -> fmt::Result {
    match q {
        Process::Seq(SeqProcess::Nil | SeqProcess::Prefix(..)) | Process::Name(_) => {
            write!(f, "{q}")
        }
        _ => write!(f, "({q})"),
    }
}

impl fmt::Display for Process {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Process::Seq(s) => write!(f, "{s}"),
            Process::Name(n) => f.write_str(n),
            Process::Par(items) => {
                for (i, q) in items.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" | ")?;
                    }
                    if matches!(q, Process::Restrict(..)) {
                        write!(f, "({q})")?;
                    } else {
                        write!(f, "{q}")?;
                    }
                }
                Ok(())
            }
            Process::Restrict(..) => {
                let mut names = Vec::new();
                let mut body = self;
                while let Process::Restrict(n, inner) = body {
                    names.push(n.as_ref());
                    body = inner;
                }
                write!(f, "new {} in ", names.join(", "))?;
                write_primary(f, body)
            }
        }
    }
}
