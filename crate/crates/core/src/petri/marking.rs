use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::action::Ident;

/// Token counts per place. Places absent from the map hold zero tokens; the
/// map never stores zero entries, so equal markings compare and hash equal.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Marking {
    tokens: BTreeMap<Ident, u32>,
}

impl Marking {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, place: &str) -> u32 {
        self.tokens.get(place).copied().unwrap_or(0)
    }

    pub fn set(&mut self, place: impl AsRef<str>, count: u32) {
        let place = place.as_ref();
        if count == 0 {
            self.tokens.remove(place);
        } else {
            self.tokens.insert(Arc::from(place), count);
        }
    }

    pub fn with(mut self, place: impl AsRef<str>, count: u32) -> Self {
        self.set(place, count);
        self
    }

    /// Places with a nonzero count, in identifier order.
    pub fn iter(&self) -> impl Iterator<Item = (&Ident, u32)> + '_ {
        self.tokens.iter().map(|(p, n)| (p, *n))
    }

    pub fn total(&self) -> u64 {
        self.tokens.values().map(|&n| u64::from(n)).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }
}

impl<S: AsRef<str>> FromIterator<(S, u32)> for Marking {
    fn from_iter<I: IntoIterator<Item = (S, u32)>>(iter: I) -> Self {
        let mut m = Marking::new();
        for (p, n) in iter {
            m.set(p, n);
        }
        m
    }
}

impl fmt::Display for Marking {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (p, n)) in self.tokens.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{p}:{n}")?;
        }
        f.write_str("}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_entries_are_dropped() {
        let a = Marking::new().with("p", 0).with("q", 2);
        let b = Marking::new().with("q", 2);
        assert_eq!(a, b);
        assert_eq!(a.get("p"), 0);
        assert_eq!(a.to_string(), "{q:2}");
    }
}
