//! Signal declarations, signal sets and alphabet letters.
//!
//! A `SignalTable` is the universe every formula, trace and machine in a
//! given context lives in. Signals are interned to small indices so that a
//! letter (the valuation of all signals at one time step) fits into a single
//! `u64` bitmask.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

/// Suffix used when deriving the hidden "correct value" copy of a signal.
pub const PRIME_SUFFIX: &str = "_prime";

/// Hard cap so letters fit into a `u64` bitmask.
pub const MAX_SIGNALS: usize = 63;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignalId(pub u32);

impl SignalId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SignalKind {
    SutInput,
    SutOutput,
    Hidden,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SignalError {
    #[error("signal `{0}` is declared twice")]
    Duplicate(String),
    #[error("signal universe exceeds {MAX_SIGNALS} signals")]
    TooMany,
    #[error("unknown signal `{0}`")]
    Unknown(String),
    #[error("signal `{name}` has kind {actual:?}, expected {expected:?}")]
    WrongKind {
        name: String,
        expected: SignalKind,
        actual: SignalKind,
    },
}

/// Interning table mapping signal names to ids. Append-only, so ids stay
/// valid across extensions (e.g. when a hidden prime copy is added).
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SignalTable {
    names: Vec<String>,
    kinds: Vec<SignalKind>,
    index: HashMap<String, SignalId>,
}

impl SignalTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn declare(&mut self, name: &str, kind: SignalKind) -> Result<SignalId, SignalError> {
        if self.index.contains_key(name) {
            return Err(SignalError::Duplicate(name.to_string()));
        }
        if self.names.len() >= MAX_SIGNALS {
            return Err(SignalError::TooMany);
        }
        let id = SignalId(self.names.len() as u32);
        self.names.push(name.to_string());
        self.kinds.push(kind);
        self.index.insert(name.to_string(), id);
        Ok(id)
    }

    pub fn lookup(&self, name: &str) -> Option<SignalId> {
        self.index.get(name).copied()
    }

    pub fn require(&self, name: &str) -> Result<SignalId, SignalError> {
        self.lookup(name)
            .ok_or_else(|| SignalError::Unknown(name.to_string()))
    }

    pub fn name(&self, id: SignalId) -> &str {
        &self.names[id.index()]
    }

    pub fn kind(&self, id: SignalId) -> SignalKind {
        self.kinds[id.index()]
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn ids(&self) -> impl Iterator<Item = SignalId> + '_ {
        (0..self.names.len()).map(|i| SignalId(i as u32))
    }

    pub fn of_kind(&self, kind: SignalKind) -> SignalSet {
        let mut set = SignalSet::empty();
        for id in self.ids() {
            if self.kind(id) == kind {
                set.insert(id);
            }
        }
        set
    }

    /// The prime (hidden correct-value) name derived from `id`.
    pub fn prime_name(&self, id: SignalId) -> String {
        format!("{}{}", self.name(id), PRIME_SUFFIX)
    }
}

/// A set of signals, as a bitmask over a `SignalTable`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct SignalSet(pub u64);

impl SignalSet {
    pub const fn empty() -> Self {
        SignalSet(0)
    }

    pub fn singleton(id: SignalId) -> Self {
        SignalSet(1 << id.0)
    }

    pub fn from_ids<I: IntoIterator<Item = SignalId>>(ids: I) -> Self {
        let mut s = Self::empty();
        for id in ids {
            s.insert(id);
        }
        s
    }

    #[inline]
    pub fn insert(&mut self, id: SignalId) {
        self.0 |= 1 << id.0;
    }

    #[inline]
    pub fn remove(&mut self, id: SignalId) {
        self.0 &= !(1 << id.0);
    }

    #[inline]
    pub fn contains(self, id: SignalId) -> bool {
        self.0 & (1 << id.0) != 0
    }

    #[inline]
    pub fn union(self, other: Self) -> Self {
        SignalSet(self.0 | other.0)
    }

    #[inline]
    pub fn intersect(self, other: Self) -> Self {
        SignalSet(self.0 & other.0)
    }

    #[inline]
    pub fn minus(self, other: Self) -> Self {
        SignalSet(self.0 & !other.0)
    }

    #[inline]
    pub fn is_subset_of(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn iter(self) -> impl Iterator<Item = SignalId> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros();
                bits &= bits - 1;
                Some(SignalId(i))
            }
        })
    }
}

impl fmt::Debug for SignalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter().map(|s| s.0)).finish()
    }
}

impl FromIterator<SignalId> for SignalSet {
    fn from_iter<T: IntoIterator<Item = SignalId>>(iter: T) -> Self {
        Self::from_ids(iter)
    }
}

/// One alphabet letter: the set of signals that are true at a time step.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Letter(pub u64);

impl Letter {
    pub const fn empty() -> Self {
        Letter(0)
    }

    pub fn from_ids<I: IntoIterator<Item = SignalId>>(ids: I) -> Self {
        Letter(SignalSet::from_ids(ids).0)
    }

    #[inline]
    pub fn contains(self, id: SignalId) -> bool {
        self.0 & (1 << id.0) != 0
    }

    #[inline]
    pub fn with(self, id: SignalId, value: bool) -> Self {
        if value {
            Letter(self.0 | (1 << id.0))
        } else {
            Letter(self.0 & !(1 << id.0))
        }
    }

    /// Projection onto a signal set.
    #[inline]
    pub fn restrict(self, set: SignalSet) -> Self {
        Letter(self.0 & set.0)
    }

    #[inline]
    pub fn union(self, other: Letter) -> Self {
        Letter(self.0 | other.0)
    }

    pub fn as_set(self) -> SignalSet {
        SignalSet(self.0)
    }

    /// Render as `{a, !b, c}` over the given signals, in table order.
    pub fn display(self, signals: SignalSet, table: &SignalTable) -> String {
        let mut parts = Vec::new();
        for id in signals.iter() {
            if self.contains(id) {
                parts.push(table.name(id).to_string());
            } else {
                parts.push(format!("!{}", table.name(id)));
            }
        }
        format!("{{{}}}", parts.join(", "))
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Letter({:#b})", self.0)
    }
}

/// Enumerates all letters over a signal set, in a fixed order.
pub fn letters_over(set: SignalSet) -> impl Iterator<Item = Letter> {
    let ids: Vec<SignalId> = set.iter().collect();
    let n = ids.len();
    (0u64..(1 << n)).map(move |bits| {
        let mut letter = Letter::empty();
        for (pos, id) in ids.iter().enumerate() {
            if bits & (1 << pos) != 0 {
                letter = letter.with(*id, true);
            }
        }
        letter
    })
}

/// Index of a letter within `letters_over(set)`. Inverse of that enumeration.
pub fn letter_index(letter: Letter, set: SignalSet) -> usize {
    let mut idx = 0usize;
    for (pos, id) in set.iter().enumerate() {
        if letter.contains(id) {
            idx |= 1 << pos;
        }
    }
    idx
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn declare_and_lookup() {
        let mut t = SignalTable::new();
        let a = t.declare("a", SignalKind::SutInput).unwrap();
        let b = t.declare("b", SignalKind::SutOutput).unwrap();
        assert_eq!(t.lookup("a"), Some(a));
        assert_eq!(t.name(b), "b");
        assert_eq!(t.kind(a), SignalKind::SutInput);
        assert!(matches!(
            t.declare("a", SignalKind::Hidden),
            Err(SignalError::Duplicate(_))
        ));
    }

    #[test]
    fn letter_enumeration_round_trips() {
        let mut t = SignalTable::new();
        let a = t.declare("a", SignalKind::SutInput).unwrap();
        let _b = t.declare("b", SignalKind::SutInput).unwrap();
        let c = t.declare("c", SignalKind::SutOutput).unwrap();
        let set = SignalSet::from_ids([a, c]);
        let all: Vec<Letter> = letters_over(set).collect();
        assert_eq!(all.len(), 4);
        for (i, l) in all.iter().enumerate() {
            assert_eq!(letter_index(*l, set), i);
            assert!(l.as_set().is_subset_of(set));
        }
    }

    #[test]
    fn set_operations() {
        let a = SignalId(0);
        let b = SignalId(5);
        let s = SignalSet::from_ids([a, b]);
        assert!(s.contains(a) && s.contains(b));
        assert_eq!(s.len(), 2);
        assert_eq!(s.minus(SignalSet::singleton(a)), SignalSet::singleton(b));
        assert!(SignalSet::singleton(a).is_subset_of(s));
    }
}
