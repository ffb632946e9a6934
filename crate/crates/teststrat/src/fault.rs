//! Fault kinds and fault occurrence frequencies.
//!
//! A fault model is a kind formula (what goes wrong) wrapped in a frequency
//! (how often it goes wrong). The four builtin frequencies are naturally
//! ordered: a strategy that reveals a fault occurring at least once also
//! reveals one occurring infinitely often, from some point on, or always.

use std::fmt;

use crate::ltl::Formula;
use crate::signal::SignalId;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FaultFrequency {
    /// `F k` - the fault occurs at least once.
    Once,
    /// `G F k` - the fault occurs infinitely often.
    InfinitelyOften,
    /// `F G k` - the fault occurs permanently from some point on.
    FromSomePoint,
    /// `G k` - the fault is permanent.
    Always,
    /// A user-supplied wrapper with a placeholder atom for the kind.
    Custom {
        template: Formula,
        hole: SignalId,
        label: String,
    },
}

impl FaultFrequency {
    /// Wraps a fault kind into the fault model formula.
    pub fn apply(&self, kind: &Formula) -> Formula {
        match self {
            FaultFrequency::Once => Formula::eventually(kind.clone()),
            FaultFrequency::InfinitelyOften => {
                Formula::always(Formula::eventually(kind.clone()))
            }
            FaultFrequency::FromSomePoint => Formula::eventually(Formula::always(kind.clone())),
            FaultFrequency::Always => Formula::always(kind.clone()),
            FaultFrequency::Custom { template, hole, .. } => template.substitute(*hole, kind),
        }
    }

    /// The builtin ladder, lowest (weakest assumption) first.
    pub fn ladder() -> Vec<FaultFrequency> {
        vec![
            FaultFrequency::Once,
            FaultFrequency::InfinitelyOften,
            FaultFrequency::FromSomePoint,
            FaultFrequency::Always,
        ]
    }

    /// Builtin frequencies at or above `self` in the natural order, in
    /// ascending order. Empty for custom frequencies.
    pub fn stronger_or_equal(&self) -> Vec<FaultFrequency> {
        let ladder = Self::ladder();
        match ladder.iter().position(|f| f == self) {
            Some(i) => ladder[i..].to_vec(),
            None => Vec::new(),
        }
    }
}

impl fmt::Display for FaultFrequency {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FaultFrequency::Once => write!(f, "F"),
            FaultFrequency::InfinitelyOften => write!(f, "GF"),
            FaultFrequency::FromSomePoint => write!(f, "FG"),
            FaultFrequency::Always => write!(f, "G"),
            FaultFrequency::Custom { label, .. } => write!(f, "custom:{label}"),
        }
    }
}

/// The builtin fault kinds the CLI exposes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BuiltinKind {
    StuckAt0,
    StuckAt1,
    BitFlip,
    DelayOne,
}

impl BuiltinKind {
    pub fn parse(name: &str) -> Option<Self> {
        match name {
            "stuck0" | "stuck_at_0" => Some(BuiltinKind::StuckAt0),
            "stuck1" | "stuck_at_1" => Some(BuiltinKind::StuckAt1),
            "bitflip" | "bit_flip" => Some(BuiltinKind::BitFlip),
            "delay" | "delay_one" => Some(BuiltinKind::DelayOne),
            _ => None,
        }
    }

    /// The kind formula for a fault at `target`, with `prime` naming the
    /// hidden correct-value copy.
    pub fn formula(self, target: SignalId, prime: SignalId) -> Formula {
        let t = Formula::atom(target);
        let p = Formula::atom(prime);
        match self {
            BuiltinKind::StuckAt0 => Formula::not(t),
            BuiltinKind::StuckAt1 => t,
            BuiltinKind::BitFlip => Formula::iff(t, Formula::not(p)),
            BuiltinKind::DelayOne => Formula::iff(p, Formula::next(t)),
        }
    }
}

impl fmt::Display for BuiltinKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BuiltinKind::StuckAt0 => write!(f, "stuck0"),
            BuiltinKind::StuckAt1 => write!(f, "stuck1"),
            BuiltinKind::BitFlip => write!(f, "bitflip"),
            BuiltinKind::DelayOne => write!(f, "delay"),
        }
    }
}

/// A complete fault model: kind, frequency and the targeted signal.
#[derive(Debug, Clone, PartialEq)]
pub struct FaultModel {
    pub kind: Formula,
    pub frequency: FaultFrequency,
    pub target: SignalId,
}

impl FaultModel {
    /// The fault model formula `frequency(kind)`.
    pub fn delta(&self) -> Formula {
        self.frequency.apply(&self.kind)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signal::{SignalKind, SignalTable};

    #[test]
    fn frequency_application() {
        let mut t = SignalTable::new();
        let o = t.declare("o", SignalKind::SutOutput).unwrap();
        let kind = Formula::not(Formula::atom(o));
        assert_eq!(
            FaultFrequency::FromSomePoint.apply(&kind),
            Formula::eventually(Formula::always(kind.clone()))
        );
        assert_eq!(
            FaultFrequency::InfinitelyOften.apply(&kind),
            Formula::always(Formula::eventually(kind.clone()))
        );
    }

    #[test]
    fn custom_frequency_fills_hole() {
        let mut t = SignalTable::new();
        let o = t.declare("o", SignalKind::SutOutput).unwrap();
        let hole = t.declare("hole", SignalKind::Hidden).unwrap();
        let freq = FaultFrequency::Custom {
            template: Formula::next(Formula::eventually(Formula::atom(hole))),
            hole,
            label: "XF".into(),
        };
        let kind = Formula::atom(o);
        assert_eq!(
            freq.apply(&kind),
            Formula::next(Formula::eventually(Formula::atom(o)))
        );
    }

    #[test]
    fn ladder_order() {
        let l = FaultFrequency::ladder();
        assert_eq!(l[0], FaultFrequency::Once);
        assert_eq!(l[3], FaultFrequency::Always);
        assert_eq!(
            FaultFrequency::FromSomePoint.stronger_or_equal(),
            vec![FaultFrequency::FromSomePoint, FaultFrequency::Always]
        );
    }
}
