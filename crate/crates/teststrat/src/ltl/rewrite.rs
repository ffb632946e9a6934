//! Negation normal form with light on-the-fly simplification.
//!
//! The result only uses `{True, False, Atom, Not(Atom), And, Or, Next,
//! Until, Release}`; `G a` becomes `false R a` and `F a` becomes
//! `true U a`. The simplifying constructors keep the automaton translation
//! input small; they preserve the language exactly.

use super::Formula;

fn s_and(a: Formula, b: Formula) -> Formula {
    match (&a, &b) {
        (Formula::False, _) | (_, Formula::False) => Formula::False,
        (Formula::True, _) => b,
        (_, Formula::True) => a,
        _ if a == b => a,
        _ => Formula::and(a, b),
    }
}

fn s_or(a: Formula, b: Formula) -> Formula {
    match (&a, &b) {
        (Formula::True, _) | (_, Formula::True) => Formula::True,
        (Formula::False, _) => b,
        (_, Formula::False) => a,
        _ if a == b => a,
        _ => Formula::or(a, b),
    }
}

fn s_next(a: Formula) -> Formula {
    match a {
        Formula::True => Formula::True,
        Formula::False => Formula::False,
        other => Formula::next(other),
    }
}

fn s_until(a: Formula, b: Formula) -> Formula {
    match (&a, &b) {
        (_, Formula::False) => Formula::False,
        (_, Formula::True) => Formula::True,
        (Formula::False, _) => b,
        // F F b = F b
        (Formula::True, Formula::Until(inner_a, _)) if **inner_a == Formula::True => b,
        _ if a == b => a,
        _ => Formula::until(a, b),
    }
}

fn s_release(a: Formula, b: Formula) -> Formula {
    match (&a, &b) {
        (_, Formula::True) => Formula::True,
        (_, Formula::False) => Formula::False,
        (Formula::True, _) => b,
        // G G b = G b
        (Formula::False, Formula::Release(inner_a, _)) if **inner_a == Formula::False => b,
        _ if a == b => a,
        _ => Formula::release(a, b),
    }
}

/// Negation normal form of `f`.
pub fn nnf(f: &Formula) -> Formula {
    pos(f)
}

fn pos(f: &Formula) -> Formula {
    match f {
        Formula::True => Formula::True,
        Formula::False => Formula::False,
        Formula::Atom(_) => f.clone(),
        Formula::Not(a) => neg(a),
        Formula::Next(a) => s_next(pos(a)),
        Formula::Eventually(a) => s_until(Formula::True, pos(a)),
        Formula::Always(a) => s_release(Formula::False, pos(a)),
        Formula::And(a, b) => s_and(pos(a), pos(b)),
        Formula::Or(a, b) => s_or(pos(a), pos(b)),
        Formula::Implies(a, b) => s_or(neg(a), pos(b)),
        Formula::Iff(a, b) => s_or(s_and(pos(a), pos(b)), s_and(neg(a), neg(b))),
        Formula::Until(a, b) => s_until(pos(a), pos(b)),
        Formula::Release(a, b) => s_release(pos(a), pos(b)),
    }
}

fn neg(f: &Formula) -> Formula {
    match f {
        Formula::True => Formula::False,
        Formula::False => Formula::True,
        Formula::Atom(_) => Formula::not(f.clone()),
        Formula::Not(a) => pos(a),
        Formula::Next(a) => s_next(neg(a)),
        Formula::Eventually(a) => s_release(Formula::False, neg(a)),
        Formula::Always(a) => s_until(Formula::True, neg(a)),
        Formula::And(a, b) => s_or(neg(a), neg(b)),
        Formula::Or(a, b) => s_and(neg(a), neg(b)),
        Formula::Implies(a, b) => s_and(pos(a), neg(b)),
        Formula::Iff(a, b) => s_or(s_and(pos(a), neg(b)), s_and(neg(a), pos(b))),
        Formula::Until(a, b) => s_release(neg(a), neg(b)),
        Formula::Release(a, b) => s_until(neg(a), neg(b)),
    }
}

/// True when `f` is in negation normal form over the base operators.
pub fn is_nnf(f: &Formula) -> bool {
    match f {
        Formula::True | Formula::False | Formula::Atom(_) => true,
        Formula::Not(a) => matches!(**a, Formula::Atom(_)),
        Formula::Next(a) => is_nnf(a),
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Until(a, b) | Formula::Release(a, b) => {
            is_nnf(a) && is_nnf(b)
        }
        Formula::Eventually(_) | Formula::Always(_) | Formula::Implies(..) | Formula::Iff(..) => {
            false
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signal::{SignalKind, SignalTable};

    #[test]
    fn nnf_is_in_normal_form() {
        let mut t = SignalTable::new();
        let a = Formula::atom(t.declare("a", SignalKind::SutInput).unwrap());
        let b = Formula::atom(t.declare("b", SignalKind::SutInput).unwrap());
        let f = Formula::not(Formula::implies(
            Formula::always(a.clone()),
            Formula::iff(b.clone(), Formula::eventually(a.clone())),
        ));
        let n = nnf(&f);
        assert!(is_nnf(&n), "not NNF: {n:?}");
    }

    #[test]
    fn double_negation_collapses() {
        let mut t = SignalTable::new();
        let a = Formula::atom(t.declare("a", SignalKind::SutInput).unwrap());
        let f = Formula::not(Formula::not(a.clone()));
        assert_eq!(nnf(&f), a);
    }
}
