//! LTL abstract syntax, parsing, printing and rewriting.

mod parse;
mod print;
mod rewrite;

pub use parse::{parse, ParseError};
pub use rewrite::{is_nnf, nnf};

use crate::signal::{SignalId, SignalSet, SignalTable};

/// An LTL formula over the signals of a [`SignalTable`].
///
/// `Implies`, `Iff`, `Eventually`, `Always` and `False` are kept in the AST
/// as written; [`Formula::desugar`] reduces a formula to the base operators
/// and [`nnf`] additionally pushes negations to the atoms (introducing
/// `Release`).
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Formula {
    True,
    False,
    Atom(SignalId),
    Not(Box<Formula>),
    Next(Box<Formula>),
    Eventually(Box<Formula>),
    Always(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    Until(Box<Formula>, Box<Formula>),
    Release(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn atom(id: SignalId) -> Self {
        Formula::Atom(id)
    }

    pub fn not(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    pub fn next(f: Formula) -> Self {
        Formula::Next(Box::new(f))
    }

    pub fn eventually(f: Formula) -> Self {
        Formula::Eventually(Box::new(f))
    }

    pub fn always(f: Formula) -> Self {
        Formula::Always(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Self {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Self {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Self {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn iff(a: Formula, b: Formula) -> Self {
        Formula::Iff(Box::new(a), Box::new(b))
    }

    pub fn until(a: Formula, b: Formula) -> Self {
        Formula::Until(Box::new(a), Box::new(b))
    }

    pub fn release(a: Formula, b: Formula) -> Self {
        Formula::Release(Box::new(a), Box::new(b))
    }

    /// Conjunction of a list, `True` when empty.
    pub fn and_all<I: IntoIterator<Item = Formula>>(fs: I) -> Self {
        let mut iter = fs.into_iter();
        match iter.next() {
            None => Formula::True,
            Some(first) => iter.fold(first, Formula::and),
        }
    }

    /// The set of signals occurring in the formula.
    pub fn signals(&self) -> SignalSet {
        let mut set = SignalSet::empty();
        self.collect_signals(&mut set);
        set
    }

    fn collect_signals(&self, set: &mut SignalSet) {
        match self {
            Formula::True | Formula::False => {}
            Formula::Atom(id) => set.insert(*id),
            Formula::Not(a) | Formula::Next(a) | Formula::Eventually(a) | Formula::Always(a) => {
                a.collect_signals(set)
            }
            Formula::And(a, b)
            | Formula::Or(a, b)
            | Formula::Implies(a, b)
            | Formula::Iff(a, b)
            | Formula::Until(a, b)
            | Formula::Release(a, b) => {
                a.collect_signals(set);
                b.collect_signals(set);
            }
        }
    }

    /// Replaces every occurrence of the atom `target` by `replacement`.
    pub fn substitute(&self, target: SignalId, replacement: &Formula) -> Formula {
        match self {
            Formula::Atom(id) if *id == target => replacement.clone(),
            Formula::True | Formula::False | Formula::Atom(_) => self.clone(),
            Formula::Not(a) => Formula::not(a.substitute(target, replacement)),
            Formula::Next(a) => Formula::next(a.substitute(target, replacement)),
            Formula::Eventually(a) => Formula::eventually(a.substitute(target, replacement)),
            Formula::Always(a) => Formula::always(a.substitute(target, replacement)),
            Formula::And(a, b) => Formula::and(
                a.substitute(target, replacement),
                b.substitute(target, replacement),
            ),
            Formula::Or(a, b) => Formula::or(
                a.substitute(target, replacement),
                b.substitute(target, replacement),
            ),
            Formula::Implies(a, b) => Formula::implies(
                a.substitute(target, replacement),
                b.substitute(target, replacement),
            ),
            Formula::Iff(a, b) => Formula::iff(
                a.substitute(target, replacement),
                b.substitute(target, replacement),
            ),
            Formula::Until(a, b) => Formula::until(
                a.substitute(target, replacement),
                b.substitute(target, replacement),
            ),
            Formula::Release(a, b) => Formula::release(
                a.substitute(target, replacement),
                b.substitute(target, replacement),
            ),
        }
    }

    /// Simultaneous substitution of several atoms.
    pub fn substitute_all(&self, map: &[(SignalId, Formula)]) -> Formula {
        match self {
            Formula::Atom(id) => {
                for (target, repl) in map {
                    if id == target {
                        return repl.clone();
                    }
                }
                self.clone()
            }
            Formula::True | Formula::False => self.clone(),
            Formula::Not(a) => Formula::not(a.substitute_all(map)),
            Formula::Next(a) => Formula::next(a.substitute_all(map)),
            Formula::Eventually(a) => Formula::eventually(a.substitute_all(map)),
            Formula::Always(a) => Formula::always(a.substitute_all(map)),
            Formula::And(a, b) => Formula::and(a.substitute_all(map), b.substitute_all(map)),
            Formula::Or(a, b) => Formula::or(a.substitute_all(map), b.substitute_all(map)),
            Formula::Implies(a, b) => {
                Formula::implies(a.substitute_all(map), b.substitute_all(map))
            }
            Formula::Iff(a, b) => Formula::iff(a.substitute_all(map), b.substitute_all(map)),
            Formula::Until(a, b) => Formula::until(a.substitute_all(map), b.substitute_all(map)),
            Formula::Release(a, b) => {
                Formula::release(a.substitute_all(map), b.substitute_all(map))
            }
        }
    }

    /// Reduces to the base operators `{Atom, Not, Or, Next, Until, True}`
    /// via the usual abbreviations. `Release` is kept (it only arises from
    /// negation normal form, which is applied after desugaring).
    pub fn desugar(&self) -> Formula {
        match self {
            Formula::True | Formula::Atom(_) => self.clone(),
            Formula::False => Formula::not(Formula::True),
            Formula::Not(a) => Formula::not(a.desugar()),
            Formula::Next(a) => Formula::next(a.desugar()),
            // F a = true U a
            Formula::Eventually(a) => Formula::until(Formula::True, a.desugar()),
            // G a = !F !a
            Formula::Always(a) => Formula::not(Formula::until(
                Formula::True,
                Formula::not(a.desugar()),
            )),
            // a & b = !(!a | !b)
            Formula::And(a, b) => Formula::not(Formula::or(
                Formula::not(a.desugar()),
                Formula::not(b.desugar()),
            )),
            Formula::Or(a, b) => Formula::or(a.desugar(), b.desugar()),
            // a -> b = !a | b
            Formula::Implies(a, b) => Formula::or(Formula::not(a.desugar()), b.desugar()),
            // a <-> b = (a -> b) & (b -> a)
            Formula::Iff(a, b) => {
                let a = a.desugar();
                let b = b.desugar();
                let fwd = Formula::or(Formula::not(a.clone()), b.clone());
                let bwd = Formula::or(Formula::not(b), a);
                Formula::not(Formula::or(Formula::not(fwd), Formula::not(bwd)))
            }
            Formula::Until(a, b) => Formula::until(a.desugar(), b.desugar()),
            Formula::Release(a, b) => Formula::release(a.desugar(), b.desugar()),
        }
    }

    /// Splits a top-level conjunction into its conjuncts.
    pub fn conjuncts(&self) -> Vec<&Formula> {
        let mut out = Vec::new();
        fn walk<'a>(f: &'a Formula, out: &mut Vec<&'a Formula>) {
            match f {
                Formula::And(a, b) => {
                    walk(a, out);
                    walk(b, out);
                }
                other => out.push(other),
            }
        }
        walk(self, &mut out);
        out
    }

    /// Human-readable rendering; re-parses to an equal AST.
    pub fn display<'a>(&'a self, table: &'a SignalTable) -> print::DisplayFormula<'a> {
        print::DisplayFormula {
            formula: self,
            table,
        }
    }

    pub fn to_text(&self, table: &SignalTable) -> String {
        self.display(table).to_string()
    }
}
