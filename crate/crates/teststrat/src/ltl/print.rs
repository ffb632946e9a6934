//! Formula rendering with minimal parentheses.
//!
//! Binding levels mirror the parser so that `parse(print(f)) == f`.

use std::fmt;

use super::Formula;
use crate::signal::SignalTable;

pub struct DisplayFormula<'a> {
    pub(super) formula: &'a Formula,
    pub(super) table: &'a SignalTable,
}

// Higher binds tighter. Matches the parser's precedence table.
fn level(f: &Formula) -> u8 {
    match f {
        Formula::Iff(..) => 0,
        Formula::Implies(..) => 1,
        Formula::Or(..) => 2,
        Formula::And(..) => 3,
        Formula::Until(..) | Formula::Release(..) => 4,
        Formula::Not(..) | Formula::Next(..) | Formula::Eventually(..) | Formula::Always(..) => 5,
        Formula::True | Formula::False | Formula::Atom(..) => 6,
    }
}

fn write_formula(
    f: &Formula,
    table: &SignalTable,
    min_level: u8,
    out: &mut fmt::Formatter<'_>,
) -> fmt::Result {
    let lv = level(f);
    let parens = lv < min_level;
    if parens {
        write!(out, "(")?;
    }
    match f {
        Formula::True => write!(out, "true")?,
        Formula::False => write!(out, "false")?,
        Formula::Atom(id) => write!(out, "{}", table.name(*id))?,
        Formula::Not(a) => {
            write!(out, "!")?;
            write_formula(a, table, 5, out)?;
        }
        Formula::Next(a) => {
            write!(out, "X ")?;
            write_formula(a, table, 5, out)?;
        }
        Formula::Eventually(a) => {
            write!(out, "F ")?;
            write_formula(a, table, 5, out)?;
        }
        Formula::Always(a) => {
            write!(out, "G ")?;
            write_formula(a, table, 5, out)?;
        }
        Formula::Until(a, b) => {
            write_formula(a, table, 5, out)?;
            write!(out, " U ")?;
            write_formula(b, table, 4, out)?;
        }
        Formula::Release(a, b) => {
            write_formula(a, table, 5, out)?;
            write!(out, " R ")?;
            write_formula(b, table, 4, out)?;
        }
        Formula::And(a, b) => {
            write_formula(a, table, 3, out)?;
            write!(out, " & ")?;
            write_formula(b, table, 4, out)?;
        }
        Formula::Or(a, b) => {
            write_formula(a, table, 2, out)?;
            write!(out, " | ")?;
            write_formula(b, table, 3, out)?;
        }
        Formula::Implies(a, b) => {
            write_formula(a, table, 2, out)?;
            write!(out, " -> ")?;
            write_formula(b, table, 1, out)?;
        }
        Formula::Iff(a, b) => {
            write_formula(a, table, 1, out)?;
            write!(out, " <-> ")?;
            write_formula(b, table, 0, out)?;
        }
    }
    if parens {
        write!(out, ")")?;
    }
    Ok(())
}

impl fmt::Display for DisplayFormula<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_formula(self.formula, self.table, 0, f)
    }
}

#[cfg(test)]
mod tests {
    use crate::ltl::{parse, Formula};
    use crate::signal::{SignalKind, SignalTable};

    #[test]
    fn prints_with_minimal_parens() {
        let mut t = SignalTable::new();
        let a = Formula::atom(t.declare("a", SignalKind::SutInput).unwrap());
        let b = Formula::atom(t.declare("b", SignalKind::SutInput).unwrap());
        let c = Formula::atom(t.declare("c", SignalKind::SutInput).unwrap());

        let f = Formula::implies(
            Formula::until(a.clone(), b.clone()),
            Formula::always(c.clone()),
        );
        assert_eq!(f.to_text(&t), "a U b -> G c");

        let g = Formula::until(Formula::until(a.clone(), b.clone()), c.clone());
        assert_eq!(g.to_text(&t), "(a U b) U c");

        let h = Formula::not(Formula::and(a, Formula::or(b, c)));
        assert_eq!(h.to_text(&t), "!(a & (b | c))");
    }

    #[test]
    fn round_trips_examples() {
        let mut t = SignalTable::new();
        for n in ["c", "f", "h", "p"] {
            t.declare(n, SignalKind::SutInput).unwrap();
        }
        for text in [
            "G((!f & X(c & f & X !c)) <-> X X p)",
            "G(c -> F f)",
            "p U (c <-> f) U h",
            "!(p | !c) & true R f",
        ] {
            let f = parse(text, &t).unwrap();
            let printed = f.to_text(&t);
            let reparsed = parse(&printed, &t).unwrap();
            assert_eq!(f, reparsed, "round-trip failed for `{text}` -> `{printed}`");
        }
    }
}
