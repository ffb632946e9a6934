//! Specification contexts and test objective construction.

use thiserror::Error;

use crate::fault::FaultFrequency;
use crate::ltl::Formula;
use crate::signal::{SignalError, SignalId, SignalKind, SignalSet, SignalTable};

#[derive(Debug, Error)]
pub enum ContextError {
    #[error(transparent)]
    Signal(#[from] SignalError),
    #[error("signal `{0}` is not a declared input or output")]
    NotATarget(String),
    #[error("hidden name `{0}` for the correct-value copy is already taken")]
    PrimeCollision(String),
    #[error("fault kind references hidden signal `{0}`, which is not the target's prime")]
    ForeignHidden(String),
    #[error("no targets given")]
    EmptyTargets,
    #[error("targets must be distinct")]
    DuplicateTarget,
}

/// The world a specification lives in: declared signals plus the formula.
#[derive(Debug, Clone, PartialEq)]
pub struct SpecContext {
    pub table: SignalTable,
    pub spec: Formula,
}

impl SpecContext {
    pub fn new(table: SignalTable, spec: Formula) -> Self {
        debug_assert!(spec
            .signals()
            .is_subset_of(SignalSet::from_ids(table.ids())));
        SpecContext { table, spec }
    }

    pub fn inputs(&self) -> SignalSet {
        self.table.of_kind(SignalKind::SutInput)
    }

    pub fn outputs(&self) -> SignalSet {
        self.table.of_kind(SignalKind::SutOutput)
    }

    pub fn hidden(&self) -> SignalSet {
        self.table.of_kind(SignalKind::Hidden)
    }

    pub fn universe(&self) -> SignalSet {
        SignalSet::from_ids(self.table.ids())
    }

    /// Extends the context with the hidden correct-value copy of `target`.
    pub fn for_target(&self, target: SignalId) -> Result<TargetContext, ContextError> {
        let kind = self.table.kind(target);
        if kind == SignalKind::Hidden {
            return Err(ContextError::NotATarget(
                self.table.name(target).to_string(),
            ));
        }
        let mut table = self.table.clone();
        let prime_name = table.prime_name(target);
        let prime = table
            .declare(&prime_name, SignalKind::Hidden)
            .map_err(|_| ContextError::PrimeCollision(prime_name.clone()))?;
        Ok(TargetContext {
            ctx: SpecContext::new(table, self.spec.clone()),
            target,
            prime,
        })
    }

    /// Extends the context with prime copies for several simultaneous targets.
    pub fn for_targets(&self, targets: &[SignalId]) -> Result<MultiTargetContext, ContextError> {
        if targets.is_empty() {
            return Err(ContextError::EmptyTargets);
        }
        let mut seen = SignalSet::empty();
        let mut table = self.table.clone();
        let mut primes = Vec::new();
        for &t in targets {
            if seen.contains(t) {
                return Err(ContextError::DuplicateTarget);
            }
            seen.insert(t);
            if self.table.kind(t) == SignalKind::Hidden {
                return Err(ContextError::NotATarget(self.table.name(t).to_string()));
            }
            let prime_name = table.prime_name(t);
            let prime = table
                .declare(&prime_name, SignalKind::Hidden)
                .map_err(|_| ContextError::PrimeCollision(prime_name.clone()))?;
            primes.push((t, prime));
        }
        Ok(MultiTargetContext {
            ctx: SpecContext::new(table, self.spec.clone()),
            targets: primes,
        })
    }
}

/// A context specialized to one fault target, with its prime declared.
#[derive(Debug, Clone)]
pub struct TargetContext {
    pub ctx: SpecContext,
    pub target: SignalId,
    pub prime: SignalId,
}

/// Which shortcut applied when building the objective.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ObjectiveForm {
    /// The kind does not mention the prime: `frequency(kind) -> !spec`.
    FrequencyOnly,
    /// Kind is an equivalence `prime <-> psi` at permanent frequency:
    /// `spec[target <- psi] -> !spec`.
    InlinedKind,
    /// The general form `(spec[target <- prime] & frequency(kind)) -> !spec`.
    FullAssumption,
}

/// A synthesis objective together with the context it is phrased in.
#[derive(Debug, Clone)]
pub struct Objective {
    pub formula: Formula,
    pub form: ObjectiveForm,
    pub ctx: SpecContext,
    pub target: SignalId,
    /// The hidden prime actually used by the objective, if any.
    pub prime: Option<SignalId>,
}

/// If `kind` is an equivalence with a literal of `prime` on one side,
/// returns the other side adjusted for the literal's sign.
fn prime_equivalence(kind: &Formula, prime: SignalId) -> Option<Formula> {
    let Formula::Iff(lhs, rhs) = kind else {
        return None;
    };
    let extract = |side: &Formula, other: &Formula| -> Option<Formula> {
        if other.signals().contains(prime) {
            return None;
        }
        match side {
            Formula::Atom(id) if *id == prime => Some(other.clone()),
            Formula::Not(inner) => match **inner {
                Formula::Atom(id) if id == prime => Some(Formula::not(other.clone())),
                _ => None,
            },
            _ => None,
        }
    };
    extract(lhs, rhs).or_else(|| extract(rhs, lhs))
}

/// Builds the synthesis objective for one target, applying the shortcut
/// forms when their side conditions hold.
pub fn make_objective(
    tc: &TargetContext,
    kind: &Formula,
    freq: &FaultFrequency,
) -> Result<Objective, ContextError> {
    // The kind may reference inputs, outputs and the target's prime only.
    let foreign = kind
        .signals()
        .intersect(tc.ctx.hidden())
        .minus(SignalSet::singleton(tc.prime));
    if let Some(id) = foreign.iter().next() {
        return Err(ContextError::ForeignHidden(
            tc.ctx.table.name(id).to_string(),
        ));
    }

    let spec = &tc.ctx.spec;
    if !kind.signals().contains(tc.prime) {
        return Ok(Objective {
            formula: Formula::implies(freq.apply(kind), Formula::not(spec.clone())),
            form: ObjectiveForm::FrequencyOnly,
            ctx: tc.ctx.clone(),
            target: tc.target,
            prime: None,
        });
    }

    if *freq == FaultFrequency::Always {
        if let Some(psi) = prime_equivalence(kind, tc.prime) {
            return Ok(Objective {
                formula: Formula::implies(
                    spec.substitute(tc.target, &psi),
                    Formula::not(spec.clone()),
                ),
                form: ObjectiveForm::InlinedKind,
                ctx: tc.ctx.clone(),
                target: tc.target,
                prime: None,
            });
        }
    }

    let assumed = Formula::and(
        spec.substitute(tc.target, &Formula::atom(tc.prime)),
        freq.apply(kind),
    );
    Ok(Objective {
        formula: Formula::implies(assumed, Formula::not(spec.clone())),
        form: ObjectiveForm::FullAssumption,
        ctx: tc.ctx.clone(),
        target: tc.target,
        prime: Some(tc.prime),
    })
}

/// A context specialized to simultaneous faults at several targets.
#[derive(Debug, Clone)]
pub struct MultiTargetContext {
    pub ctx: SpecContext,
    /// `(target, prime)` pairs in user order.
    pub targets: Vec<(SignalId, SignalId)>,
}

/// Objective for simultaneous faults: always the general form, with one
/// hidden prime per target.
pub fn make_multi_objective(
    mtc: &MultiTargetContext,
    models: &[(Formula, FaultFrequency)],
) -> Result<Objective, ContextError> {
    assert_eq!(mtc.targets.len(), models.len());
    let primes = SignalSet::from_ids(mtc.targets.iter().map(|(_, p)| *p));
    let substitution: Vec<(SignalId, Formula)> = mtc
        .targets
        .iter()
        .map(|(t, p)| (*t, Formula::atom(*p)))
        .collect();
    let mut assumption = mtc.ctx.spec.substitute_all(&substitution);
    for ((kind, freq), (_, prime)) in models.iter().zip(&mtc.targets) {
        let foreign = kind
            .signals()
            .intersect(mtc.ctx.hidden())
            .minus(primes)
            .minus(SignalSet::singleton(*prime));
        if let Some(id) = foreign.iter().next() {
            return Err(ContextError::ForeignHidden(
                mtc.ctx.table.name(id).to_string(),
            ));
        }
        assumption = Formula::and(assumption, freq.apply(kind));
    }
    Ok(Objective {
        formula: Formula::implies(assumption, Formula::not(mtc.ctx.spec.clone())),
        form: ObjectiveForm::FullAssumption,
        ctx: mtc.ctx.clone(),
        target: mtc.targets[0].0,
        prime: Some(mtc.targets[0].1),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fault::BuiltinKind;
    use crate::testutil::traffic;

    #[test]
    fn frequency_only_when_kind_has_no_prime() {
        let ctx = traffic();
        let p = ctx.table.require("p").unwrap();
        let tc = ctx.for_target(p).unwrap();
        let kind = Formula::not(Formula::atom(p));
        let obj = make_objective(&tc, &kind, &FaultFrequency::FromSomePoint).unwrap();
        assert_eq!(obj.form, ObjectiveForm::FrequencyOnly);
        assert_eq!(
            obj.formula,
            Formula::implies(
                Formula::eventually(Formula::always(kind)),
                Formula::not(ctx.spec.clone())
            )
        );
        assert!(obj.prime.is_none());
    }

    #[test]
    fn inlined_kind_for_permanent_bitflip() {
        let ctx = traffic();
        let p = ctx.table.require("p").unwrap();
        let tc = ctx.for_target(p).unwrap();
        let kind = BuiltinKind::BitFlip.formula(tc.target, tc.prime);
        let obj = make_objective(&tc, &kind, &FaultFrequency::Always).unwrap();
        assert_eq!(obj.form, ObjectiveForm::InlinedKind);
        let expected = Formula::implies(
            ctx.spec.substitute(p, &Formula::not(Formula::atom(p))),
            Formula::not(ctx.spec.clone()),
        );
        assert_eq!(obj.formula, expected);
    }

    #[test]
    fn full_assumption_otherwise() {
        let ctx = traffic();
        let p = ctx.table.require("p").unwrap();
        let tc = ctx.for_target(p).unwrap();
        let kind = BuiltinKind::BitFlip.formula(tc.target, tc.prime);
        let obj = make_objective(&tc, &kind, &FaultFrequency::InfinitelyOften).unwrap();
        assert_eq!(obj.form, ObjectiveForm::FullAssumption);
        assert_eq!(obj.prime, Some(tc.prime));
        let expected = Formula::implies(
            Formula::and(
                ctx.spec.substitute(p, &Formula::atom(tc.prime)),
                Formula::always(Formula::eventually(kind)),
            ),
            Formula::not(ctx.spec.clone()),
        );
        assert_eq!(obj.formula, expected);
    }

    #[test]
    fn rejects_foreign_hidden_signals() {
        let ctx = traffic();
        let p = ctx.table.require("p").unwrap();
        let h = ctx.table.require("h").unwrap();
        let tc_h = ctx.for_target(h).unwrap();
        // Build a kind referencing p's prime inside h's target context.
        let tc_p = ctx.for_target(p).unwrap();
        assert_eq!(
            tc_p.ctx.table.name(tc_p.prime),
            "p_prime",
            "prime naming convention"
        );
        let mut table = tc_h.ctx.table.clone();
        let foreign = table
            .declare("p_prime", crate::signal::SignalKind::Hidden)
            .unwrap();
        let tc_bad = TargetContext {
            ctx: SpecContext::new(table, tc_h.ctx.spec.clone()),
            target: tc_h.target,
            prime: tc_h.prime,
        };
        let kind = Formula::atom(foreign);
        assert!(matches!(
            make_objective(&tc_bad, &kind, &FaultFrequency::Always),
            Err(ContextError::ForeignHidden(_))
        ));
    }

    #[test]
    fn prime_collision_is_reported() {
        use crate::signal::{SignalKind, SignalTable};
        let mut t = SignalTable::new();
        let o = t.declare("o", SignalKind::SutOutput).unwrap();
        t.declare("o_prime", SignalKind::SutOutput).unwrap();
        let ctx = SpecContext::new(t, Formula::atom(o));
        assert!(matches!(
            ctx.for_target(o),
            Err(ContextError::PrimeCollision(_))
        ));
    }

    #[test]
    fn substitution_examples() {
        let ctx = traffic();
        let p = ctx.table.require("p").unwrap();
        let tc = ctx.for_target(p).unwrap();
        let g_p = Formula::always(Formula::atom(p));
        assert_eq!(
            g_p.substitute(p, &Formula::atom(tc.prime)),
            Formula::always(Formula::atom(tc.prime))
        );
        let q = ctx.table.require("h").unwrap();
        let atom_q = Formula::atom(q);
        assert_eq!(atom_q.substitute(p, &Formula::True), atom_q);
    }
}
