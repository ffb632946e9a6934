//! Tableau translation from LTL (in negation normal form) to a
//! nondeterministic Büchi automaton.
//!
//! Classic node-expansion construction: nodes carry `new`/`old`/`next`
//! obligation sets and are split on disjunctive formulas; the resulting
//! generalized automaton has one acceptance set per `Until` subformula and
//! is degeneralized with an index-advancing counter. The caller gets a
//! pruned automaton whose states all contribute to some accepted word.

use std::collections::{BTreeSet, HashMap};

use super::{Guard, Nba};
use crate::ltl::{nnf, Formula};
use crate::signal::SignalSet;

type FormulaSet = BTreeSet<Formula>;

const INIT: usize = usize::MAX;

#[derive(Debug, Clone)]
struct BuildNode {
    incoming: BTreeSet<usize>,
    new: FormulaSet,
    old: FormulaSet,
    next: FormulaSet,
}

struct Tableau {
    /// Completed nodes: (old, next) with merged incoming sets.
    nodes: Vec<(FormulaSet, FormulaSet, BTreeSet<usize>)>,
    key_index: HashMap<(FormulaSet, FormulaSet), usize>,
}

impl Tableau {
    fn expand(&mut self, mut node: BuildNode) {
        let Some(f) = node.new.pop_first() else {
            // Fully processed: merge or register, then expand the successor.
            let key = (node.old.clone(), node.next.clone());
            if let Some(&idx) = self.key_index.get(&key) {
                self.nodes[idx].2.extend(node.incoming.iter().copied());
                return;
            }
            let idx = self.nodes.len();
            self.nodes
                .push((node.old.clone(), node.next.clone(), node.incoming.clone()));
            self.key_index.insert(key, idx);
            let successor = BuildNode {
                incoming: BTreeSet::from([idx]),
                new: node.next.clone(),
                old: FormulaSet::new(),
                next: FormulaSet::new(),
            };
            self.expand(successor);
            return;
        };
        match &f {
            Formula::False => {} // contradiction: drop the node
            Formula::True => self.expand(node),
            Formula::Atom(_) => {
                if node.old.contains(&Formula::not(f.clone())) {
                    return;
                }
                node.old.insert(f);
                self.expand(node);
            }
            Formula::Not(inner) => {
                debug_assert!(matches!(**inner, Formula::Atom(_)));
                if node.old.contains(inner) {
                    return;
                }
                node.old.insert(f);
                self.expand(node);
            }
            Formula::And(a, b) => {
                for part in [a, b] {
                    if !node.old.contains(part) {
                        node.new.insert((**part).clone());
                    }
                }
                node.old.insert(f);
                self.expand(node);
            }
            Formula::Next(a) => {
                node.next.insert((**a).clone());
                node.old.insert(f);
                self.expand(node);
            }
            Formula::Or(a, b) => {
                node.old.insert(f);
                let mut left = node.clone();
                if !left.old.contains(a) {
                    left.new.insert((**a).clone());
                }
                self.expand(left);
                let mut right = node;
                if !right.old.contains(b) {
                    right.new.insert((**b).clone());
                }
                self.expand(right);
            }
            Formula::Until(a, b) => {
                node.old.insert(f.clone());
                let mut cont = node.clone();
                if !cont.old.contains(a) {
                    cont.new.insert((**a).clone());
                }
                cont.next.insert(f.clone());
                self.expand(cont);
                let mut done = node;
                if !done.old.contains(b) {
                    done.new.insert((**b).clone());
                }
                self.expand(done);
            }
            Formula::Release(a, b) => {
                node.old.insert(f.clone());
                let mut cont = node.clone();
                if !cont.old.contains(b) {
                    cont.new.insert((**b).clone());
                }
                cont.next.insert(f.clone());
                self.expand(cont);
                let mut done = node;
                for part in [a, b] {
                    if !done.old.contains(part) {
                        done.new.insert((**part).clone());
                    }
                }
                self.expand(done);
            }
            Formula::Eventually(_)
            | Formula::Always(_)
            | Formula::Implies(..)
            | Formula::Iff(..) => {
                unreachable!("tableau input must be in negation normal form")
            }
        }
    }
}

fn literals_guard(old: &FormulaSet) -> Guard {
    let mut pos = SignalSet::empty();
    let mut neg = SignalSet::empty();
    for f in old {
        match f {
            Formula::Atom(id) => pos.insert(*id),
            Formula::Not(inner) => {
                if let Formula::Atom(id) = **inner {
                    neg.insert(id);
                }
            }
            _ => {}
        }
    }
    Guard { pos, neg }
}

/// Translates `phi` (any constructors) into an NBA whose language is
/// exactly the set of traces satisfying `phi`.
pub fn ltl_to_nba(phi: &Formula) -> Nba {
    let phi = nnf(phi);
    if phi == Formula::False {
        return Nba {
            transitions: Vec::new(),
            initial: Vec::new(),
            accepting: Vec::new(),
        };
    }

    let mut tableau = Tableau {
        nodes: Vec::new(),
        key_index: HashMap::new(),
    };
    tableau.expand(BuildNode {
        incoming: BTreeSet::from([INIT]),
        new: FormulaSet::from([phi.clone()]),
        old: FormulaSet::new(),
        next: FormulaSet::new(),
    });

    let n = tableau.nodes.len();
    // State 0 is a fresh initial state; tableau node i becomes state i + 1.
    let num_raw = n + 1;
    let mut transitions: Vec<Vec<(Guard, usize)>> = vec![Vec::new(); num_raw];
    for (i, (old, _, incoming)) in tableau.nodes.iter().enumerate() {
        let guard = literals_guard(old);
        for &src in incoming {
            let src_state = if src == INIT { 0 } else { src + 1 };
            transitions[src_state].push((guard, i + 1));
        }
    }

    // One acceptance set per Until subformula: states where the until is
    // not pending (absent, or its right side already holds).
    let mut untils: BTreeSet<Formula> = BTreeSet::new();
    for (old, next, _) in &tableau.nodes {
        for f in old.iter().chain(next.iter()) {
            if matches!(f, Formula::Until(..)) {
                untils.insert(f.clone());
            }
        }
    }
    let mut acc_sets: Vec<Vec<bool>> = Vec::new();
    for u in &untils {
        let Formula::Until(_, b) = u else { unreachable!() };
        let mut set = vec![false; num_raw];
        set[0] = true;
        for (i, (old, _, _)) in tableau.nodes.iter().enumerate() {
            if !old.contains(u) || old.contains(b) {
                set[i + 1] = true;
            }
        }
        acc_sets.push(set);
    }
    // Reduce: drop total sets and supersets of other sets.
    acc_sets.retain(|s| s.iter().any(|v| !v));
    let mut reduced: Vec<Vec<bool>> = Vec::new();
    for s in &acc_sets {
        let redundant = acc_sets.iter().any(|other| {
            other != s && other.iter().zip(s).all(|(o, v)| !o || *v) && {
                // strict subset check to avoid dropping both of an equal pair
                other.iter().zip(s).any(|(o, v)| *v && !o)
            }
        }) || reduced.contains(s);
        if !redundant {
            reduced.push(s.clone());
        }
    }

    let nba = degeneralize(&transitions, &reduced, num_raw);
    nba.pruned()
}

/// Counting degeneralization with index jumping. Automaton states are
/// `(raw state, level)` where `level` counts acceptance sets already seen
/// in the current round; completing a round lands in the accepting copy.
fn degeneralize(
    transitions: &[Vec<(Guard, usize)>],
    acc_sets: &[Vec<bool>],
    num_raw: usize,
) -> Nba {
    let m = acc_sets.len();
    if m == 0 {
        // Every run is accepting.
        return Nba {
            transitions: transitions.to_vec(),
            initial: vec![0],
            accepting: vec![true; num_raw],
        };
    }
    let advance = |mut level: usize, target: usize| -> usize {
        while level < m && acc_sets[level][target] {
            level += 1;
        }
        level
    };

    let mut index: HashMap<(usize, usize), usize> = HashMap::new();
    let mut out_transitions: Vec<Vec<(Guard, usize)>> = Vec::new();
    let mut accepting: Vec<bool> = Vec::new();
    let mut order: Vec<(usize, usize)> = Vec::new();
    let mut intern = |key: (usize, usize),
                      index: &mut HashMap<(usize, usize), usize>,
                      out_transitions: &mut Vec<Vec<(Guard, usize)>>,
                      accepting: &mut Vec<bool>,
                      order: &mut Vec<(usize, usize)>|
     -> usize {
        *index.entry(key).or_insert_with(|| {
            let id = out_transitions.len();
            out_transitions.push(Vec::new());
            accepting.push(key.1 == m);
            order.push(key);
            id
        })
    };

    let init = intern(
        (0, 0),
        &mut index,
        &mut out_transitions,
        &mut accepting,
        &mut order,
    );
    let mut work = vec![init];
    while let Some(id) = work.pop() {
        let (q, level) = order[id];
        let base = if level == m { 0 } else { level };
        for &(g, target) in &transitions[q] {
            let next_level = advance(base, target);
            let key = (target, next_level);
            let existed = index.contains_key(&key);
            let tid = intern(
                key,
                &mut index,
                &mut out_transitions,
                &mut accepting,
                &mut order,
            );
            out_transitions[id].push((g, tid));
            if !existed {
                work.push(tid);
            }
        }
    }
    Nba {
        transitions: out_transitions,
        initial: vec![init],
        accepting,
    }
}

#[cfg(test)]
mod tests {
    use crate::automata::ltl_to_nba;
    use crate::ltl::parse;
    use crate::signal::{SignalKind, SignalTable};
    use crate::testutil::{random_formula, random_lasso, TestRng};
    use crate::trace::eval_lasso;

    #[test]
    fn agrees_with_lasso_evaluation_on_random_instances() {
        let mut t = SignalTable::new();
        let ids: Vec<_> = ["a", "b", "c"]
            .iter()
            .map(|n| t.declare(n, SignalKind::SutInput).unwrap())
            .collect();
        let mut rng = TestRng::new(0xA11CE);
        for round in 0..120 {
            let phi = random_formula(&mut rng, &ids, 4);
            let nba = ltl_to_nba(&phi);
            for _ in 0..25 {
                let lasso = random_lasso(&mut rng, &ids);
                let expected = eval_lasso(&phi, &lasso);
                let got = nba.accepts_lasso(&lasso);
                assert_eq!(
                    expected,
                    got,
                    "round {round}: disagreement on {} over {:?}",
                    phi.to_text(&t),
                    lasso
                );
            }
        }
    }

    #[test]
    fn negation_duality_on_random_instances() {
        let mut t = SignalTable::new();
        let ids: Vec<_> = ["a", "b"]
            .iter()
            .map(|n| t.declare(n, SignalKind::SutInput).unwrap())
            .collect();
        let mut rng = TestRng::new(0xB0B);
        for _ in 0..60 {
            let phi = random_formula(&mut rng, &ids, 3);
            let pos = ltl_to_nba(&phi);
            let neg = ltl_to_nba(&crate::ltl::Formula::not(phi.clone()));
            for _ in 0..10 {
                let lasso = random_lasso(&mut rng, &ids);
                let a = pos.accepts_lasso(&lasso);
                let b = neg.accepts_lasso(&lasso);
                assert!(a ^ b, "exactly one of nba(f), nba(!f) must accept");
            }
        }
    }

    #[test]
    fn until_automaton_small() {
        let mut t = SignalTable::new();
        t.declare("a", SignalKind::SutInput).unwrap();
        t.declare("b", SignalKind::SutInput).unwrap();
        let nba = ltl_to_nba(&parse("a U b", &t).unwrap());
        assert!(nba.num_states() <= 4, "got {} states", nba.num_states());
    }
}
