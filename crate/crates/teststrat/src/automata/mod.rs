//! Nondeterministic Büchi automata: LTL translation, lasso acceptance,
//! pruning and DOT export.

mod translate;

pub use translate::ltl_to_nba;

use std::fmt::Write as _;

use crate::signal::{Letter, SignalSet, SignalTable};
use crate::trace::Lasso;

/// A conjunction of signal literals. The tableau translation only ever
/// needs cubes as transition guards, which keeps guard evaluation and
/// residuation trivial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Guard {
    pub pos: SignalSet,
    pub neg: SignalSet,
}

impl Guard {
    pub const TRUE: Guard = Guard {
        pos: SignalSet::empty(),
        neg: SignalSet::empty(),
    };

    pub fn is_consistent(&self) -> bool {
        self.pos.is_disjoint(self.neg)
    }

    pub fn sat(&self, letter: Letter) -> bool {
        self.pos.is_subset_of(letter.as_set()) && self.neg.intersect(letter.as_set()).is_empty()
    }

    pub fn support(&self) -> SignalSet {
        self.pos.union(self.neg)
    }

    /// `self` implies `other` as cubes (other's literals are a subset).
    pub fn implies(&self, other: &Guard) -> bool {
        other.pos.is_subset_of(self.pos) && other.neg.is_subset_of(self.neg)
    }

    /// Fixes the signals in `fixed` to the values given by `letter` and
    /// returns the residual cube over the remaining signals, or `None`
    /// when the guard contradicts the assignment.
    pub fn residual(&self, fixed: SignalSet, letter: Letter) -> Option<Guard> {
        let val = letter.as_set();
        if !self.pos.intersect(fixed).is_subset_of(val) {
            return None;
        }
        if !self.neg.intersect(fixed).intersect(val).is_empty() {
            return None;
        }
        Some(Guard {
            pos: self.pos.minus(fixed),
            neg: self.neg.minus(fixed),
        })
    }

    pub fn display(&self, table: &SignalTable) -> String {
        let mut parts = Vec::new();
        for id in self.pos.iter() {
            parts.push(table.name(id).to_string());
        }
        for id in self.neg.iter() {
            parts.push(format!("!{}", table.name(id)));
        }
        if parts.is_empty() {
            "true".to_string()
        } else {
            parts.join(" & ")
        }
    }
}

/// A nondeterministic Büchi automaton with cube-guarded transitions.
#[derive(Debug, Clone, PartialEq)]
pub struct Nba {
    /// Transitions per source state.
    pub transitions: Vec<Vec<(Guard, usize)>>,
    pub initial: Vec<usize>,
    pub accepting: Vec<bool>,
}

impl Nba {
    pub fn num_states(&self) -> usize {
        self.transitions.len()
    }

    pub fn num_accepting(&self) -> usize {
        self.accepting.iter().filter(|a| **a).count()
    }

    /// Successors of `state` on `letter`.
    pub fn step(&self, state: usize, letter: Letter) -> impl Iterator<Item = usize> + '_ {
        self.transitions[state]
            .iter()
            .filter(move |(g, _)| g.sat(letter))
            .map(|(_, t)| *t)
    }

    /// True iff some run over `prefix . cycle^ω` visits an accepting state
    /// infinitely often. Decided exactly on the product of the automaton
    /// with the lasso's position graph.
    pub fn accepts_lasso(&self, lasso: &Lasso) -> bool {
        let positions = lasso.prefix.len() + lasso.cycle.len();
        if positions == 0 || self.num_states() == 0 {
            return false;
        }
        let succ_pos = |p: usize| {
            if p + 1 < positions {
                p + 1
            } else {
                lasso.prefix.len()
            }
        };
        let node = |q: usize, p: usize| q * positions + p;

        // Reachable product exploration.
        let total = self.num_states() * positions;
        let mut seen = vec![false; total];
        let mut stack = Vec::new();
        for &q0 in &self.initial {
            for q in self.step(q0, lasso.letter_at(0)) {
                // The first letter is consumed entering `q`; record the
                // product node at position 1's predecessor convention:
                // node (q, p) = automaton in q, next letter is at position p.
                let n = node(q, succ_pos(0));
                if !seen[n] {
                    seen[n] = true;
                    stack.push(n);
                }
            }
        }
        let mut edges: Vec<Vec<usize>> = vec![Vec::new(); total];
        while let Some(n) = stack.pop() {
            let (q, p) = (n / positions, n % positions);
            for q2 in self.step(q, lasso.letter_at(p)) {
                let m = node(q2, succ_pos(p));
                edges[n].push(m);
                if !seen[m] {
                    seen[m] = true;
                    stack.push(m);
                }
            }
        }

        // Accepting node inside a cycle <=> accepting run exists.
        let mut scc = SccFinder::new(total, &edges, &seen);
        scc.run();
        for n in 0..total {
            if seen[n] && self.accepting[n / positions] && scc.in_cycle(n) {
                return true;
            }
        }
        false
    }

    /// States from which some word is accepted: states reaching an
    /// accepting state that lies on a cycle.
    pub fn viable_states(&self) -> Vec<bool> {
        let n = self.num_states();
        let edges: Vec<Vec<usize>> = self
            .transitions
            .iter()
            .map(|ts| ts.iter().map(|(_, t)| *t).collect())
            .collect();
        let all = vec![true; n];
        let mut scc = SccFinder::new(n, &edges, &all);
        scc.run();
        let mut live = vec![false; n];
        for q in 0..n {
            if self.accepting[q] && scc.in_cycle(q) {
                live[q] = true;
            }
        }
        // Backward closure over the reverse graph.
        let mut rev: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (src, ts) in edges.iter().enumerate() {
            for &t in ts {
                rev[t].push(src);
            }
        }
        let mut stack: Vec<usize> = (0..n).filter(|&q| live[q]).collect();
        while let Some(q) = stack.pop() {
            for &p in &rev[q] {
                if !live[p] {
                    live[p] = true;
                    stack.push(p);
                }
            }
        }
        live
    }

    /// Drops states that are unreachable or cannot contribute to any
    /// accepted word, then merges duplicate states.
    pub fn pruned(&self) -> Nba {
        let viable = self.viable_states();
        let n = self.num_states();
        let mut keep = vec![false; n];
        let mut stack: Vec<usize> = self
            .initial
            .iter()
            .copied()
            .filter(|&q| viable[q])
            .collect();
        for &q in &stack {
            keep[q] = true;
        }
        while let Some(q) = stack.pop() {
            for &(g, t) in &self.transitions[q] {
                if viable[t] && g.is_consistent() && !keep[t] {
                    keep[t] = true;
                    stack.push(t);
                }
            }
        }
        let mut remap = vec![usize::MAX; n];
        let mut next = 0usize;
        for q in 0..n {
            if keep[q] {
                remap[q] = next;
                next += 1;
            }
        }
        let mut out = Nba {
            transitions: vec![Vec::new(); next],
            initial: Vec::new(),
            accepting: vec![false; next],
        };
        for q in 0..n {
            if !keep[q] {
                continue;
            }
            let mut ts: Vec<(Guard, usize)> = self.transitions[q]
                .iter()
                .filter(|(g, t)| keep[*t] && g.is_consistent())
                .map(|(g, t)| (*g, remap[*t]))
                .collect();
            ts.sort();
            ts.dedup();
            // Drop cube transitions subsumed by a weaker cube to the same target.
            let mut filtered: Vec<(Guard, usize)> = Vec::new();
            for (g, t) in ts {
                if !filtered
                    .iter()
                    .any(|(g2, t2)| *t2 == t && g.implies(g2) && (g2.pos, g2.neg) != (g.pos, g.neg))
                {
                    filtered.push((g, t));
                }
            }
            out.transitions[remap[q]] = filtered;
            out.accepting[remap[q]] = self.accepting[q];
        }
        for &q in &self.initial {
            if keep[q] {
                out.initial.push(remap[q]);
            }
        }
        out.initial.sort_unstable();
        out.initial.dedup();
        out.merge_duplicates();
        out
    }

    /// Merges states with identical acceptance flag and transition lists,
    /// iterating until no more merges apply.
    fn merge_duplicates(&mut self) {
        loop {
            let n = self.num_states();
            let mut key_of: Vec<(bool, Vec<(Guard, usize)>)> = Vec::with_capacity(n);
            for q in 0..n {
                let mut ts = self.transitions[q].clone();
                ts.sort();
                key_of.push((self.accepting[q], ts));
            }
            let mut remap: Vec<usize> = (0..n).collect();
            let mut seen: Vec<(usize, &(bool, Vec<(Guard, usize)>))> = Vec::new();
            let mut merged = false;
            for q in 0..n {
                if let Some((rep, _)) = seen.iter().find(|(_, k)| **k == key_of[q]) {
                    remap[q] = *rep;
                    merged = true;
                } else {
                    seen.push((q, &key_of[q]));
                }
            }
            if !merged {
                return;
            }
            // Compact the representative states.
            let mut compact = vec![usize::MAX; n];
            let mut next = 0;
            for q in 0..n {
                if remap[q] == q {
                    compact[q] = next;
                    next += 1;
                }
            }
            let final_map: Vec<usize> = (0..n).map(|q| compact[remap[q]]).collect();
            let mut transitions = vec![Vec::new(); next];
            let mut accepting = vec![false; next];
            for q in 0..n {
                if remap[q] == q {
                    let mut ts: Vec<(Guard, usize)> = self.transitions[q]
                        .iter()
                        .map(|(g, t)| (*g, final_map[*t]))
                        .collect();
                    ts.sort();
                    ts.dedup();
                    transitions[final_map[q]] = ts;
                    accepting[final_map[q]] = self.accepting[q];
                }
            }
            let mut initial: Vec<usize> = self.initial.iter().map(|&q| final_map[q]).collect();
            initial.sort_unstable();
            initial.dedup();
            *self = Nba {
                transitions,
                initial,
                accepting,
            };
        }
    }

    pub fn to_dot(&self, table: &SignalTable) -> String {
        let mut out = String::from("digraph nba {\n  rankdir=LR;\n  node [shape=circle];\n");
        for &q in &self.initial {
            let _ = writeln!(out, "  init{q} [shape=point];");
            let _ = writeln!(out, "  init{q} -> s{q};");
        }
        for q in 0..self.num_states() {
            if self.accepting[q] {
                let _ = writeln!(out, "  s{q} [shape=doublecircle];");
            }
        }
        for (q, ts) in self.transitions.iter().enumerate() {
            for (g, t) in ts {
                let _ = writeln!(out, "  s{q} -> s{t} [label=\"{}\"];", g.display(table));
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Iterative Tarjan SCC, reporting whether a node lies on a cycle
/// (nontrivial SCC, or a self-loop).
struct SccFinder<'a> {
    edges: &'a [Vec<usize>],
    active: &'a [bool],
    index: Vec<usize>,
    lowlink: Vec<usize>,
    on_stack: Vec<bool>,
    stack: Vec<usize>,
    next_index: usize,
    comp_of: Vec<usize>,
    comp_sizes: Vec<usize>,
    self_loop: Vec<bool>,
    n: usize,
}

impl<'a> SccFinder<'a> {
    fn new(n: usize, edges: &'a [Vec<usize>], active: &'a [bool]) -> Self {
        let mut self_loop = vec![false; n];
        for (q, ts) in edges.iter().enumerate() {
            if ts.iter().any(|&t| t == q) {
                self_loop[q] = true;
            }
        }
        SccFinder {
            edges,
            active,
            index: vec![usize::MAX; n],
            lowlink: vec![0; n],
            on_stack: vec![false; n],
            stack: Vec::new(),
            next_index: 0,
            comp_of: vec![usize::MAX; n],
            comp_sizes: Vec::new(),
            self_loop,
            n,
        }
    }

    fn run(&mut self) {
        for v in 0..self.n {
            if self.active[v] && self.index[v] == usize::MAX {
                self.visit(v);
            }
        }
    }

    fn visit(&mut self, root: usize) {
        // Explicit call stack: (node, next edge index).
        let mut call: Vec<(usize, usize)> = vec![(root, 0)];
        while let Some(&mut (v, ref mut ei)) = call.last_mut() {
            if *ei == 0 {
                self.index[v] = self.next_index;
                self.lowlink[v] = self.next_index;
                self.next_index += 1;
                self.stack.push(v);
                self.on_stack[v] = true;
            }
            let mut descended = false;
            while *ei < self.edges[v].len() {
                let w = self.edges[v][*ei];
                *ei += 1;
                if !self.active[w] {
                    continue;
                }
                if self.index[w] == usize::MAX {
                    call.push((w, 0));
                    descended = true;
                    break;
                } else if self.on_stack[w] {
                    self.lowlink[v] = self.lowlink[v].min(self.index[w]);
                }
            }
            if descended {
                continue;
            }
            // Finished v.
            if self.lowlink[v] == self.index[v] {
                let comp = self.comp_sizes.len();
                let mut size = 0;
                loop {
                    let w = self.stack.pop().unwrap();
                    self.on_stack[w] = false;
                    self.comp_of[w] = comp;
                    size += 1;
                    if w == v {
                        break;
                    }
                }
                self.comp_sizes.push(size);
            }
            call.pop();
            if let Some(&mut (parent, _)) = call.last_mut() {
                self.lowlink[parent] = self.lowlink[parent].min(self.lowlink[v]);
            }
        }
    }

    fn in_cycle(&self, v: usize) -> bool {
        let c = self.comp_of[v];
        c != usize::MAX && (self.comp_sizes[c] > 1 || self.self_loop[v])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ltl::parse;
    use crate::signal::{SignalKind, SignalTable};
    use crate::trace::Lasso;

    fn table() -> SignalTable {
        let mut t = SignalTable::new();
        t.declare("p", SignalKind::SutOutput).unwrap();
        t.declare("q", SignalKind::SutOutput).unwrap();
        t
    }

    #[test]
    fn eventually_p_accepts_and_rejects() {
        let t = table();
        let p = t.require("p").unwrap();
        let nba = ltl_to_nba(&parse("F p", &t).unwrap());
        assert!(nba.accepts_lasso(&Lasso::new(vec![], vec![Letter::from_ids([p])])));
        assert!(!nba.accepts_lasso(&Lasso::new(vec![], vec![Letter::empty()])));
    }

    #[test]
    fn always_not_p_rejects_p_letters() {
        let t = table();
        let p = t.require("p").unwrap();
        let nba = ltl_to_nba(&parse("G !p", &t).unwrap());
        assert!(!nba.accepts_lasso(&Lasso::new(
            vec![Letter::from_ids([p])],
            vec![Letter::empty()]
        )));
        assert!(!nba.accepts_lasso(&Lasso::new(
            vec![Letter::empty()],
            vec![Letter::empty(), Letter::from_ids([p])]
        )));
        assert!(nba.accepts_lasso(&Lasso::new(vec![], vec![Letter::empty()])));
    }

    #[test]
    fn false_automaton_accepts_nothing() {
        let t = table();
        let nba = ltl_to_nba(&crate::ltl::Formula::False);
        assert!(!nba.accepts_lasso(&Lasso::new(vec![], vec![Letter::empty()])));
    }

    #[test]
    fn guard_residual() {
        let mut t = SignalTable::new();
        let a = t.declare("a", SignalKind::SutInput).unwrap();
        let b = t.declare("b", SignalKind::SutInput).unwrap();
        let g = Guard {
            pos: SignalSet::singleton(a),
            neg: SignalSet::singleton(b),
        };
        let fixed = SignalSet::singleton(a);
        assert_eq!(
            g.residual(fixed, Letter::from_ids([a])),
            Some(Guard {
                pos: SignalSet::empty(),
                neg: SignalSet::singleton(b)
            })
        );
        assert_eq!(g.residual(fixed, Letter::empty()), None);
    }
}
