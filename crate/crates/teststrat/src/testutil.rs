//! Shared helpers for tests and examples: bundled contexts and seeded
//! random generators. Not part of the stable API.
#![doc(hidden)]

use crate::context::SpecContext;
use crate::ltl::{parse, Formula};
use crate::signal::{Letter, SignalId, SignalKind, SignalSet, SignalTable};
use crate::trace::Lasso;

/// Traffic-light controller: input `c`, outputs `h`, `f`, `p`.
pub fn traffic() -> SpecContext {
    let mut t = SignalTable::new();
    t.declare("c", SignalKind::SutInput).unwrap();
    t.declare("h", SignalKind::SutOutput).unwrap();
    t.declare("f", SignalKind::SutOutput).unwrap();
    t.declare("p", SignalKind::SutOutput).unwrap();
    let spec = Formula::and_all([
        parse("G(!f | !h)", &t).unwrap(),
        parse("G(c -> F f)", &t).unwrap(),
        parse("G(!c -> F h)", &t).unwrap(),
        parse("G((!f & X(c & f & X !c)) <-> X X p)", &t).unwrap(),
    ]);
    SpecContext::new(t, spec)
}

/// One-input one-output system where a single strategy per output cannot
/// witness the coverage condition even though a complete suite exists.
pub fn example1() -> SpecContext {
    let mut t = SignalTable::new();
    t.declare("i", SignalKind::SutInput).unwrap();
    t.declare("o", SignalKind::SutOutput).unwrap();
    let spec = parse(
        "(G(i -> G i) & F i) -> (G(o -> G o) & F o & G(i | !o))",
        &t,
    )
    .unwrap();
    SpecContext::new(t, spec)
}

/// Toggling-input system used for multi-strategy enumeration.
pub fn example2() -> SpecContext {
    let mut t = SignalTable::new();
    t.declare("i", SignalKind::SutInput).unwrap();
    t.declare("o", SignalKind::SutOutput).unwrap();
    let spec = parse("G((i <-> X !i) -> X o)", &t).unwrap();
    SpecContext::new(t, spec)
}

/// Two-client arbiter: requests in, grants out, mutual exclusion.
pub fn arbiter() -> SpecContext {
    let mut t = SignalTable::new();
    t.declare("r1", SignalKind::SutInput).unwrap();
    t.declare("r2", SignalKind::SutInput).unwrap();
    t.declare("g1", SignalKind::SutOutput).unwrap();
    t.declare("g2", SignalKind::SutOutput).unwrap();
    let spec = Formula::and_all([
        parse("G(r1 -> F g1)", &t).unwrap(),
        parse("G(r2 -> F g2)", &t).unwrap(),
        parse("G(!g1 | !g2)", &t).unwrap(),
    ]);
    SpecContext::new(t, spec)
}

/// Small deterministic PRNG (splitmix64) so tests do not need a rand
/// dependency and stay reproducible.
#[derive(Debug, Clone)]
pub struct TestRng(pub u64);

impl TestRng {
    pub fn new(seed: u64) -> Self {
        TestRng(seed)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform value in `0..bound` (bound > 0).
    pub fn below(&mut self, bound: usize) -> usize {
        (self.next_u64() % bound as u64) as usize
    }

    pub fn bool(&mut self) -> bool {
        self.next_u64() & 1 == 1
    }
}

/// Random formula over `signals`, with the given maximum operator depth.
pub fn random_formula(rng: &mut TestRng, signals: &[SignalId], depth: usize) -> Formula {
    if depth == 0 || rng.below(6) == 0 {
        return match rng.below(8) {
            0 => Formula::True,
            1 => Formula::False,
            _ => Formula::atom(signals[rng.below(signals.len())]),
        };
    }
    let sub = |rng: &mut TestRng| random_formula(rng, signals, depth - 1);
    match rng.below(12) {
        0 => Formula::not(sub(rng)),
        1 => Formula::next(sub(rng)),
        2 => Formula::eventually(sub(rng)),
        3 => Formula::always(sub(rng)),
        4 => Formula::and(sub(rng), sub(rng)),
        5 => Formula::or(sub(rng), sub(rng)),
        6 => Formula::implies(sub(rng), sub(rng)),
        7 => Formula::iff(sub(rng), sub(rng)),
        8 | 9 => Formula::until(sub(rng), sub(rng)),
        _ => Formula::release(sub(rng), sub(rng)),
    }
}

/// Random lasso over `signals` with short prefix and cycle.
pub fn random_lasso(rng: &mut TestRng, signals: &[SignalId]) -> Lasso {
    let set = SignalSet::from_ids(signals.iter().copied());
    let mut letter = |rng: &mut TestRng| {
        let mut l = Letter::empty();
        for id in set.iter() {
            if rng.bool() {
                l = l.with(id, true);
            }
        }
        l
    };
    let prefix_len = rng.below(4);
    let cycle_len = 1 + rng.below(4);
    let prefix = (0..prefix_len).map(|_| letter(rng)).collect();
    let cycle = (0..cycle_len).map(|_| letter(rng)).collect();
    Lasso::new(prefix, cycle)
}
