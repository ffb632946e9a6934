//! Ultimately periodic traces and exact LTL evaluation on them.

use crate::ltl::Formula;
use crate::signal::{Letter, SignalSet, SignalTable};

/// An ultimately periodic infinite word `prefix . cycle^ω`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Lasso {
    pub prefix: Vec<Letter>,
    pub cycle: Vec<Letter>,
}

impl Lasso {
    /// `cycle` must be nonempty.
    pub fn new(prefix: Vec<Letter>, cycle: Vec<Letter>) -> Self {
        assert!(!cycle.is_empty(), "lasso cycle must be nonempty");
        Lasso { prefix, cycle }
    }

    pub fn letter_at(&self, step: usize) -> Letter {
        if step < self.prefix.len() {
            self.prefix[step]
        } else {
            self.cycle[(step - self.prefix.len()) % self.cycle.len()]
        }
    }

    /// First `steps` letters of the infinite expansion.
    pub fn expand(&self, steps: usize) -> Vec<Letter> {
        (0..steps).map(|i| self.letter_at(i)).collect()
    }

    /// Same infinite word with the cycle entry point advanced by `k`.
    pub fn rotate_cycle(&self, k: usize) -> Lasso {
        let l = self.cycle.len();
        let k = k % l;
        let mut prefix = self.prefix.clone();
        prefix.extend(self.cycle.iter().take(k));
        let cycle = self
            .cycle
            .iter()
            .cycle()
            .skip(k)
            .take(l)
            .copied()
            .collect();
        Lasso::new(prefix, cycle)
    }

    /// Same infinite word with the cycle repeated twice.
    pub fn double_cycle(&self) -> Lasso {
        let mut cycle = self.cycle.clone();
        cycle.extend(self.cycle.iter().copied());
        Lasso::new(self.prefix.clone(), cycle)
    }

    fn positions(&self) -> usize {
        self.prefix.len() + self.cycle.len()
    }

    fn succ(&self, i: usize) -> usize {
        if i + 1 < self.positions() {
            i + 1
        } else {
            self.prefix.len()
        }
    }
}

/// Exact satisfaction of `phi` on the infinite word denoted by `lasso`.
///
/// Every subformula is labeled on the `prefix.len() + cycle.len()` positions;
/// `Until`/`Eventually` are least fixpoints and `Release`/`Always` greatest
/// fixpoints over the cycle, computed by backward sweeps until stable.
pub fn eval_lasso(phi: &Formula, lasso: &Lasso) -> bool {
    labels(phi, lasso)[0]
}

fn labels(phi: &Formula, lasso: &Lasso) -> Vec<bool> {
    let n = lasso.positions();
    match phi {
        Formula::True => vec![true; n],
        Formula::False => vec![false; n],
        Formula::Atom(id) => (0..n).map(|i| lasso.letter_at(i).contains(*id)).collect(),
        Formula::Not(a) => labels(a, lasso).into_iter().map(|v| !v).collect(),
        Formula::And(a, b) => zip(labels(a, lasso), labels(b, lasso), |x, y| x && y),
        Formula::Or(a, b) => zip(labels(a, lasso), labels(b, lasso), |x, y| x || y),
        Formula::Implies(a, b) => zip(labels(a, lasso), labels(b, lasso), |x, y| !x || y),
        Formula::Iff(a, b) => zip(labels(a, lasso), labels(b, lasso), |x, y| x == y),
        Formula::Next(a) => {
            let av = labels(a, lasso);
            (0..n).map(|i| av[lasso.succ(i)]).collect()
        }
        Formula::Eventually(a) => {
            let av = labels(a, lasso);
            fixpoint(lasso, false, |x, i, succ| av[i] || x[succ])
        }
        Formula::Always(a) => {
            let av = labels(a, lasso);
            fixpoint(lasso, true, |x, i, succ| av[i] && x[succ])
        }
        Formula::Until(a, b) => {
            let av = labels(a, lasso);
            let bv = labels(b, lasso);
            fixpoint(lasso, false, |x, i, succ| bv[i] || (av[i] && x[succ]))
        }
        Formula::Release(a, b) => {
            let av = labels(a, lasso);
            let bv = labels(b, lasso);
            fixpoint(lasso, true, |x, i, succ| bv[i] && (av[i] || x[succ]))
        }
    }
}

fn zip(a: Vec<bool>, b: Vec<bool>, f: impl Fn(bool, bool) -> bool) -> Vec<bool> {
    a.into_iter().zip(b).map(|(x, y)| f(x, y)).collect()
}

fn fixpoint(lasso: &Lasso, init: bool, step: impl Fn(&[bool], usize, usize) -> bool) -> Vec<bool> {
    let n = lasso.positions();
    let mut x = vec![init; n];
    // Backward sweeps converge in at most n+1 rounds on the cycle+stem graph.
    for _ in 0..=n {
        let mut changed = false;
        for i in (0..n).rev() {
            let v = step(&x, i, lasso.succ(i));
            if v != x[i] {
                x[i] = v;
                changed = true;
            }
        }
        if !changed {
            return x;
        }
    }
    unreachable!("fixpoint iteration did not stabilize");
}

/// Renders a trace in timing-diagram form: one row per signal, one column
/// per step, with `|` marking the cycle entry for lassos.
pub fn render_timing(
    prefix: &[Letter],
    cycle: Option<&[Letter]>,
    signals: SignalSet,
    table: &SignalTable,
) -> String {
    let name_width = signals
        .iter()
        .map(|id| table.name(id).len())
        .max()
        .unwrap_or(0)
        .max(4);
    let mut out = String::new();
    let total = prefix.len() + cycle.map_or(0, |c| c.len());
    out.push_str(&format!("{:width$} ", "step", width = name_width));
    for i in 0..total {
        if cycle.is_some() && i == prefix.len() {
            out.push('|');
        }
        out.push_str(&format!("{}", i % 10));
    }
    out.push('\n');
    for id in signals.iter() {
        out.push_str(&format!("{:width$} ", table.name(id), width = name_width));
        for (i, letter) in prefix
            .iter()
            .chain(cycle.unwrap_or(&[]).iter())
            .enumerate()
        {
            if cycle.is_some() && i == prefix.len() {
                out.push('|');
            }
            out.push(if letter.contains(id) { '1' } else { '0' });
        }
        out.push('\n');
    }
    out
}

/// Trace export as JSON: letters become `{signal: bool}` objects.
pub fn trace_to_json(
    prefix: &[Letter],
    cycle: Option<&[Letter]>,
    signals: SignalSet,
    table: &SignalTable,
) -> serde_json::Value {
    let letter_obj = |l: &Letter| {
        let mut map = serde_json::Map::new();
        for id in signals.iter() {
            map.insert(
                table.name(id).to_string(),
                serde_json::Value::Bool(l.contains(id)),
            );
        }
        serde_json::Value::Object(map)
    };
    let mut root = serde_json::Map::new();
    root.insert(
        "signals".into(),
        serde_json::Value::Array(
            signals
                .iter()
                .map(|id| serde_json::Value::String(table.name(id).to_string()))
                .collect(),
        ),
    );
    root.insert(
        "prefix".into(),
        serde_json::Value::Array(prefix.iter().map(letter_obj).collect()),
    );
    if let Some(c) = cycle {
        root.insert(
            "cycle".into(),
            serde_json::Value::Array(c.iter().map(letter_obj).collect()),
        );
    }
    serde_json::Value::Object(root)
}

/// Parses the JSON produced by [`trace_to_json`] back into letters.
pub fn trace_from_json(
    value: &serde_json::Value,
    table: &SignalTable,
) -> Result<(Vec<Letter>, Option<Vec<Letter>>), String> {
    let letters = |v: &serde_json::Value| -> Result<Vec<Letter>, String> {
        v.as_array()
            .ok_or("expected array of letters")?
            .iter()
            .map(|entry| {
                let obj = entry.as_object().ok_or("letter must be an object")?;
                let mut letter = Letter::empty();
                for (name, val) in obj {
                    let id = table.require(name).map_err(|e| e.to_string())?;
                    if val.as_bool().ok_or("letter values must be booleans")? {
                        letter = letter.with(id, true);
                    }
                }
                Ok(letter)
            })
            .collect()
    };
    let prefix = letters(value.get("prefix").ok_or("missing `prefix`")?)?;
    let cycle = match value.get("cycle") {
        Some(c) => Some(letters(c)?),
        None => None,
    };
    Ok((prefix, cycle))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ltl::parse;
    use crate::signal::{SignalKind, SignalTable};

    fn setup() -> (SignalTable, Vec<crate::signal::SignalId>) {
        let mut t = SignalTable::new();
        let ids = ["a", "b", "p"]
            .iter()
            .map(|n| t.declare(n, SignalKind::SutInput).unwrap())
            .collect();
        (t, ids)
    }

    #[test]
    fn gf_p_on_all_p_cycle() {
        let (t, ids) = setup();
        let p = ids[2];
        let phi = parse("G F p", &t).unwrap();
        let lasso = Lasso::new(vec![], vec![Letter::from_ids([p])]);
        assert!(eval_lasso(&phi, &lasso));
    }

    #[test]
    fn g_p_fails_when_cycle_violates() {
        let (t, ids) = setup();
        let p = ids[2];
        let phi = parse("G p", &t).unwrap();
        let lasso = Lasso::new(vec![Letter::from_ids([p])], vec![Letter::empty()]);
        assert!(!eval_lasso(&phi, &lasso));
    }

    #[test]
    fn until_witnessed_in_prefix() {
        let (t, ids) = setup();
        let (a, b) = (ids[0], ids[1]);
        let phi = parse("a U b", &t).unwrap();
        let lasso = Lasso::new(
            vec![
                Letter::from_ids([a]),
                Letter::from_ids([a]),
                Letter::from_ids([b]),
            ],
            vec![Letter::empty()],
        );
        assert!(eval_lasso(&phi, &lasso));
    }

    #[test]
    fn until_needs_eventual_witness() {
        let (t, ids) = setup();
        let (a, b) = (ids[0], ids[1]);
        let phi = parse("a U b", &t).unwrap();
        // a forever, b never
        let lasso = Lasso::new(vec![], vec![Letter::from_ids([a])]);
        assert!(!eval_lasso(&phi, &lasso));
        let psi = parse("a R b", &t).unwrap();
        let lasso2 = Lasso::new(vec![], vec![Letter::from_ids([b])]);
        assert!(eval_lasso(&psi, &lasso2));
    }

    #[test]
    fn rotation_and_doubling_preserve_verdict() {
        let (t, ids) = setup();
        let (a, b, p) = (ids[0], ids[1], ids[2]);
        let phi = parse("(a U b) & G F p & X(!a -> F b)", &t).unwrap();
        let lasso = Lasso::new(
            vec![Letter::from_ids([a])],
            vec![
                Letter::from_ids([b, p]),
                Letter::from_ids([a]),
                Letter::empty(),
                Letter::from_ids([b]),
            ],
        );
        let v = eval_lasso(&phi, &lasso);
        for k in 0..4 {
            assert_eq!(eval_lasso(&phi, &lasso.rotate_cycle(k)), v);
        }
        assert_eq!(eval_lasso(&phi, &lasso.double_cycle()), v);
    }

    #[test]
    fn timing_render_has_cycle_marker() {
        let (t, ids) = setup();
        let p = ids[2];
        let lasso = Lasso::new(vec![Letter::empty()], vec![Letter::from_ids([p])]);
        let s = render_timing(
            &lasso.prefix,
            Some(&lasso.cycle),
            crate::signal::SignalSet::from_ids([p]),
            &t,
        );
        assert!(s.contains('|'));
        assert!(s.contains("p"));
    }
}
