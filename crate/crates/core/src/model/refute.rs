//! Counterexample search in ℤ\[X\]⁺.
//!
//! Since ℤ\[X\]⁺ satisfies PA⁻, a falsifying assignment shows the claim is not
//! provable from PA⁻.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use serde::Serialize;

use super::poly::{enumerate_polys, PolyPlus};
use super::zx::{Evaluator, PolyEnv, ThreeVal, WitnessConfig};
use super::EvalError;
use crate::fol::{fresh_var, Formula, Term};
use crate::par::{self, Exec};

/// Pulls universal quantifiers out of positive positions (through `∧`, `∨`,
/// the consequent of `→`, and `¬∃`), renaming apart. Free variables come
/// first, in sorted order. The result is equivalent to the universal closure
/// of `f` as `∀vars matrix`.
pub fn strip_universals(f: &Formula) -> (Vec<String>, Formula) {
    let mut vars: Vec<String> = f.free_vars().into_iter().collect();
    let mut taken: BTreeSet<String> = vars.iter().cloned().collect();
    let m = pull(f, true, &mut vars, &mut taken);
    (vars, m)
}

fn pull(f: &Formula, pos: bool, vars: &mut Vec<String>, taken: &mut BTreeSet<String>) -> Formula {
    match f {
        Formula::ForAll(v, body) if pos => bind(v, body, pos, vars, taken),
        Formula::Exists(v, body) if !pos => bind(v, body, pos, vars, taken),
        Formula::And(l, r) => Formula::and(pull(l, pos, vars, taken), pull(r, pos, vars, taken)),
        Formula::Or(l, r) => Formula::or(pull(l, pos, vars, taken), pull(r, pos, vars, taken)),
        Formula::Implies(l, r) => {
            Formula::implies(pull(l, !pos, vars, taken), pull(r, pos, vars, taken))
        }
        Formula::Not(g) => Formula::not(pull(g, !pos, vars, taken)),
        _ => f.clone(),
    }
}

fn bind(
    v: &str,
    body: &Formula,
    pos: bool,
    vars: &mut Vec<String>,
    taken: &mut BTreeSet<String>,
) -> Formula {
    let name = fresh_var(v, taken);
    taken.insert(name.clone());
    vars.push(name.clone());
    let body = if name == v {
        body.clone()
    } else {
        body.substitute(v, &Term::var(&name))
    };
    pull(&body, pos, vars, taken)
}

/// Index tuples of length `arity` over `0..size`, ordered by sum and then
/// lexicographically, at most `limit` of them.
pub fn graded_lex(arity: usize, size: usize, limit: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if size == 0 && arity > 0 {
        return out;
    }
    let max_total = arity * size.saturating_sub(1);
    let mut cur = Vec::with_capacity(arity);
    for total in 0..=max_total {
        compositions(arity, size, total, &mut cur, &mut out, limit);
        if out.len() >= limit {
            break;
        }
    }
    out.truncate(limit);
    out
}

fn compositions(
    arity: usize,
    size: usize,
    remaining: usize,
    cur: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
    limit: usize,
) {
    if out.len() >= limit {
        return;
    }
    let slots = arity - cur.len();
    if slots == 0 {
        if remaining == 0 {
            out.push(cur.clone());
        }
        return;
    }
    // later slots can absorb at most (slots - 1) * (size - 1)
    let rest_cap = (slots - 1) * (size - 1);
    let lo = remaining.saturating_sub(rest_cap);
    let hi = remaining.min(size - 1);
    for first in lo..=hi {
        cur.push(first);
        compositions(arity, size, remaining - first, cur, out, limit);
        cur.pop();
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Refutation {
    /// The falsifying values, in the order of the stripped universals.
    pub assignment: Vec<(String, PolyPlus)>,
    /// Decisions made while evaluating the claim at the assignment.
    pub trace: Vec<String>,
}

/// What a search produced.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RefuteOutcome {
    pub refutation: Option<Refutation>,
    /// Assignments evaluated.
    pub examined: usize,
    /// Of those, how many evaluated to unknown.
    pub unknown: usize,
}

/// Searches for values of the outer universals making the claim false.
///
/// Assignments are tried in graded lexicographic order over the candidate
/// list; the first falsifying one in that order is reported regardless of
/// `exec`.
pub fn refute_claim_with(
    f: &Formula,
    cfg: &WitnessConfig,
    exec: Exec,
) -> Result<RefuteOutcome, EvalError> {
    let (vars, matrix) = strip_universals(f);
    let values = enumerate_polys(cfg.max_degree, cfg.max_coeff);
    let tuples = graded_lex(vars.len(), values.len(), cfg.max_assignments.max(1));
    let witnesses = OnceLock::new();
    let env_of = |tuple: &[usize]| -> PolyEnv {
        vars.iter()
            .zip(tuple)
            .map(|(v, &i)| (v.clone(), values[i].clone()))
            .collect()
    };
    let mut examined = 0;
    let mut unknown = 0;
    let mut start = 0;
    let mut chunk = 16;
    while start < tuples.len() {
        let end = (start + chunk).min(tuples.len());
        let verdicts = par::map(exec, &tuples[start..end], |t| {
            let mut ev = Evaluator::new(cfg, &witnesses, false);
            ev.eval(&matrix, &env_of(t))
        });
        for (offset, v) in verdicts.into_iter().enumerate() {
            examined += 1;
            match v? {
                ThreeVal::False => {
                    let tuple = &tuples[start + offset];
                    let env = env_of(tuple);
                    let mut ev = Evaluator::new(cfg, &witnesses, true);
                    ev.eval(&matrix, &env)?;
                    let assignment = vars
                        .iter()
                        .zip(tuple)
                        .map(|(v, &i)| (v.clone(), values[i].clone()))
                        .collect();
                    return Ok(RefuteOutcome {
                        refutation: Some(Refutation {
                            assignment,
                            trace: ev.trace,
                        }),
                        examined,
                        unknown,
                    });
                }
                ThreeVal::Unknown(_) => unknown += 1,
                ThreeVal::True => {}
            }
        }
        start = end;
        chunk = (chunk * 4).min(4096);
    }
    Ok(RefuteOutcome {
        refutation: None,
        examined,
        unknown,
    })
}

pub fn refute_claim(f: &Formula, cfg: &WitnessConfig) -> Result<RefuteOutcome, EvalError> {
    refute_claim_with(f, cfg, Exec::default())
}
