//! Evaluation in ℕ with quantifiers relativized to `{0, …, B}`.
//!
//! Exact on quantifier-free formulas. On quantified formulas the answer is
//! only about the truncation and is used as a test oracle, not as a proof.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::EvalError;
use crate::fol::{Formula, Term};
use crate::schemes::WaltherScheme;

pub type NatEnv = BTreeMap<String, u64>;

pub fn nat_term_eval(t: &Term, env: &NatEnv) -> Result<BigUint, EvalError> {
    Ok(match t {
        Term::Var(v) => BigUint::from(*env.get(v).ok_or_else(|| EvalError::Unbound(v.clone()))?),
        Term::Zero => BigUint::zero(),
        Term::One => BigUint::one(),
        Term::Add(l, r) => nat_term_eval(l, env)? + nat_term_eval(r, env)?,
        Term::Mul(l, r) => nat_term_eval(l, env)? * nat_term_eval(r, env)?,
    })
}

/// Truth of `f` at `env`, with `∀`/`∃` ranging over `0..=bound`.
pub fn nat_bounded_eval(f: &Formula, env: &NatEnv, bound: u64) -> Result<bool, EvalError> {
    let mut env = env.clone();
    eval(f, &mut env, bound)
}

fn eval(f: &Formula, env: &mut NatEnv, bound: u64) -> Result<bool, EvalError> {
    Ok(match f {
        Formula::Eq(l, r) => nat_term_eval(l, env)? == nat_term_eval(r, env)?,
        Formula::Lt(l, r) => nat_term_eval(l, env)? < nat_term_eval(r, env)?,
        Formula::Not(g) => !eval(g, env, bound)?,
        Formula::And(l, r) => eval(l, env, bound)? && eval(r, env, bound)?,
        Formula::Or(l, r) => eval(l, env, bound)? || eval(r, env, bound)?,
        Formula::Implies(l, r) => !eval(l, env, bound)? || eval(r, env, bound)?,
        Formula::Iff(l, r) => eval(l, env, bound)? == eval(r, env, bound)?,
        Formula::ForAll(v, g) | Formula::Exists(v, g) => {
            let universal = matches!(f, Formula::ForAll(..));
            let saved = env.get(v).copied();
            let mut result = universal;
            for n in 0..=bound {
                env.insert(v.clone(), n);
                let b = eval(g, env, bound);
                let b = match b {
                    Ok(b) => b,
                    Err(e) => {
                        restore(env, v, saved);
                        return Err(e);
                    }
                };
                if b != universal {
                    result = b;
                    break;
                }
            }
            restore(env, v, saved);
            result
        }
    })
}

fn restore(env: &mut NatEnv, v: &str, saved: Option<u64>) {
    match saved {
        Some(n) => env.insert(v.to_string(), n),
        None => env.remove(v),
    };
}

/// Naturals `≤ bound` that cannot be reached from the scheme's bases by its
/// step maps (with `x` the only variable allowed in step terms). A nonempty
/// answer means the scheme is not sound for ℕ.
pub fn walther_unreachable(
    w: &WaltherScheme,
    x: &str,
    bound: u64,
) -> Result<Vec<u64>, EvalError> {
    for t in &w.steps {
        if let Some(v) = t.vars().into_iter().find(|v| v != x) {
            return Err(EvalError::Unbound(v));
        }
    }
    let mut reached: BTreeSet<u64> = w.bases.iter().copied().filter(|&b| b <= bound).collect();
    let mut frontier: Vec<u64> = reached.iter().copied().collect();
    let limit = BigUint::from(bound);
    while let Some(n) = frontier.pop() {
        let env = NatEnv::from([(x.to_string(), n)]);
        for t in &w.steps {
            let m = nat_term_eval(t, &env)?;
            if m <= limit {
                let m = u64::try_from(m).expect("bounded");
                if reached.insert(m) {
                    frontier.push(m);
                }
            }
        }
    }
    Ok((0..=bound).filter(|n| !reached.contains(n)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fol::parse_formula;
    use crate::schemes::pa_minus_axioms;

    fn holds(s: &str, b: u64) -> bool {
        nat_bounded_eval(&parse_formula(s).unwrap(), &NatEnv::new(), b).unwrap()
    }

    #[test]
    fn examples() {
        assert!(holds("!x. x < x + 1", 16));
        assert!(!holds("?y. 5 = 2*y", 16));
        assert!(holds("?y. 6 = 2*y", 16));
    }

    #[test]
    fn axioms_hold_in_truncation() {
        for (i, a) in pa_minus_axioms().iter().enumerate() {
            // P14's witness z = y - x - 1 stays inside the truncation
            assert!(nat_bounded_eval(a, &NatEnv::new(), 12).unwrap(), "P{}", i + 1);
        }
    }

    #[test]
    fn unbound_variables_are_errors() {
        let f = parse_formula("x = 0").unwrap();
        assert_eq!(
            nat_bounded_eval(&f, &NatEnv::new(), 3),
            Err(EvalError::Unbound("x".into()))
        );
    }

    #[test]
    fn walther_reachability() {
        let even: WaltherScheme = "B=0;S=x+2".parse().unwrap();
        assert_eq!(walther_unreachable(&even, "x", 6).unwrap(), vec![1, 3, 5]);
        let both: WaltherScheme = "B=0,1;S=x+2".parse().unwrap();
        assert!(walther_unreachable(&both, "x", 20).unwrap().is_empty());
    }
}
