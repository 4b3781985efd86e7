//! Generators and small independent oracles shared by the integration tests.

#![allow(dead_code)]

use std::collections::BTreeMap;

use indshape::fol::{Formula, Term};
use indshape::model::{PolyPlus, ZPoly};
use proptest::prelude::*;
use rand::Rng;

pub mod criteria;
pub mod golden;

pub fn numeral(n: u64) -> Term {
    Term::numeral(n)
}

/// Random term over `vars` with numerals up to `max_coeff`.
pub fn rand_term(rng: &mut impl Rng, vars: &[&str], depth: u32, max_coeff: u64) -> Term {
    if depth == 0 || rng.gen_bool(0.35) {
        return if rng.gen_bool(0.6) && !vars.is_empty() {
            Term::var(vars[rng.gen_range(0..vars.len())])
        } else {
            numeral(rng.gen_range(0..=max_coeff))
        };
    }
    let l = rand_term(rng, vars, depth - 1, max_coeff);
    let r = rand_term(rng, vars, depth - 1, max_coeff);
    if rng.gen_bool(0.6) {
        Term::add(l, r)
    } else {
        Term::mul(l, r)
    }
}

/// Random quantifier-free formula of connective depth at most `depth`.
pub fn rand_qf(rng: &mut impl Rng, vars: &[&str], depth: u32, max_coeff: u64) -> Formula {
    if depth == 0 || rng.gen_bool(0.3) {
        let l = rand_term(rng, vars, 2, max_coeff);
        let r = rand_term(rng, vars, 2, max_coeff);
        return if rng.gen_bool(0.5) { Formula::eq(l, r) } else { Formula::lt(l, r) };
    }
    let a = rand_qf(rng, vars, depth - 1, max_coeff);
    match rng.gen_range(0..5) {
        0 => Formula::not(a),
        1 => Formula::and(a, rand_qf(rng, vars, depth - 1, max_coeff)),
        2 => Formula::or(a, rand_qf(rng, vars, depth - 1, max_coeff)),
        3 => Formula::implies(a, rand_qf(rng, vars, depth - 1, max_coeff)),
        _ => Formula::iff(a, rand_qf(rng, vars, depth - 1, max_coeff)),
    }
}

/// Random element of ℤ[X]⁺ of degree at most `deg`, coefficients in
/// `-coeff..=coeff`.
pub fn rand_poly(rng: &mut impl Rng, deg: usize, coeff: i64) -> PolyPlus {
    let cs: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-coeff..=coeff)).collect();
    let p = ZPoly::from_i64s(&cs);
    match PolyPlus::new(p.clone()) {
        Ok(q) => q,
        Err(_) => PolyPlus::new(&ZPoly::zero() - &p).expect("negation of a negative is positive"),
    }
}

pub fn arb_term(vars: &'static [&'static str]) -> impl Strategy<Value = Term> {
    let leaf = prop_oneof![
        (0..vars.len()).prop_map(move |i| Term::var(vars[i])),
        Just(Term::Zero),
        Just(Term::One),
        (2u64..4).prop_map(Term::numeral),
    ];
    leaf.prop_recursive(3, 12, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Term::add(l, r)),
            (inner.clone(), inner).prop_map(|(l, r)| Term::mul(l, r)),
        ]
    })
}

pub fn arb_atom(vars: &'static [&'static str]) -> impl Strategy<Value = Formula> {
    (arb_term(vars), arb_term(vars), any::<bool>())
        .prop_map(|(l, r, eq)| if eq { Formula::eq(l, r) } else { Formula::lt(l, r) })
}

pub fn arb_qf(vars: &'static [&'static str]) -> impl Strategy<Value = Formula> {
    arb_atom(vars).prop_recursive(3, 16, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::not),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::implies(a, b)),
            (inner.clone(), inner).prop_map(|(a, b)| Formula::iff(a, b)),
        ]
    })
}

/// Quantifier-free formulas over `=` only.
pub fn arb_ring_qf(vars: &'static [&'static str]) -> impl Strategy<Value = Formula> {
    let atom = (arb_term(vars), arb_term(vars)).prop_map(|(l, r)| Formula::eq(l, r));
    atom.prop_recursive(3, 16, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::not),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
            (inner.clone(), inner).prop_map(|(a, b)| Formula::iff(a, b)),
        ]
    })
}

/// Formulas with quantifiers over the given variable names.
pub fn arb_formula(vars: &'static [&'static str]) -> impl Strategy<Value = Formula> {
    arb_atom(vars).prop_recursive(4, 24, 2, move |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::not),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::implies(a, b)),
            (0..vars.len(), inner.clone()).prop_map(move |(i, a)| Formula::forall(vars[i], a)),
            (0..vars.len(), inner).prop_map(move |(i, a)| Formula::exists(vars[i], a)),
        ]
    })
}

pub type Env = BTreeMap<String, u128>;

/// Plain recursive evaluation over ℕ, quantifiers over `0..=bound`. Written
/// separately from the library evaluator so the two can check each other.
pub fn nat_term(t: &Term, env: &Env) -> u128 {
    match t {
        Term::Var(v) => env[v],
        Term::Zero => 0,
        Term::One => 1,
        Term::Add(l, r) => nat_term(l, env) + nat_term(r, env),
        Term::Mul(l, r) => nat_term(l, env) * nat_term(r, env),
    }
}

pub fn nat_truth(f: &Formula, env: &mut Env, bound: u128) -> bool {
    match f {
        Formula::Eq(l, r) => nat_term(l, env) == nat_term(r, env),
        Formula::Lt(l, r) => nat_term(l, env) < nat_term(r, env),
        Formula::Not(g) => !nat_truth(g, env, bound),
        Formula::And(l, r) => nat_truth(l, env, bound) && nat_truth(r, env, bound),
        Formula::Or(l, r) => nat_truth(l, env, bound) || nat_truth(r, env, bound),
        Formula::Implies(l, r) => !nat_truth(l, env, bound) || nat_truth(r, env, bound),
        Formula::Iff(l, r) => nat_truth(l, env, bound) == nat_truth(r, env, bound),
        Formula::ForAll(v, g) | Formula::Exists(v, g) => {
            let all = matches!(f, Formula::ForAll(..));
            let saved = env.get(v).copied();
            let mut out = all;
            for n in 0..=bound {
                env.insert(v.clone(), n);
                if nat_truth(g, env, bound) != all {
                    out = !all;
                    break;
                }
            }
            match saved {
                Some(s) => env.insert(v.clone(), s),
                None => env.remove(v),
            };
            out
        }
    }
}

pub fn env_of(pairs: &[(&str, u128)]) -> Env {
    pairs.iter().map(|(v, n)| (v.to_string(), *n)).collect()
}
