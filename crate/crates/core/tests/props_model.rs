//! ℤ[X]⁺ arithmetic and the evaluators, against direct computation.

mod common;

use common::criteria::{axiom_sampling, div_claim};
use common::{arb_formula, arb_qf, env_of, nat_truth};
use indshape::model::{
    nat_bounded_eval, poly_eval, refute_claim, refute_claim_with, zx_eval, NatEnv, PolyEnv,
    PolyPlus, ThreeVal, WitnessConfig, ZPoly,
};
use indshape::par::Exec;
use num_bigint::BigInt;
use proptest::prelude::*;

fn arb_zpoly() -> impl Strategy<Value = ZPoly> {
    prop::collection::vec(-6i64..=6, 0..5).prop_map(|cs| ZPoly::from_i64s(&cs))
}

fn arb_plus() -> impl Strategy<Value = PolyPlus> {
    arb_zpoly().prop_map(|p| PolyPlus::new(p.clone()).unwrap_or_else(|_| PolyPlus::new(-&p).unwrap()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn ring_laws(a in arb_zpoly(), b in arb_zpoly(), c in arb_zpoly()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
    }

    // evaluation at an integer is a ring map
    #[test]
    fn evaluation_is_a_homomorphism(a in arb_zpoly(), b in arb_zpoly(), x in -9i64..=9) {
        let x = BigInt::from(x);
        prop_assert_eq!((&a * &b).eval_at(&x), a.eval_at(&x) * b.eval_at(&x));
        prop_assert_eq!((&a + &b).eval_at(&x), a.eval_at(&x) + b.eval_at(&x));
    }

    #[test]
    fn exact_division_inverts_multiplication(a in arb_zpoly(), b in arb_zpoly()) {
        prop_assume!(!b.is_zero());
        prop_assert_eq!((&a * &b).div_exact(&b), Some(a.clone()));
        if let Some(q) = a.div_exact(&b) {
            prop_assert_eq!(&q * &b, a);
        }
    }

    // the order is discrete: nothing lies strictly between p and p + 1
    #[test]
    fn order_is_discrete_and_compatible(a in arb_plus(), b in arb_plus(), c in arb_plus()) {
        let one = PolyPlus::one();
        prop_assert!(!(a < b && b < &a + &one));
        if a < b {
            prop_assert!(&a + &c < &b + &c);
            if c != PolyPlus::zero() {
                prop_assert!(&a * &c < &b * &c);
            }
            let d = b.checked_sub(&a).unwrap();
            prop_assert_eq!(&a + &d, b.clone());
        }
        prop_assert!(PolyPlus::zero() <= a);
    }

    #[test]
    fn bounded_nat_evaluator_agrees(f in arb_formula(&["x", "y"]), x in 0u64..6, y in 0u64..6) {
        let lib = nat_bounded_eval(&f, &NatEnv::from([("x".into(), x), ("y".into(), y)]), 5).unwrap();
        let ours = nat_truth(&f, &mut env_of(&[("x", x as u128), ("y", y as u128)]), 5);
        prop_assert_eq!(lib, ours, "{}", f);
    }

    // constants of ℤ[X]⁺ behave like the naturals they are
    #[test]
    fn zx_agrees_with_nat_on_constants(f in arb_qf(&["x", "y"]), x in 0u64..6, y in 0u64..6) {
        let env: PolyEnv = [("x".to_string(), PolyPlus::constant(x)), ("y".to_string(), PolyPlus::constant(y))].into();
        let zx = zx_eval(&f, &env, &WitnessConfig::default()).unwrap();
        let nat = nat_truth(&f, &mut env_of(&[("x", x as u128), ("y", y as u128)]), 0);
        prop_assert_eq!(zx, ThreeVal::from_bool(nat));
    }

    #[test]
    fn term_values_are_nonnegative(t in common::arb_term(&["x"]), p in arb_plus()) {
        let env: PolyEnv = [("x".to_string(), p)].into();
        prop_assert!(poly_eval(&t, &env).unwrap().as_poly().is_nonnegative());
    }
}

#[test]
fn axioms_hold_at_random_points() {
    let rep = axiom_sampling(11, 100, 3, 5);
    assert_eq!(rep.evaluations, 1600);
    assert!(rep.failures.is_empty(), "{:#?}", rep.failures);
}

#[test]
fn parity_fails_at_x() {
    for d in [2, 3] {
        let out = refute_claim(&div_claim(d), &WitnessConfig::default()).unwrap();
        let r = out.refutation.expect("refuted");
        assert_eq!(r.assignment.len(), 1);
        assert_eq!(r.assignment[0].0, "x");
        assert_eq!(r.assignment[0].1, PolyPlus::x());
    }
}

#[test]
fn search_order_does_not_depend_on_execution() {
    let claim = indshape::fol::parse_formula("!x. !y. (x*y = y*x + 1 | x < y | y < x + 1)").unwrap();
    let cfg = WitnessConfig { max_degree: 2, max_coeff: 2, max_assignments: 500 };
    let a = refute_claim_with(&claim, &cfg, Exec::Sequential).unwrap();
    let b = refute_claim_with(&claim, &cfg, Exec::Parallel).unwrap();
    assert_eq!(a, b);
}
