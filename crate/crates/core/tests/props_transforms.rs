//! Contracts of the transformations, checked semantically in ℕ.

mod common;

use common::criteria::{conjuncts, kaye_points};
use common::{arb_qf, arb_ring_qf, env_of, nat_truth};
use indshape::fol::{Formula, Term};
use indshape::model::{nat_bounded_eval, NatEnv};
use indshape::schemes::{induction_axiom, inductiveness_obligations, Notion};
use indshape::transforms::{
    axiom_to_inductive, equivalence_shape, kaye_reduce, merge, scheme_substitute, InductionInput,
    SchemeTemplate,
};
use proptest::prelude::*;

fn input(theta: Formula) -> InductionInput {
    InductionInput { theta, x: "x".into(), params: vec![] }
}

#[test]
fn kaye_pairs_agree_pointwise() {
    let (points, bad) = kaye_points(3, 60, 6);
    assert_eq!(points, 60 * 49);
    assert!(bad.is_empty(), "{:#?}", &bad[..bad.len().min(5)]);
}

#[test]
fn open_sigma_is_rejected() {
    let x_eq = Formula::eq(Term::var("x"), Term::Zero);
    assert!(equivalence_shape(&x_eq, &x_eq).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    // the normalized formula meets the successor obligations in every truncation
    #[test]
    fn normalized_formula_is_inductive(theta in arb_qf(&["x", "z"])) {
        let psi = axiom_to_inductive(&theta, "x", &["z".to_string()]).unwrap();
        prop_assert!(psi.free_vars().iter().all(|v| v == "x"));
        let obls = inductiveness_obligations(&psi, "x", &Notion::Successor).unwrap();
        for o in &obls.obligations {
            prop_assert!(nat_bounded_eval(&o.goal, &NatEnv::new(), 5).unwrap(), "{}", o.goal);
        }
    }

    // ∀x ψ(x) and the induction axiom agree in each truncation
    #[test]
    fn normalized_formula_matches_axiom(theta in arb_qf(&["x"])) {
        let psi = axiom_to_inductive(&theta, "x", &[]).unwrap();
        let ax = induction_axiom(&theta, "x", &[], &Notion::Successor).unwrap();
        let all = Formula::forall("x", psi);
        for b in [3, 6] {
            prop_assert_eq!(nat_truth(&all, &mut env_of(&[]), b), nat_truth(&ax, &mut env_of(&[]), b));
        }
    }

    #[test]
    fn merge_is_the_conjunction(a in arb_qf(&["x"]), b in arb_qf(&["x"])) {
        let m = merge(&[input(a.clone()), input(b.clone())]).unwrap();
        let pa = axiom_to_inductive(&a, "x", &[]).unwrap();
        let pb = axiom_to_inductive(&b, "x", &[]).unwrap();
        prop_assert!(m.alpha_eq(&Formula::and(pa.clone(), pb)));
        prop_assert!(merge(&[input(a)]).unwrap().alpha_eq(&pa));
    }

    #[test]
    fn successor_template_gives_the_successor_axiom(theta in arb_qf(&["x"])) {
        let s = scheme_substitute(&SchemeTemplate::successor(), &theta, "x", &[]).unwrap();
        let ax = induction_axiom(&theta, "x", &[], &Notion::Successor).unwrap();
        prop_assert!(s.alpha_eq(&ax), "{} vs {}", s, ax);
    }

    #[test]
    fn kaye_pair_of_each_dnf_conjunct(f in arb_ring_qf(&["x", "y"])) {
        for c in conjuncts(&f) {
            prop_assume!(c.inequations.len() <= 4);
            let r = kaye_reduce(&c).unwrap().to_formula();
            let o = c.to_formula();
            for x in 0..5 {
                for y in 0..5 {
                    let mut env = env_of(&[("x", x), ("y", y)]);
                    prop_assert_eq!(nat_truth(&o, &mut env, 0), nat_truth(&r, &mut env, 0));
                }
            }
        }
    }
}
