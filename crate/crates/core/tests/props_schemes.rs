//! Induction shapes checked against ℕ through an independent evaluator.

mod common;

use common::criteria::finite_induction;
use common::{arb_qf, env_of, nat_truth};
use indshape::schemes::{induction_axiom, inductiveness_obligations, Notion};
use proptest::prelude::*;

#[test]
fn obligations_force_the_conclusion_on_reachable_points() {
    let rep = finite_induction(7, 120, 12);
    assert!(rep.violations.is_empty(), "{:#?}", rep.violations);
    assert!(rep.applicable > 0, "no formula met any notion");
}

const NOTIONS: [&str; 6] = ["succ", "less", "step:2", "kind:2", "pind:2", "gen:B=0,1;S=x+2"];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    // the axiom of every notion is true in the truncation, where its premises
    // range over the same bounded domain as its conclusion
    #[test]
    fn induction_axioms_hold_in_truncations(theta in arb_qf(&["x"]), which in 0..NOTIONS.len()) {
        let n: Notion = NOTIONS[which].parse().unwrap();
        let ax = induction_axiom(&theta, "x", &[], &n).unwrap();
        prop_assert!(nat_truth(&ax, &mut env_of(&[]), 10), "{ax}");
    }

    #[test]
    fn obligation_goals_are_sentences(theta in arb_qf(&["x"]), which in 0..NOTIONS.len()) {
        let n: Notion = NOTIONS[which].parse().unwrap();
        let obls = inductiveness_obligations(&theta, "x", &n).unwrap();
        for o in &obls.obligations {
            prop_assert!(o.goal.free_vars().is_empty(), "{}: {}", o.tag, o.goal);
        }
    }
}
