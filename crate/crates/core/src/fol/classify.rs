//! Syntactic complexity classes.
//!
//! A quantifier is *bounded* when it has the shape `∀x (x < t → …)` or
//! `∃x (x < t ∧ …)` with `x` not occurring in `t`. A formula all of whose
//! quantifiers are bounded is `Bounded` (Δ₀).
//!
//! For the remaining formulas the class is `SigmaK(k)` where `k` is the least
//! number of alternating unbounded quantifier blocks over all prenex forms,
//! with maximal bounded subformulas treated as atomic. So `∀x∃y x = y` has two
//! blocks and is `SigmaK(2)`, and `∀x x = 0` is `SigmaK(1)`.

use std::cmp::{max, min};
use std::fmt;

use serde::Serialize;

use super::formula::Formula;
use super::term::Term;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum FormulaClass {
    Atomic,
    QuantifierFree,
    Bounded,
    SigmaK(u32),
    Unrestricted,
}

impl FormulaClass {
    fn rank(self) -> (u8, u32) {
        match self {
            FormulaClass::Atomic => (0, 0),
            FormulaClass::QuantifierFree => (1, 0),
            FormulaClass::Bounded | FormulaClass::SigmaK(0) => (2, 0),
            FormulaClass::SigmaK(k) => (2, k),
            FormulaClass::Unrestricted => (3, 0),
        }
    }

    /// Whether every formula of class `other` also belongs to `self`.
    pub fn includes(self, other: FormulaClass) -> bool {
        other.rank() <= self.rank()
    }

    /// Whether `f` belongs to this class.
    pub fn admits(self, f: &Formula) -> bool {
        self.includes(classify(f))
    }
}

impl fmt::Display for FormulaClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormulaClass::Atomic => f.write_str("atomic"),
            FormulaClass::QuantifierFree => f.write_str("open"),
            FormulaClass::Bounded => f.write_str("bounded"),
            FormulaClass::SigmaK(k) => write!(f, "sigma:{k}"),
            FormulaClass::Unrestricted => f.write_str("all"),
        }
    }
}

/// The smallest class containing `f`.
pub fn classify(f: &Formula) -> FormulaClass {
    if f.is_atomic() {
        return FormulaClass::Atomic;
    }
    if !f.has_quantifier() {
        return FormulaClass::QuantifierFree;
    }
    let (s, p) = blocks(f);
    match min(s, p) {
        0 => FormulaClass::Bounded,
        k => FormulaClass::SigmaK(k),
    }
}

/// Whether `f` is the body of a bounded quantifier over `v`; returns the
/// matrix if so.
pub fn bounded_body<'a>(f: &'a Formula, v: &str, universal: bool) -> Option<&'a Formula> {
    let (guard, rest) = match (f, universal) {
        (Formula::Implies(g, r), true) | (Formula::And(g, r), false) => (g, r),
        _ => return None,
    };
    match &**guard {
        Formula::Lt(Term::Var(x), bound) if x == v && !bound.contains_var(v) => Some(rest),
        _ => None,
    }
}

/// Whether every quantifier in `f` is bounded.
pub fn is_bounded(f: &Formula) -> bool {
    blocks(f) == (0, 0)
}

// (s, p): least number of blocks in a prenex form that starts with ∃ (resp. ∀),
// with 0 meaning the formula is Δ₀.
fn blocks(f: &Formula) -> (u32, u32) {
    match f {
        Formula::Eq(..) | Formula::Lt(..) => (0, 0),
        Formula::Not(g) => {
            let (s, p) = blocks(g);
            (p, s)
        }
        Formula::And(l, r) | Formula::Or(l, r) => {
            let (s1, p1) = blocks(l);
            let (s2, p2) = blocks(r);
            normalize(max(s1, s2), max(p1, p2))
        }
        Formula::Implies(l, r) => {
            let (s1, p1) = blocks(l);
            let (s2, p2) = blocks(r);
            normalize(max(p1, s2), max(s1, p2))
        }
        Formula::Iff(l, r) => {
            let (s1, p1) = blocks(l);
            let (s2, p2) = blocks(r);
            let (a_s, a_p) = normalize(max(p1, s2), max(s1, p2));
            let (b_s, b_p) = normalize(max(p2, s1), max(s2, p1));
            normalize(max(a_s, b_s), max(a_p, b_p))
        }
        Formula::ForAll(v, g) => match bounded_body(g, v, true) {
            Some(_) if blocks(g) == (0, 0) => (0, 0),
            _ => {
                let (s, p) = blocks(g);
                let p_new = max(1, min(p, s + 1));
                (p_new + 1, p_new)
            }
        },
        Formula::Exists(v, g) => match bounded_body(g, v, false) {
            Some(_) if blocks(g) == (0, 0) => (0, 0),
            _ => {
                let (s, p) = blocks(g);
                let s_new = max(1, min(s, p + 1));
                (s_new, s_new + 1)
            }
        },
    }
}

// A Σn formula is also Π(n+1) and vice versa.
fn normalize(s: u32, p: u32) -> (u32, u32) {
    if s == 0 && p == 0 {
        return (0, 0);
    }
    (min(s, p + 1).max(1), min(p, s + 1).max(1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fol::parse_formula;

    fn c(s: &str) -> FormulaClass {
        classify(&parse_formula(s).unwrap())
    }

    #[test]
    fn atomic_and_open() {
        assert_eq!(c("x + 0 = x"), FormulaClass::Atomic);
        assert_eq!(c("~x = 0"), FormulaClass::QuantifierFree);
        assert_eq!(c("x <= y"), FormulaClass::QuantifierFree);
    }

    #[test]
    fn bounded_patterns() {
        assert_eq!(c("!x. (x < y -> x = 0)"), FormulaClass::Bounded);
        assert_eq!(c("?x. (x < y + 1 & x*x = y)"), FormulaClass::Bounded);
        assert_eq!(c("!y. (y < x -> y = 0)"), FormulaClass::Bounded);
        // bound term mentions the bound variable
        assert_eq!(c("!x. (x < x + 1 -> x = 0)"), FormulaClass::SigmaK(1));
        // wrong connective for the quantifier
        assert_eq!(c("!x. (x < y & x = 0)"), FormulaClass::SigmaK(1));
    }

    #[test]
    fn prenex_block_count() {
        assert_eq!(c("!x. ?y. x = y"), FormulaClass::SigmaK(2));
        assert_eq!(c("?x. ?y. x = y"), FormulaClass::SigmaK(1));
        assert_eq!(c("!x. x = 0"), FormulaClass::SigmaK(1));
        assert_eq!(c("(?x. x = 0) & (?y. y = 1)"), FormulaClass::SigmaK(1));
        assert_eq!(c("(!x. x = 0) -> ?y. y = 1"), FormulaClass::SigmaK(1));
        assert_eq!(c("?x. !y. ?z. x + y = z"), FormulaClass::SigmaK(3));
        assert_eq!(c("!x. (x < y -> ?z. z = x)"), FormulaClass::SigmaK(2));
        assert_eq!(c("!x. ?y. (x < y <-> ?z. z = x)"), FormulaClass::SigmaK(3));
    }

    #[test]
    fn class_inclusion_chain() {
        use FormulaClass::*;
        let chain = [Atomic, QuantifierFree, Bounded, SigmaK(1), SigmaK(2), Unrestricted];
        for (i, a) in chain.iter().enumerate() {
            for (j, b) in chain.iter().enumerate() {
                assert_eq!(a.includes(*b), j <= i, "{a} vs {b}");
            }
        }
        assert!(SigmaK(0).includes(Bounded));
        assert!(Bounded.includes(SigmaK(0)));
    }
}
