use std::collections::BTreeSet;
use std::fmt;

use serde::{Serialize, Serializer};

use super::term::Term;

/// A first-order formula over `{0, 1, +, ×, <}` with equality.
///
/// `x ≤ y` is not a constructor: it is always spelled `x < y ∨ x = y`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Eq(Term, Term),
    Lt(Term, Term),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    ForAll(String, Box<Formula>),
    Exists(String, Box<Formula>),
}

impl Formula {
    pub fn eq(l: Term, r: Term) -> Formula {
        Formula::Eq(l, r)
    }

    pub fn lt(l: Term, r: Term) -> Formula {
        Formula::Lt(l, r)
    }

    /// `l ≤ r`, elaborated to `l < r ∨ l = r`.
    pub fn le(l: Term, r: Term) -> Formula {
        Formula::or(Formula::Lt(l.clone(), r.clone()), Formula::Eq(l, r))
    }

    /// The formula `0 = 0`, used as the empty conjunction.
    pub fn truth() -> Formula {
        Formula::Eq(Term::Zero, Term::Zero)
    }

    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn and(l: Formula, r: Formula) -> Formula {
        Formula::And(Box::new(l), Box::new(r))
    }

    pub fn or(l: Formula, r: Formula) -> Formula {
        Formula::Or(Box::new(l), Box::new(r))
    }

    pub fn implies(l: Formula, r: Formula) -> Formula {
        Formula::Implies(Box::new(l), Box::new(r))
    }

    pub fn iff(l: Formula, r: Formula) -> Formula {
        Formula::Iff(Box::new(l), Box::new(r))
    }

    pub fn forall(v: impl Into<String>, body: Formula) -> Formula {
        Formula::ForAll(v.into(), Box::new(body))
    }

    pub fn exists(v: impl Into<String>, body: Formula) -> Formula {
        Formula::Exists(v.into(), Box::new(body))
    }

    /// Left-folded conjunction; empty conjunction is `0 = 0`.
    pub fn conj(parts: impl IntoIterator<Item = Formula>) -> Formula {
        parts
            .into_iter()
            .reduce(Formula::and)
            .unwrap_or_else(Formula::truth)
    }

    /// Left-folded disjunction; empty disjunction is `¬(0 = 0)`.
    pub fn disj(parts: impl IntoIterator<Item = Formula>) -> Formula {
        parts
            .into_iter()
            .reduce(Formula::or)
            .unwrap_or_else(|| Formula::not(Formula::truth()))
    }

    /// `∀v₁ … ∀vₙ body`, outermost binder first.
    pub fn forall_many<S: AsRef<str>>(vars: &[S], body: Formula) -> Formula {
        vars.iter()
            .rev()
            .fold(body, |acc, v| Formula::forall(v.as_ref(), acc))
    }

    /// Universal closure over the free variables, in sorted order.
    pub fn universal_closure(&self) -> Formula {
        let fv: Vec<String> = self.free_vars().into_iter().collect();
        Formula::forall_many(&fv, self.clone())
    }

    pub fn is_atomic(&self) -> bool {
        matches!(self, Formula::Eq(..) | Formula::Lt(..))
    }

    pub fn is_quantifier(&self) -> bool {
        matches!(self, Formula::ForAll(..) | Formula::Exists(..))
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
        match self {
            Formula::Eq(l, r) | Formula::Lt(l, r) => {
                for v in l.vars().into_iter().chain(r.vars()) {
                    if !bound.contains(&v) {
                        out.insert(v);
                    }
                }
            }
            Formula::Not(f) => f.collect_free(bound, out),
            Formula::And(l, r)
            | Formula::Or(l, r)
            | Formula::Implies(l, r)
            | Formula::Iff(l, r) => {
                l.collect_free(bound, out);
                r.collect_free(bound, out);
            }
            Formula::ForAll(v, f) | Formula::Exists(v, f) => {
                bound.push(v.clone());
                f.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    pub fn has_free(&self, v: &str) -> bool {
        self.free_vars().contains(v)
    }

    /// Every variable name occurring anywhere, free or bound.
    pub fn all_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_all(&mut out);
        out
    }

    fn collect_all(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::Eq(l, r) | Formula::Lt(l, r) => {
                l.collect_vars(out);
                r.collect_vars(out);
            }
            Formula::Not(f) => f.collect_all(out),
            Formula::And(l, r)
            | Formula::Or(l, r)
            | Formula::Implies(l, r)
            | Formula::Iff(l, r) => {
                l.collect_all(out);
                r.collect_all(out);
            }
            Formula::ForAll(v, f) | Formula::Exists(v, f) => {
                out.insert(v.clone());
                f.collect_all(out);
            }
        }
    }

    pub fn has_quantifier(&self) -> bool {
        match self {
            Formula::Eq(..) | Formula::Lt(..) => false,
            Formula::Not(f) => f.has_quantifier(),
            Formula::And(l, r)
            | Formula::Or(l, r)
            | Formula::Implies(l, r)
            | Formula::Iff(l, r) => l.has_quantifier() || r.has_quantifier(),
            Formula::ForAll(..) | Formula::Exists(..) => true,
        }
    }

    pub fn mentions_lt(&self) -> bool {
        match self {
            Formula::Eq(..) => false,
            Formula::Lt(..) => true,
            Formula::Not(f) | Formula::ForAll(_, f) | Formula::Exists(_, f) => f.mentions_lt(),
            Formula::And(l, r)
            | Formula::Or(l, r)
            | Formula::Implies(l, r)
            | Formula::Iff(l, r) => l.mentions_lt() || r.mentions_lt(),
        }
    }

    /// Number of nodes, counting term nodes.
    pub fn size(&self) -> usize {
        match self {
            Formula::Eq(l, r) | Formula::Lt(l, r) => 1 + l.size() + r.size(),
            Formula::Not(f) | Formula::ForAll(_, f) | Formula::Exists(_, f) => 1 + f.size(),
            Formula::And(l, r)
            | Formula::Or(l, r)
            | Formula::Implies(l, r)
            | Formula::Iff(l, r) => 1 + l.size() + r.size(),
        }
    }

    /// Capture-avoiding substitution of `by` for the free occurrences of `v`.
    pub fn substitute(&self, v: &str, by: &Term) -> Formula {
        if !self.has_free(v) {
            return self.clone();
        }
        let by_vars = by.vars();
        self.subst_inner(v, by, &by_vars)
    }

    fn subst_inner(&self, v: &str, by: &Term, by_vars: &BTreeSet<String>) -> Formula {
        match self {
            Formula::Eq(l, r) => Formula::Eq(l.substitute(v, by), r.substitute(v, by)),
            Formula::Lt(l, r) => Formula::Lt(l.substitute(v, by), r.substitute(v, by)),
            Formula::Not(f) => Formula::not(f.subst_inner(v, by, by_vars)),
            Formula::And(l, r) => {
                Formula::and(l.subst_inner(v, by, by_vars), r.subst_inner(v, by, by_vars))
            }
            Formula::Or(l, r) => {
                Formula::or(l.subst_inner(v, by, by_vars), r.subst_inner(v, by, by_vars))
            }
            Formula::Implies(l, r) => {
                Formula::implies(l.subst_inner(v, by, by_vars), r.subst_inner(v, by, by_vars))
            }
            Formula::Iff(l, r) => {
                Formula::iff(l.subst_inner(v, by, by_vars), r.subst_inner(v, by, by_vars))
            }
            Formula::ForAll(b, f) | Formula::Exists(b, f) => {
                let rebuilt = |name: String, body: Formula| match self {
                    Formula::ForAll(..) => Formula::forall(name, body),
                    _ => Formula::exists(name, body),
                };
                if b == v || !f.has_free(v) {
                    return self.clone();
                }
                if by_vars.contains(b) {
                    let mut avoid = f.all_vars();
                    avoid.extend(by_vars.iter().cloned());
                    avoid.insert(v.to_string());
                    let fresh = fresh_var(b, &avoid);
                    let renamed = f.rename_free(b, &fresh);
                    rebuilt(fresh, renamed.subst_inner(v, by, by_vars))
                } else {
                    rebuilt(b.clone(), f.subst_inner(v, by, by_vars))
                }
            }
        }
    }

    /// Renames free occurrences of `from` to `to`, where `to` is known not to
    /// occur in `self`.
    fn rename_free(&self, from: &str, to: &str) -> Formula {
        match self {
            Formula::Eq(l, r) => Formula::Eq(l.rename_var(from, to), r.rename_var(from, to)),
            Formula::Lt(l, r) => Formula::Lt(l.rename_var(from, to), r.rename_var(from, to)),
            Formula::Not(f) => Formula::not(f.rename_free(from, to)),
            Formula::And(l, r) => Formula::and(l.rename_free(from, to), r.rename_free(from, to)),
            Formula::Or(l, r) => Formula::or(l.rename_free(from, to), r.rename_free(from, to)),
            Formula::Implies(l, r) => {
                Formula::implies(l.rename_free(from, to), r.rename_free(from, to))
            }
            Formula::Iff(l, r) => Formula::iff(l.rename_free(from, to), r.rename_free(from, to)),
            Formula::ForAll(b, _) | Formula::Exists(b, _) if b == from => self.clone(),
            Formula::ForAll(b, f) => Formula::forall(b.clone(), f.rename_free(from, to)),
            Formula::Exists(b, f) => Formula::exists(b.clone(), f.rename_free(from, to)),
        }
    }

    /// Renames bound variables so that none of them collides with `avoid`.
    pub fn rename_binders_away(&self, avoid: &BTreeSet<String>) -> Formula {
        match self {
            Formula::Eq(..) | Formula::Lt(..) => self.clone(),
            Formula::Not(f) => Formula::not(f.rename_binders_away(avoid)),
            Formula::And(l, r) => {
                Formula::and(l.rename_binders_away(avoid), r.rename_binders_away(avoid))
            }
            Formula::Or(l, r) => {
                Formula::or(l.rename_binders_away(avoid), r.rename_binders_away(avoid))
            }
            Formula::Implies(l, r) => {
                Formula::implies(l.rename_binders_away(avoid), r.rename_binders_away(avoid))
            }
            Formula::Iff(l, r) => {
                Formula::iff(l.rename_binders_away(avoid), r.rename_binders_away(avoid))
            }
            Formula::ForAll(b, f) | Formula::Exists(b, f) => {
                let body = f.rename_binders_away(avoid);
                let (name, body) = if avoid.contains(b) {
                    let mut taken = body.all_vars();
                    taken.extend(avoid.iter().cloned());
                    let fresh = fresh_var(b, &taken);
                    let body = body.rename_free(b, &fresh);
                    (fresh, body)
                } else {
                    (b.clone(), body)
                };
                match self {
                    Formula::ForAll(..) => Formula::forall(name, body),
                    _ => Formula::exists(name, body),
                }
            }
        }
    }

    /// α-equivalence: equal up to consistent renaming of bound variables.
    pub fn alpha_eq(&self, other: &Formula) -> bool {
        alpha_eq_in(self, other, &mut Vec::new(), &mut Vec::new())
    }

    /// Renames bound variables to `v0, v1, …` in binder order, skipping any
    /// name that is free in the formula.
    pub fn alpha_normalize(&self) -> Formula {
        let free = self.free_vars();
        let mut counter = 0usize;
        normalize_in(self, &free, &mut counter, &mut Vec::new())
    }
}

/// A variable name based on `base` that is not in `avoid`.
///
/// Tries `base` itself first, then `base1`, `base2`, … after stripping any
/// trailing digits from `base`.
pub fn fresh_var(base: &str, avoid: &BTreeSet<String>) -> String {
    if !avoid.contains(base) {
        return base.to_string();
    }
    let stem = base.trim_end_matches(|c: char| c.is_ascii_digit());
    let stem = if stem.is_empty() { "v" } else { stem };
    (1..)
        .map(|i| format!("{stem}{i}"))
        .find(|cand| !avoid.contains(cand))
        .expect("unbounded search")
}

fn lookup(stack: &[String], name: &str) -> Option<usize> {
    stack.iter().rposition(|b| b == name)
}

fn term_alpha_eq(a: &Term, b: &Term, sa: &[String], sb: &[String]) -> bool {
    match (a, b) {
        (Term::Var(x), Term::Var(y)) => match (lookup(sa, x), lookup(sb, y)) {
            (Some(i), Some(j)) => i == j,
            (None, None) => x == y,
            _ => false,
        },
        (Term::Zero, Term::Zero) | (Term::One, Term::One) => true,
        (Term::Add(a1, a2), Term::Add(b1, b2)) | (Term::Mul(a1, a2), Term::Mul(b1, b2)) => {
            term_alpha_eq(a1, b1, sa, sb) && term_alpha_eq(a2, b2, sa, sb)
        }
        _ => false,
    }
}

fn alpha_eq_in(a: &Formula, b: &Formula, sa: &mut Vec<String>, sb: &mut Vec<String>) -> bool {
    use Formula::*;
    match (a, b) {
        (Eq(a1, a2), Eq(b1, b2)) | (Lt(a1, a2), Lt(b1, b2)) => {
            term_alpha_eq(a1, b1, sa, sb) && term_alpha_eq(a2, b2, sa, sb)
        }
        (Not(x), Not(y)) => alpha_eq_in(x, y, sa, sb),
        (And(a1, a2), And(b1, b2))
        | (Or(a1, a2), Or(b1, b2))
        | (Implies(a1, a2), Implies(b1, b2))
        | (Iff(a1, a2), Iff(b1, b2)) => alpha_eq_in(a1, b1, sa, sb) && alpha_eq_in(a2, b2, sa, sb),
        (ForAll(x, fa), ForAll(y, fb)) | (Exists(x, fa), Exists(y, fb)) => {
            sa.push(x.clone());
            sb.push(y.clone());
            let r = alpha_eq_in(fa, fb, sa, sb);
            sa.pop();
            sb.pop();
            r
        }
        _ => false,
    }
}

fn normalize_term(t: &Term, map: &[(String, String)]) -> Term {
    match t {
        Term::Var(v) => match map.iter().rev().find(|(from, _)| from == v) {
            Some((_, to)) => Term::var(to.clone()),
            None => t.clone(),
        },
        Term::Zero | Term::One => t.clone(),
        Term::Add(l, r) => Term::add(normalize_term(l, map), normalize_term(r, map)),
        Term::Mul(l, r) => Term::mul(normalize_term(l, map), normalize_term(r, map)),
    }
}

fn normalize_in(
    f: &Formula,
    free: &BTreeSet<String>,
    counter: &mut usize,
    map: &mut Vec<(String, String)>,
) -> Formula {
    match f {
        Formula::Eq(l, r) => Formula::Eq(normalize_term(l, map), normalize_term(r, map)),
        Formula::Lt(l, r) => Formula::Lt(normalize_term(l, map), normalize_term(r, map)),
        Formula::Not(g) => Formula::not(normalize_in(g, free, counter, map)),
        Formula::And(l, r) => {
            let l = normalize_in(l, free, counter, map);
            Formula::and(l, normalize_in(r, free, counter, map))
        }
        Formula::Or(l, r) => {
            let l = normalize_in(l, free, counter, map);
            Formula::or(l, normalize_in(r, free, counter, map))
        }
        Formula::Implies(l, r) => {
            let l = normalize_in(l, free, counter, map);
            Formula::implies(l, normalize_in(r, free, counter, map))
        }
        Formula::Iff(l, r) => {
            let l = normalize_in(l, free, counter, map);
            Formula::iff(l, normalize_in(r, free, counter, map))
        }
        Formula::ForAll(b, g) | Formula::Exists(b, g) => {
            let name = loop {
                let cand = format!("v{counter}");
                *counter += 1;
                if !free.contains(&cand) {
                    break cand;
                }
            };
            map.push((b.clone(), name.clone()));
            let body = normalize_in(g, free, counter, map);
            map.pop();
            match f {
                Formula::ForAll(..) => Formula::forall(name, body),
                _ => Formula::exists(name, body),
            }
        }
    }
}

/// Serialized as its text form.
impl Serialize for Formula {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::print::print_text(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fol::parse_formula;

    fn p(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    #[test]
    fn substitute_into_atom() {
        let f = Formula::eq(Term::var("x"), Term::Zero);
        let g = f.substitute("x", &Term::numeral(1));
        assert_eq!(g, Formula::eq(Term::add(Term::Zero, Term::One), Term::Zero));
    }

    #[test]
    fn substitute_avoids_capture() {
        let f = Formula::exists("y", Formula::eq(Term::var("x"), Term::var("y")));
        let g = f.substitute("x", &Term::var("y"));
        match &g {
            Formula::Exists(b, body) => {
                assert_ne!(b, "y");
                assert_eq!(**body, Formula::eq(Term::var("y"), Term::var(b.clone())));
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(g.alpha_eq(&p("?w. y = w")));
    }

    #[test]
    fn substitute_ignores_bound_occurrence() {
        let f = Formula::forall("x", Formula::eq(Term::var("x"), Term::var("x")));
        assert_eq!(f.substitute("x", &Term::One), f);
    }

    #[test]
    fn alpha_equivalence_respects_binding_structure() {
        assert!(p("!x. ?y. x = y").alpha_eq(&p("!a. ?b. a = b")));
        assert!(!p("!x. ?y. x = y").alpha_eq(&p("!a. ?b. b = a")));
        assert!(!p("!x. x = y").alpha_eq(&p("!y. y = y")));
        assert!(p("!x. x = y").alpha_eq(&p("!z. z = y")));
    }

    #[test]
    fn alpha_normalize_skips_free_names() {
        let f = p("!x. x = v0");
        let n = f.alpha_normalize();
        assert_eq!(n, p("!v1. v1 = v0"));
        assert!(n.alpha_eq(&f));
    }

    #[test]
    fn fresh_var_strips_digits() {
        let avoid: BTreeSet<String> = ["y", "y1"].iter().map(|s| s.to_string()).collect();
        assert_eq!(fresh_var("y", &avoid), "y2");
        assert_eq!(fresh_var("y1", &avoid), "y2");
        assert_eq!(fresh_var("z", &avoid), "z");
    }

    #[test]
    fn empty_conjunction_is_truth() {
        assert_eq!(Formula::conj(vec![]), Formula::truth());
        let a = p("x = 0");
        assert_eq!(Formula::conj(vec![a.clone()]), a);
    }
}
