//! Clausal normal form: NNF, Skolemization, CNF by distribution.

use std::collections::{BTreeSet, HashMap};

use thiserror::Error;

use super::clause::{Clause, Lit};
use super::term::{PTerm, Signature, Sym, LESS, ONE, PLUS, TIMES, ZERO};
use crate::fol::{Formula, Term};

/// Default cap on literals produced by distribution.
pub const DEFAULT_CNF_CAP: usize = 200_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClausifyError {
    #[error("clause normal form exceeds {cap} literals")]
    TooLarge { cap: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClausifyOptions {
    /// Add reflexivity, symmetry, transitivity and congruence clauses, for
    /// provers that do not build in equality.
    pub equality_axioms: bool,
    pub max_literals: usize,
}

impl Default for ClausifyOptions {
    fn default() -> Self {
        ClausifyOptions {
            equality_axioms: true,
            max_literals: DEFAULT_CNF_CAP,
        }
    }
}

/// A clause together with where it came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InputClause {
    pub clause: Clause,
    pub source: String,
    /// Derived from the negated goal.
    pub from_goal: bool,
}

#[derive(Clone, Debug)]
pub struct ClauseSet {
    pub sig: Signature,
    pub clauses: Vec<InputClause>,
}

impl ClauseSet {
    pub fn render(&self) -> Vec<String> {
        self.clauses
            .iter()
            .map(|c| format!("{}: {}", c.source, c.clause.display(&self.sig)))
            .collect()
    }
}

/// CNF of `axioms ∧ ¬goal` with equality axioms added.
pub fn clausify(axioms: &[Formula], goal: &Formula) -> Result<ClauseSet, ClausifyError> {
    let named: Vec<(String, Formula)> = axioms
        .iter()
        .enumerate()
        .map(|(i, f)| (format!("ax{}", i + 1), f.clone()))
        .collect();
    clausify_with(&named, Some(goal), ClausifyOptions::default())
}

/// CNF of the named inputs and, if given, the negation of `goal`. Free
/// variables are read as universally quantified.
pub fn clausify_with(
    inputs: &[(String, Formula)],
    goal: Option<&Formula>,
    opts: ClausifyOptions,
) -> Result<ClauseSet, ClausifyError> {
    let mut cx = Cnf {
        sig: Signature::new(),
        fresh: 0,
        budget: opts.max_literals,
        used: 0,
    };
    let mut out = Vec::new();
    for (name, f) in inputs {
        for c in cx.clauses_of(&f.universal_closure(), true)? {
            out.push(InputClause {
                clause: c,
                source: name.clone(),
                from_goal: false,
            });
        }
    }
    if let Some(g) = goal {
        for c in cx.clauses_of(&g.universal_closure(), false)? {
            out.push(InputClause {
                clause: c,
                source: "negated_goal".to_string(),
                from_goal: true,
            });
        }
    }
    if opts.equality_axioms {
        for c in equality_axioms(&cx.sig) {
            out.push(InputClause {
                clause: c,
                source: "equality".to_string(),
                from_goal: false,
            });
        }
    }
    Ok(ClauseSet { sig: cx.sig, clauses: out })
}

#[derive(Clone, Debug)]
enum STerm {
    Var(String),
    App(Sym, Vec<STerm>),
}

impl STerm {
    fn subst(&self, v: &str, by: &STerm) -> STerm {
        match self {
            STerm::Var(w) if w == v => by.clone(),
            STerm::Var(_) => self.clone(),
            STerm::App(s, args) => STerm::App(*s, args.iter().map(|a| a.subst(v, by)).collect()),
        }
    }

    fn vars(&self, out: &mut BTreeSet<String>) {
        match self {
            STerm::Var(v) => {
                out.insert(v.clone());
            }
            STerm::App(_, args) => args.iter().for_each(|a| a.vars(out)),
        }
    }
}

#[derive(Clone, Debug)]
struct SLit {
    positive: bool,
    lhs: STerm,
    rhs: STerm,
}

#[derive(Clone, Debug)]
enum Nnf {
    Lit(SLit),
    And(Vec<Nnf>),
    Or(Vec<Nnf>),
    All(String, Box<Nnf>),
    Ex(String, Box<Nnf>),
}

impl Nnf {
    fn subst(&self, v: &str, by: &STerm) -> Nnf {
        match self {
            Nnf::Lit(l) => Nnf::Lit(SLit {
                lhs: l.lhs.subst(v, by),
                rhs: l.rhs.subst(v, by),
                ..l.clone()
            }),
            Nnf::And(xs) => Nnf::And(xs.iter().map(|x| x.subst(v, by)).collect()),
            Nnf::Or(xs) => Nnf::Or(xs.iter().map(|x| x.subst(v, by)).collect()),
            Nnf::All(w, b) => Nnf::All(w.clone(), Box::new(b.subst(v, by))),
            Nnf::Ex(w, b) => Nnf::Ex(w.clone(), Box::new(b.subst(v, by))),
        }
    }

    fn free_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Nnf::Lit(l) => {
                l.lhs.vars(out);
                l.rhs.vars(out);
            }
            Nnf::And(xs) | Nnf::Or(xs) => xs.iter().for_each(|x| x.free_vars(out)),
            Nnf::All(w, b) | Nnf::Ex(w, b) => {
                let mut inner = BTreeSet::new();
                b.free_vars(&mut inner);
                inner.remove(w);
                out.extend(inner);
            }
        }
    }
}

struct Cnf {
    sig: Signature,
    fresh: usize,
    budget: usize,
    used: usize,
}

impl Cnf {
    fn clauses_of(&mut self, f: &Formula, positive: bool) -> Result<Vec<Clause>, ClausifyError> {
        let nnf = self.nnf(f, positive, &mut Vec::new());
        let qf = self.skolemize(nnf, &mut Vec::new());
        let raw = self.cnf(&qf)?;
        let mut out = Vec::new();
        for lits in raw {
            let mut names: HashMap<String, u32> = HashMap::new();
            let mut conv = |t: &STerm| to_pterm(t, &mut names);
            let lits: Vec<Lit> = lits
                .iter()
                .map(|l| Lit::eq(l.positive, conv(&l.lhs), conv(&l.rhs)))
                .collect();
            let c = Clause::new(lits);
            if !c.is_tautology() {
                out.push(c);
            }
        }
        Ok(out)
    }

    fn term(&self, t: &Term, scope: &[(String, String)]) -> STerm {
        match t {
            Term::Var(v) => {
                let name = scope
                    .iter()
                    .rev()
                    .find(|(orig, _)| orig == v)
                    .map_or_else(|| v.clone(), |(_, u)| u.clone());
                STerm::Var(name)
            }
            Term::Zero => STerm::App(ZERO, Vec::new()),
            Term::One => STerm::App(ONE, Vec::new()),
            Term::Add(l, r) => STerm::App(PLUS, vec![self.term(l, scope), self.term(r, scope)]),
            Term::Mul(l, r) => STerm::App(TIMES, vec![self.term(l, scope), self.term(r, scope)]),
        }
    }

    // NNF of f (or ¬f), renaming every bound variable apart.
    fn nnf(&mut self, f: &Formula, pos: bool, scope: &mut Vec<(String, String)>) -> Nnf {
        match f {
            Formula::Eq(l, r) => Nnf::Lit(SLit {
                positive: pos,
                lhs: self.term(l, scope),
                rhs: self.term(r, scope),
            }),
            Formula::Lt(l, r) => Nnf::Lit(SLit {
                positive: pos,
                lhs: STerm::App(LESS, vec![self.term(l, scope), self.term(r, scope)]),
                rhs: STerm::App(super::term::TRUE, Vec::new()),
            }),
            Formula::Not(g) => self.nnf(g, !pos, scope),
            Formula::And(l, r) | Formula::Or(l, r) => {
                let a = self.nnf(l, pos, scope);
                let b = self.nnf(r, pos, scope);
                if matches!(f, Formula::And(..)) == pos {
                    Nnf::And(vec![a, b])
                } else {
                    Nnf::Or(vec![a, b])
                }
            }
            Formula::Implies(l, r) => {
                let a = self.nnf(l, !pos, scope);
                let b = self.nnf(r, pos, scope);
                if pos {
                    Nnf::Or(vec![a, b])
                } else {
                    Nnf::And(vec![a, b])
                }
            }
            Formula::Iff(l, r) => {
                let lp = self.nnf(l, true, scope);
                let ln = self.nnf(l, false, scope);
                let rp = self.nnf(r, true, scope);
                let rn = self.nnf(r, false, scope);
                if pos {
                    // (¬l ∨ r) ∧ (l ∨ ¬r)
                    Nnf::And(vec![Nnf::Or(vec![ln, rp]), Nnf::Or(vec![lp, rn])])
                } else {
                    // (l ∨ r) ∧ (¬l ∨ ¬r)
                    Nnf::And(vec![Nnf::Or(vec![lp, rp]), Nnf::Or(vec![ln, rn])])
                }
            }
            Formula::ForAll(v, g) | Formula::Exists(v, g) => {
                self.fresh += 1;
                let unique = format!("{v}#{}", self.fresh);
                scope.push((v.clone(), unique.clone()));
                let body = self.nnf(g, pos, scope);
                scope.pop();
                if matches!(f, Formula::ForAll(..)) == pos {
                    Nnf::All(unique, Box::new(body))
                } else {
                    Nnf::Ex(unique, Box::new(body))
                }
            }
        }
    }

    fn skolemize(&mut self, n: Nnf, universals: &mut Vec<String>) -> Nnf {
        match n {
            Nnf::Lit(_) => n,
            Nnf::And(xs) => Nnf::And(xs.into_iter().map(|x| self.skolemize(x, universals)).collect()),
            Nnf::Or(xs) => Nnf::Or(xs.into_iter().map(|x| self.skolemize(x, universals)).collect()),
            Nnf::All(v, b) => {
                universals.push(v);
                let out = self.skolemize(*b, universals);
                universals.pop();
                out
            }
            Nnf::Ex(v, b) => {
                let mut fv = BTreeSet::new();
                Nnf::Ex(v.clone(), b.clone()).free_vars(&mut fv);
                let args: Vec<STerm> = universals
                    .iter()
                    .filter(|u| fv.contains(*u))
                    .map(|u| STerm::Var(u.clone()))
                    .collect();
                let sk = self.sig.fresh_skolem(args.len());
                let body = b.subst(&v, &STerm::App(sk, args));
                self.skolemize(body, universals)
            }
        }
    }

    fn charge(&mut self, n: usize) -> Result<(), ClausifyError> {
        self.used += n;
        if self.used > self.budget {
            Err(ClausifyError::TooLarge { cap: self.budget })
        } else {
            Ok(())
        }
    }

    fn cnf(&mut self, n: &Nnf) -> Result<Vec<Vec<SLit>>, ClausifyError> {
        match n {
            Nnf::Lit(l) => {
                self.charge(1)?;
                Ok(vec![vec![l.clone()]])
            }
            Nnf::And(xs) => {
                let mut out = Vec::new();
                for x in xs {
                    out.extend(self.cnf(x)?);
                }
                Ok(out)
            }
            Nnf::Or(xs) => {
                let mut acc: Vec<Vec<SLit>> = vec![Vec::new()];
                for x in xs {
                    let part = self.cnf(x)?;
                    let mut next = Vec::with_capacity(acc.len() * part.len());
                    for a in &acc {
                        for p in &part {
                            self.charge(a.len() + p.len())?;
                            let mut c = a.clone();
                            c.extend(p.iter().cloned());
                            next.push(c);
                        }
                    }
                    acc = next;
                }
                Ok(acc)
            }
            Nnf::All(..) | Nnf::Ex(..) => unreachable!("skolemized"),
        }
    }
}

fn to_pterm(t: &STerm, names: &mut HashMap<String, u32>) -> PTerm {
    match t {
        STerm::Var(v) => {
            let next = names.len() as u32;
            PTerm::Var(*names.entry(v.clone()).or_insert(next))
        }
        STerm::App(s, args) => PTerm::App(*s, args.iter().map(|a| to_pterm(a, names)).collect()),
    }
}

fn equality_axioms(sig: &Signature) -> Vec<Clause> {
    let v = PTerm::Var;
    let mut out = vec![
        Clause::new(vec![Lit::eq(true, v(0), v(0))]),
        Clause::new(vec![Lit::eq(false, v(0), v(1)), Lit::eq(true, v(1), v(0))]),
        Clause::new(vec![
            Lit::eq(false, v(0), v(1)),
            Lit::eq(false, v(1), v(2)),
            Lit::eq(true, v(0), v(2)),
        ]),
    ];
    let mut congruence = |s: Sym, arity: usize, pred: bool| {
        for i in 0..arity {
            // x ≠ y ∨ f(…x…) = f(…y…), other arguments are variables 2, 3, …
            let args = |hole: PTerm| -> Vec<PTerm> {
                (0..arity)
                    .map(|j| if j == i { hole.clone() } else { v(2 + j as u32) })
                    .collect()
            };
            let l = PTerm::app(s, args(v(0)));
            let r = PTerm::app(s, args(v(1)));
            let lits = if pred {
                vec![Lit::eq(false, v(0), v(1)), Lit::pred(false, l), Lit::pred(true, r)]
            } else {
                vec![Lit::eq(false, v(0), v(1)), Lit::eq(true, l, r)]
            };
            out.push(Clause::new(lits));
        }
    };
    for (s, arity) in sig.functions() {
        congruence(s, arity, false);
    }
    congruence(LESS, 2, true);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fol::parse_formula;

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    #[test]
    fn negated_ground_goal() {
        let cs = clausify(&[], &f("0 = 0")).unwrap();
        let lines = cs.render();
        assert_eq!(lines[0], "negated_goal: zero != zero");
        assert!(lines.contains(&"equality: X0 = X0".to_string()));
        // congruence for plus and times in both arguments, less in both
        assert_eq!(lines.len(), 1 + 3 + 4 + 2);
    }

    #[test]
    fn universal_goal_gets_skolem_constant() {
        let opts = ClausifyOptions {
            equality_axioms: false,
            ..ClausifyOptions::default()
        };
        let cs = clausify_with(&[], Some(&f("!x. x = x")), opts).unwrap();
        assert_eq!(cs.render(), ["negated_goal: sk0 != sk0"]);
    }

    #[test]
    fn iff_and_existentials() {
        let opts = ClausifyOptions {
            equality_axioms: false,
            ..ClausifyOptions::default()
        };
        let ax = f("!x. !y. (x < y <-> ?z. (x + z) + 1 = y)");
        let cs = clausify_with(&[("p14".into(), ax)], None, opts).unwrap();
        assert_eq!(
            cs.render(),
            [
                "p14: ~less(X0, X1) | plus(plus(X0, skf0(X0, X1)), one) = X1",
                "p14: less(X0, X1) | plus(plus(X0, X2), one) != X1",
            ]
        );
    }

    #[test]
    fn skolem_arguments_are_only_relevant_universals() {
        let opts = ClausifyOptions {
            equality_axioms: false,
            ..ClausifyOptions::default()
        };
        let ax = f("!x. !y. ?z. z = x");
        let cs = clausify_with(&[("a".into(), ax)], None, opts).unwrap();
        assert_eq!(cs.render(), ["a: skf0(X0) = X0"]);
    }

    #[test]
    fn distribution_cap() {
        let parts: Vec<String> = (0..14).map(|i| format!("(a{i} = 0 & b{i} = 0)")).collect();
        let goal = f(&parts.join(" | "));
        let opts = ClausifyOptions {
            equality_axioms: false,
            max_literals: 1000,
        };
        assert_eq!(
            clausify_with(&[("g".into(), goal)], None, opts).unwrap_err(),
            ClausifyError::TooLarge { cap: 1000 }
        );
    }
}
