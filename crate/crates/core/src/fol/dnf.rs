//! Disjunctive normal form for quantifier-free formulas.

use serde::Serialize;
use thiserror::Error;

use super::formula::Formula;
use super::term::Term;

/// Default cap on the total number of literals produced.
pub const DEFAULT_LITERAL_CAP: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DnfError {
    #[error("formula contains a quantifier")]
    Quantified,
    #[error("formula mentions `<`; only ring-language formulas are accepted")]
    UsesOrder,
    #[error("disjunctive normal form exceeds {cap} literals")]
    TooLarge { cap: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Relation {
    Eq,
    Lt,
}

/// A possibly negated atom `lhs R rhs`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Literal {
    pub positive: bool,
    pub rel: Relation,
    pub lhs: Term,
    pub rhs: Term,
}

impl Literal {
    pub fn to_formula(&self) -> Formula {
        let atom = match self.rel {
            Relation::Eq => Formula::eq(self.lhs.clone(), self.rhs.clone()),
            Relation::Lt => Formula::lt(self.lhs.clone(), self.rhs.clone()),
        };
        if self.positive {
            atom
        } else {
            Formula::not(atom)
        }
    }
}

/// One conjunct of a ring-language DNF: `⋀ sᵢ = tᵢ ∧ ⋀ uⱼ ≠ vⱼ`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct DnfConjunct {
    pub equalities: Vec<(Term, Term)>,
    pub inequations: Vec<(Term, Term)>,
}

impl DnfConjunct {
    pub fn to_formula(&self) -> Formula {
        let eqs = self
            .equalities
            .iter()
            .map(|(s, t)| Formula::eq(s.clone(), t.clone()));
        let neqs = self
            .inequations
            .iter()
            .map(|(s, t)| Formula::not(Formula::eq(s.clone(), t.clone())));
        Formula::conj(eqs.chain(neqs))
    }
}

/// DNF over literals with both `=` and `<`, as a list of conjunctions.
///
/// An empty outer list is never produced: the formula has at least one atom.
pub fn literal_dnf(f: &Formula, cap: usize) -> Result<Vec<Vec<Literal>>, DnfError> {
    let mut budget = Budget { used: 0, cap };
    dnf(f, true, &mut budget)
}

struct Budget {
    used: usize,
    cap: usize,
}

impl Budget {
    fn charge(&mut self, n: usize) -> Result<(), DnfError> {
        self.used = self.used.saturating_add(n);
        if self.used > self.cap {
            Err(DnfError::TooLarge { cap: self.cap })
        } else {
            Ok(())
        }
    }
}

fn atom_literal(f: &Formula, positive: bool) -> Literal {
    let (rel, lhs, rhs) = match f {
        Formula::Eq(l, r) => (Relation::Eq, l, r),
        Formula::Lt(l, r) => (Relation::Lt, l, r),
        _ => unreachable!("atom expected"),
    };
    Literal {
        positive,
        rel,
        lhs: lhs.clone(),
        rhs: rhs.clone(),
    }
}

fn or_dnf(mut a: Vec<Vec<Literal>>, b: Vec<Vec<Literal>>) -> Vec<Vec<Literal>> {
    a.extend(b);
    a
}

fn and_dnf(
    a: Vec<Vec<Literal>>,
    b: Vec<Vec<Literal>>,
    budget: &mut Budget,
) -> Result<Vec<Vec<Literal>>, DnfError> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for ca in &a {
        for cb in &b {
            budget.charge(ca.len() + cb.len())?;
            let mut c = ca.clone();
            for lit in cb {
                if !c.contains(lit) {
                    c.push(lit.clone());
                }
            }
            out.push(c);
        }
    }
    Ok(out)
}

// DNF of `f` if `positive`, else of `¬f`.
fn dnf(f: &Formula, positive: bool, budget: &mut Budget) -> Result<Vec<Vec<Literal>>, DnfError> {
    match f {
        Formula::Eq(..) | Formula::Lt(..) => {
            budget.charge(1)?;
            Ok(vec![vec![atom_literal(f, positive)]])
        }
        Formula::Not(g) => dnf(g, !positive, budget),
        Formula::And(l, r) => {
            let a = dnf(l, positive, budget)?;
            let b = dnf(r, positive, budget)?;
            if positive {
                and_dnf(a, b, budget)
            } else {
                Ok(or_dnf(a, b))
            }
        }
        Formula::Or(l, r) => {
            let a = dnf(l, positive, budget)?;
            let b = dnf(r, positive, budget)?;
            if positive {
                Ok(or_dnf(a, b))
            } else {
                and_dnf(a, b, budget)
            }
        }
        Formula::Implies(l, r) => {
            let a = dnf(l, !positive, budget)?;
            let b = dnf(r, positive, budget)?;
            if positive {
                Ok(or_dnf(a, b))
            } else {
                and_dnf(a, b, budget)
            }
        }
        Formula::Iff(l, r) => {
            // l ↔ r  ≡  (l ∧ r) ∨ (¬l ∧ ¬r);  ¬(l ↔ r)  ≡  (l ∧ ¬r) ∨ (¬l ∧ r)
            let lp = dnf(l, true, budget)?;
            let ln = dnf(l, false, budget)?;
            let rp = dnf(r, true, budget)?;
            let rn = dnf(r, false, budget)?;
            let (first, second) = if positive {
                (and_dnf(lp, rp, budget)?, and_dnf(ln, rn, budget)?)
            } else {
                (and_dnf(lp, rn, budget)?, and_dnf(ln, rp, budget)?)
            };
            Ok(or_dnf(first, second))
        }
        Formula::ForAll(..) | Formula::Exists(..) => Err(DnfError::Quantified),
    }
}

/// DNF of a quantifier-free ring-language formula, with the default size cap.
pub fn to_dnf(f: &Formula) -> Result<Vec<DnfConjunct>, DnfError> {
    to_dnf_capped(f, DEFAULT_LITERAL_CAP)
}

pub fn to_dnf_capped(f: &Formula, cap: usize) -> Result<Vec<DnfConjunct>, DnfError> {
    if f.has_quantifier() {
        return Err(DnfError::Quantified);
    }
    if f.mentions_lt() {
        return Err(DnfError::UsesOrder);
    }
    let raw = literal_dnf(f, cap)?;
    Ok(raw
        .into_iter()
        .map(|lits| {
            let mut c = DnfConjunct::default();
            for l in lits {
                if l.positive {
                    c.equalities.push((l.lhs, l.rhs));
                } else {
                    c.inequations.push((l.lhs, l.rhs));
                }
            }
            c
        })
        .collect())
}

/// The disjunction of the conjuncts as a formula.
pub fn dnf_to_formula(conjuncts: &[DnfConjunct]) -> Formula {
    Formula::disj(conjuncts.iter().map(DnfConjunct::to_formula))
}
