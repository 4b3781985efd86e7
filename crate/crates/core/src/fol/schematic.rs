use std::collections::BTreeSet;

use super::formula::{fresh_var, Formula};
use super::term::Term;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Connective {
    And,
    Or,
    Implies,
    Iff,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Quantifier {
    ForAll,
    Exists,
}

/// A formula that may also contain atoms `X(t)` for one distinguished unary
/// predicate symbol `X`.
///
/// Hole-free subtrees are always collapsed into [`Schematic::Plain`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Schematic {
    Plain(Formula),
    Hole(Term),
    Not(Box<Schematic>),
    Bin(Connective, Box<Schematic>, Box<Schematic>),
    Quant(Quantifier, String, Box<Schematic>),
}

impl Schematic {
    pub fn not(s: Schematic) -> Schematic {
        match s {
            Schematic::Plain(f) => Schematic::Plain(Formula::not(f)),
            other => Schematic::Not(Box::new(other)),
        }
    }

    pub fn bin(op: Connective, l: Schematic, r: Schematic) -> Schematic {
        match (l, r) {
            (Schematic::Plain(l), Schematic::Plain(r)) => Schematic::Plain(match op {
                Connective::And => Formula::and(l, r),
                Connective::Or => Formula::or(l, r),
                Connective::Implies => Formula::implies(l, r),
                Connective::Iff => Formula::iff(l, r),
            }),
            (l, r) => Schematic::Bin(op, Box::new(l), Box::new(r)),
        }
    }

    pub fn quant(q: Quantifier, v: String, body: Schematic) -> Schematic {
        match body {
            Schematic::Plain(f) => Schematic::Plain(match q {
                Quantifier::ForAll => Formula::forall(v, f),
                Quantifier::Exists => Formula::exists(v, f),
            }),
            other => Schematic::Quant(q, v, Box::new(other)),
        }
    }

    pub fn as_formula(&self) -> Option<&Formula> {
        match self {
            Schematic::Plain(f) => Some(f),
            _ => None,
        }
    }

    pub fn hole_count(&self) -> usize {
        match self {
            Schematic::Plain(_) => 0,
            Schematic::Hole(_) => 1,
            Schematic::Not(s) | Schematic::Quant(_, _, s) => s.hole_count(),
            Schematic::Bin(_, l, r) => l.hole_count() + r.hole_count(),
        }
    }

    /// Every variable name occurring anywhere.
    pub fn all_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_all(&mut out);
        out
    }

    fn collect_all(&self, out: &mut BTreeSet<String>) {
        match self {
            Schematic::Plain(f) => out.extend(f.all_vars()),
            Schematic::Hole(t) => t.collect_vars(out),
            Schematic::Not(s) => s.collect_all(out),
            Schematic::Bin(_, l, r) => {
                l.collect_all(out);
                r.collect_all(out);
            }
            Schematic::Quant(_, v, s) => {
                out.insert(v.clone());
                s.collect_all(out);
            }
        }
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        match self {
            Schematic::Plain(f) => f.free_vars(),
            Schematic::Hole(t) => t.vars(),
            Schematic::Not(s) => s.free_vars(),
            Schematic::Bin(_, l, r) => {
                let mut out = l.free_vars();
                out.extend(r.free_vars());
                out
            }
            Schematic::Quant(_, v, s) => {
                let mut out = s.free_vars();
                out.remove(v);
                out
            }
        }
    }

    /// Renames free occurrences of `from` to `to`; `to` must be unused.
    fn rename_free(&self, from: &str, to: &str) -> Schematic {
        match self {
            Schematic::Plain(f) => {
                Schematic::Plain(f.substitute(from, &Term::var(to)))
            }
            Schematic::Hole(t) => Schematic::Hole(t.substitute(from, &Term::var(to))),
            Schematic::Not(s) => Schematic::Not(Box::new(s.rename_free(from, to))),
            Schematic::Bin(op, l, r) => Schematic::Bin(
                *op,
                Box::new(l.rename_free(from, to)),
                Box::new(r.rename_free(from, to)),
            ),
            Schematic::Quant(_, v, _) if v == from => self.clone(),
            Schematic::Quant(q, v, s) => {
                Schematic::Quant(*q, v.clone(), Box::new(s.rename_free(from, to)))
            }
        }
    }

    /// Renames binders that collide with `avoid`.
    pub fn rename_binders_away(&self, avoid: &BTreeSet<String>) -> Schematic {
        match self {
            Schematic::Plain(f) => Schematic::Plain(f.rename_binders_away(avoid)),
            Schematic::Hole(_) => self.clone(),
            Schematic::Not(s) => Schematic::Not(Box::new(s.rename_binders_away(avoid))),
            Schematic::Bin(op, l, r) => Schematic::Bin(
                *op,
                Box::new(l.rename_binders_away(avoid)),
                Box::new(r.rename_binders_away(avoid)),
            ),
            Schematic::Quant(q, v, s) => {
                let body = s.rename_binders_away(avoid);
                if avoid.contains(v) {
                    let mut taken = body.all_vars();
                    taken.extend(avoid.iter().cloned());
                    let fresh = fresh_var(v, &taken);
                    let body = body.rename_free(v, &fresh);
                    Schematic::Quant(*q, fresh, Box::new(body))
                } else {
                    Schematic::Quant(*q, v.clone(), Box::new(body))
                }
            }
        }
    }

    /// Replaces every hole `X(t)` by `fill(t)` and returns the resulting formula.
    pub fn fill(&self, fill: &mut dyn FnMut(&Term) -> Formula) -> Formula {
        match self {
            Schematic::Plain(f) => f.clone(),
            Schematic::Hole(t) => fill(t),
            Schematic::Not(s) => Formula::not(s.fill(fill)),
            Schematic::Bin(op, l, r) => {
                let l = l.fill(fill);
                let r = r.fill(fill);
                match op {
                    Connective::And => Formula::and(l, r),
                    Connective::Or => Formula::or(l, r),
                    Connective::Implies => Formula::implies(l, r),
                    Connective::Iff => Formula::iff(l, r),
                }
            }
            Schematic::Quant(q, v, s) => {
                let body = s.fill(fill);
                match q {
                    Quantifier::ForAll => Formula::forall(v.clone(), body),
                    Quantifier::Exists => Formula::exists(v.clone(), body),
                }
            }
        }
    }
}
