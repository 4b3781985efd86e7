use std::collections::BTreeSet;
use std::fmt;

use serde::{Serialize, Serializer};

/// A term over `{0, 1, +, ×}` with named variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(String),
    Zero,
    One,
    Add(Box<Term>, Box<Term>),
    Mul(Box<Term>, Box<Term>),
}

impl Term {
    pub fn var(name: impl Into<String>) -> Term {
        Term::Var(name.into())
    }

    pub fn add(l: Term, r: Term) -> Term {
        Term::Add(Box::new(l), Box::new(r))
    }

    pub fn mul(l: Term, r: Term) -> Term {
        Term::Mul(Box::new(l), Box::new(r))
    }

    /// The closed term `(…((0+1)+1)+…)+1` with `n` ones.
    pub fn numeral(n: u64) -> Term {
        Term::Zero.plus_ones(n)
    }

    /// `self` followed by `k` applications of `+1`, left-nested.
    ///
    /// This is how `x+k` is spelled throughout: `x+0` is `x` itself, `x+2` is
    /// `(x+1)+1`. With `self = 0` it yields `numeral(k)`.
    pub fn plus_ones(self, k: u64) -> Term {
        (0..k).fold(self, |acc, _| Term::add(acc, Term::One))
    }

    /// Recognizes `numeral(n)`. `One` on its own is not a numeral.
    pub fn as_numeral(&self) -> Option<u64> {
        let mut n = 0u64;
        let mut cur = self;
        loop {
            match cur {
                Term::Zero => return Some(n),
                Term::Add(l, r) if **r == Term::One => {
                    n += 1;
                    cur = l;
                }
                _ => return None,
            }
        }
    }

    pub fn is_var(&self, name: &str) -> bool {
        matches!(self, Term::Var(v) if v == name)
    }

    pub fn contains_var(&self, name: &str) -> bool {
        match self {
            Term::Var(v) => v == name,
            Term::Zero | Term::One => false,
            Term::Add(l, r) | Term::Mul(l, r) => l.contains_var(name) || r.contains_var(name),
        }
    }

    pub fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Var(v) => {
                out.insert(v.clone());
            }
            Term::Zero | Term::One => {}
            Term::Add(l, r) | Term::Mul(l, r) => {
                l.collect_vars(out);
                r.collect_vars(out);
            }
        }
    }

    pub fn vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    /// Replaces every occurrence of `name` by `by`.
    pub fn substitute(&self, name: &str, by: &Term) -> Term {
        match self {
            Term::Var(v) if v == name => by.clone(),
            Term::Var(_) | Term::Zero | Term::One => self.clone(),
            Term::Add(l, r) => Term::add(l.substitute(name, by), r.substitute(name, by)),
            Term::Mul(l, r) => Term::mul(l.substitute(name, by), r.substitute(name, by)),
        }
    }

    pub(crate) fn rename_var(&self, from: &str, to: &str) -> Term {
        self.substitute(from, &Term::var(to))
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) | Term::Zero | Term::One => 1,
            Term::Add(l, r) | Term::Mul(l, r) => 1 + l.size() + r.size(),
        }
    }

    pub fn count_ones(&self) -> usize {
        match self {
            Term::One => 1,
            Term::Var(_) | Term::Zero => 0,
            Term::Add(l, r) | Term::Mul(l, r) => l.count_ones() + r.count_ones(),
        }
    }

    /// Sum of the terms, left-folded; the empty sum is `0`.
    pub fn sum(terms: impl IntoIterator<Item = Term>) -> Term {
        terms
            .into_iter()
            .reduce(Term::add)
            .unwrap_or(Term::Zero)
    }

    /// Product of the terms, left-folded; the empty product is `1`.
    pub fn product(terms: impl IntoIterator<Item = Term>) -> Term {
        terms
            .into_iter()
            .reduce(Term::mul)
            .unwrap_or(Term::One)
    }
}

/// Serialized as its text form.
impl Serialize for Term {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::print::term_text(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numerals_are_left_nested() {
        assert_eq!(Term::numeral(0), Term::Zero);
        assert_eq!(Term::numeral(1), Term::add(Term::Zero, Term::One));
        assert_eq!(
            Term::numeral(2),
            Term::add(Term::add(Term::Zero, Term::One), Term::One)
        );
        for n in 0..20 {
            let t = Term::numeral(n);
            assert_eq!(t.count_ones() as u64, n);
            assert_eq!(t.as_numeral(), Some(n));
        }
        assert_eq!(Term::One.as_numeral(), None);
    }

    #[test]
    fn plus_ones_zero_is_identity() {
        assert_eq!(Term::var("x").plus_ones(0), Term::var("x"));
        assert_eq!(
            Term::var("x").plus_ones(1),
            Term::add(Term::var("x"), Term::One)
        );
    }

    #[test]
    fn empty_sum_and_product() {
        assert_eq!(Term::sum(vec![]), Term::Zero);
        assert_eq!(Term::product(vec![]), Term::One);
    }
}
