//! Literals and clauses.

use std::fmt;

use super::term::{match_term, PTerm, Signature, TRUE};

/// `lhs = rhs` or `lhs ≠ rhs`. Predicate atoms are `P(t̄) = ⊤`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lit {
    pub positive: bool,
    pub lhs: PTerm,
    pub rhs: PTerm,
}

impl Lit {
    pub fn eq(positive: bool, lhs: PTerm, rhs: PTerm) -> Lit {
        Lit { positive, lhs, rhs }
    }

    pub fn pred(positive: bool, atom: PTerm) -> Lit {
        Lit {
            positive,
            lhs: atom,
            rhs: PTerm::constant(TRUE),
        }
    }

    pub fn is_pred(&self) -> bool {
        self.rhs == PTerm::constant(TRUE)
    }

    pub fn weight(&self) -> usize {
        if self.is_pred() {
            self.lhs.weight()
        } else {
            self.lhs.weight() + self.rhs.weight()
        }
    }

    pub fn map(&self, f: &mut impl FnMut(&PTerm) -> PTerm) -> Lit {
        Lit {
            positive: self.positive,
            lhs: f(&self.lhs),
            rhs: f(&self.rhs),
        }
    }

    /// Same atom up to orientation.
    pub fn same_atom(&self, other: &Lit) -> bool {
        (self.lhs == other.lhs && self.rhs == other.rhs)
            || (self.lhs == other.rhs && self.rhs == other.lhs)
    }

    pub fn display<'a>(&'a self, sig: &'a Signature) -> LitDisplay<'a> {
        LitDisplay { l: self, sig }
    }
}

pub struct LitDisplay<'a> {
    l: &'a Lit,
    sig: &'a Signature,
}

impl fmt::Display for LitDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l = self.l;
        if l.is_pred() {
            if !l.positive {
                f.write_str("~")?;
            }
            write!(f, "{}", l.lhs.display(self.sig))
        } else {
            let op = if l.positive { "=" } else { "!=" };
            write!(f, "{} {op} {}", l.lhs.display(self.sig), l.rhs.display(self.sig))
        }
    }
}

/// A disjunction of literals with variables numbered `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Clause {
    pub lits: Vec<Lit>,
}

impl Clause {
    pub fn new(lits: Vec<Lit>) -> Clause {
        let mut c = Clause { lits };
        c.normalize_vars();
        c
    }

    pub fn is_empty(&self) -> bool {
        self.lits.is_empty()
    }

    pub fn weight(&self) -> usize {
        self.lits.iter().map(Lit::weight).sum()
    }

    pub fn max_var(&self) -> Option<u32> {
        self.lits
            .iter()
            .flat_map(|l| [l.lhs.max_var(), l.rhs.max_var()])
            .flatten()
            .max()
    }

    pub fn var_count(&self) -> u32 {
        self.max_var().map_or(0, |m| m + 1)
    }

    /// Renumbers variables in order of first occurrence.
    pub fn normalize_vars(&mut self) {
        let mut map: Vec<Option<u32>> = Vec::new();
        let mut next = 0u32;
        let mut rename = |t: &PTerm| {
            t.map_vars(&mut |v| {
                let i = v as usize;
                if map.len() <= i {
                    map.resize(i + 1, None);
                }
                let n = *map[i].get_or_insert_with(|| {
                    next += 1;
                    next - 1
                });
                PTerm::Var(n)
            })
        };
        self.lits = self.lits.iter().map(|l| l.map(&mut rename)).collect();
    }

    /// Tautologies: `t = t`, or a literal together with its complement.
    pub fn is_tautology(&self) -> bool {
        self.lits.iter().enumerate().any(|(i, l)| {
            (l.positive && l.lhs == l.rhs)
                || self.lits[i + 1..]
                    .iter()
                    .any(|m| m.positive != l.positive && m.same_atom(l))
        })
    }

    /// Drops `t ≠ t` literals and duplicates.
    pub fn cleanup(&mut self) {
        self.lits.retain(|l| l.positive || l.lhs != l.rhs);
        let mut kept: Vec<Lit> = Vec::with_capacity(self.lits.len());
        for l in self.lits.drain(..) {
            if !kept.iter().any(|k| k.positive == l.positive && k.same_atom(&l)) {
                kept.push(l);
            }
        }
        self.lits = kept;
    }

    pub fn display<'a>(&'a self, sig: &'a Signature) -> ClauseDisplay<'a> {
        ClauseDisplay { c: self, sig }
    }
}

pub struct ClauseDisplay<'a> {
    c: &'a Clause,
    sig: &'a Signature,
}

impl fmt::Display for ClauseDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.c.lits.is_empty() {
            return f.write_str("$false");
        }
        for (i, l) in self.c.lits.iter().enumerate() {
            if i > 0 {
                f.write_str(" | ")?;
            }
            write!(f, "{}", l.display(self.sig))?;
        }
        Ok(())
    }
}

/// Whether some instance of `general` is a sub-multiset of `specific`.
pub fn subsumes(general: &Clause, specific: &Clause) -> bool {
    // instances are no lighter, and literals map injectively
    if general.lits.len() > specific.lits.len() || general.weight() > specific.weight() {
        return false;
    }
    let mut used = vec![false; specific.lits.len()];
    subsume_from(&general.lits, specific, &mut used, &mut Vec::new())
}

fn subsume_from<'t>(
    rest: &[Lit],
    specific: &'t Clause,
    used: &mut Vec<bool>,
    sub: &mut Vec<Option<&'t PTerm>>,
) -> bool {
    let Some((l, rest)) = rest.split_first() else {
        return true;
    };
    for (j, m) in specific.lits.iter().enumerate() {
        if used[j] || m.positive != l.positive {
            continue;
        }
        for flip in [false, true] {
            let (ml, mr) = if flip { (&m.rhs, &m.lhs) } else { (&m.lhs, &m.rhs) };
            let mark = sub.clone();
            if match_term(&l.lhs, ml, sub) && match_term(&l.rhs, mr, sub) {
                used[j] = true;
                if subsume_from(rest, specific, used, sub) {
                    return true;
                }
                used[j] = false;
            }
            *sub = mark;
        }
    }
    false
}

/// `lit` is an instance of `unit` (an equation used in either orientation).
pub fn unit_matches(unit: &Lit, lit: &Lit) -> bool {
    [(&lit.lhs, &lit.rhs), (&lit.rhs, &lit.lhs)].iter().any(|(a, b)| {
        let mut sub = Vec::new();
        match_term(&unit.lhs, a, &mut sub) && match_term(&unit.rhs, b, &mut sub)
    })
}
