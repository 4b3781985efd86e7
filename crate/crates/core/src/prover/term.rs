//! Terms, signature, unification, matching, and the Knuth–Bendix order.
//!
//! Predicate atoms `P(t̄)` are represented as equations `P(t̄) = ⊤`. Variables
//! range over individuals only, so unification never binds a variable to a
//! predicate term or to `⊤`.

use std::borrow::Cow;
use std::cmp::Ordering;
use std::fmt;

pub type Sym = u32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SymKind {
    /// The constant `⊤` that predicate atoms are equated with.
    True,
    Func,
    Pred,
}

#[derive(Clone, Debug)]
struct SymInfo {
    name: String,
    arity: usize,
    kind: SymKind,
    skolem: bool,
}

/// Symbols in use. The first four are fixed: `⊤`, `zero`, `one`, then
/// `plus`, `times`, `less` follow.
#[derive(Clone, Debug)]
pub struct Signature {
    syms: Vec<SymInfo>,
}

pub const TRUE: Sym = 0;
pub const ZERO: Sym = 1;
pub const ONE: Sym = 2;
pub const PLUS: Sym = 3;
pub const TIMES: Sym = 4;
pub const LESS: Sym = 5;

impl Default for Signature {
    fn default() -> Self {
        Signature::new()
    }
}

impl Signature {
    pub fn new() -> Signature {
        let mut s = Signature { syms: Vec::new() };
        s.add("$true", 0, SymKind::True, false);
        s.add("zero", 0, SymKind::Func, false);
        s.add("one", 0, SymKind::Func, false);
        s.add("plus", 2, SymKind::Func, false);
        s.add("times", 2, SymKind::Func, false);
        s.add("less", 2, SymKind::Pred, false);
        s
    }

    fn add(&mut self, name: &str, arity: usize, kind: SymKind, skolem: bool) -> Sym {
        self.syms.push(SymInfo {
            name: name.to_string(),
            arity,
            kind,
            skolem,
        });
        (self.syms.len() - 1) as Sym
    }

    pub fn fresh_skolem(&mut self, arity: usize) -> Sym {
        let n = self.syms.iter().filter(|s| s.skolem).count();
        let name = if arity == 0 { format!("sk{n}") } else { format!("skf{n}") };
        self.add(&name, arity, SymKind::Func, true)
    }

    pub fn name(&self, s: Sym) -> &str {
        &self.syms[s as usize].name
    }

    pub fn arity(&self, s: Sym) -> usize {
        self.syms[s as usize].arity
    }

    pub fn kind(&self, s: Sym) -> SymKind {
        self.syms[s as usize].kind
    }

    pub fn is_skolem(&self, s: Sym) -> bool {
        self.syms[s as usize].skolem
    }

    pub fn len(&self) -> usize {
        self.syms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.syms.is_empty()
    }

    /// Function symbols other than `⊤`, with their arities.
    pub fn functions(&self) -> impl Iterator<Item = (Sym, usize)> + '_ {
        self.syms
            .iter()
            .enumerate()
            .filter(|(_, s)| s.kind == SymKind::Func)
            .map(|(i, s)| (i as Sym, s.arity))
    }

    // ⊤ < constants < Skolem functions < plus < times < predicates
    fn precedence(&self, s: Sym) -> (u8, Sym) {
        let info = &self.syms[s as usize];
        let class = match info.kind {
            SymKind::True => 0,
            SymKind::Pred => 5,
            SymKind::Func if s == PLUS => 3,
            SymKind::Func if s == TIMES => 4,
            SymKind::Func if info.arity == 0 => 1,
            SymKind::Func => 2,
        };
        (class, s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PTerm {
    Var(u32),
    App(Sym, Vec<PTerm>),
}

impl PTerm {
    pub fn constant(s: Sym) -> PTerm {
        PTerm::App(s, Vec::new())
    }

    pub fn app(s: Sym, args: Vec<PTerm>) -> PTerm {
        PTerm::App(s, args)
    }

    pub fn weight(&self) -> usize {
        match self {
            PTerm::Var(_) => 1,
            PTerm::App(_, args) => 1 + args.iter().map(PTerm::weight).sum::<usize>(),
        }
    }

    pub fn head(&self) -> Option<Sym> {
        match self {
            PTerm::Var(_) => None,
            PTerm::App(s, _) => Some(*s),
        }
    }

    pub fn max_var(&self) -> Option<u32> {
        match self {
            PTerm::Var(v) => Some(*v),
            PTerm::App(_, args) => args.iter().filter_map(PTerm::max_var).max(),
        }
    }

    pub fn occurs(&self, v: u32) -> bool {
        match self {
            PTerm::Var(w) => *w == v,
            PTerm::App(_, args) => args.iter().any(|a| a.occurs(v)),
        }
    }

    pub fn is_ground(&self) -> bool {
        match self {
            PTerm::Var(_) => false,
            PTerm::App(_, args) => args.iter().all(PTerm::is_ground),
        }
    }

    pub fn map_vars(&self, f: &mut impl FnMut(u32) -> PTerm) -> PTerm {
        match self {
            PTerm::Var(v) => f(*v),
            PTerm::App(s, args) => PTerm::App(*s, args.iter().map(|a| a.map_vars(f)).collect()),
        }
    }

    pub fn offset(&self, by: u32) -> PTerm {
        self.map_vars(&mut |v| PTerm::Var(v + by))
    }

    /// Subterm at `pos` (a path of argument indices).
    pub fn at(&self, pos: &[usize]) -> &PTerm {
        match pos.split_first() {
            None => self,
            Some((&i, rest)) => match self {
                PTerm::App(_, args) => args[i].at(rest),
                PTerm::Var(_) => unreachable!("position below a variable"),
            },
        }
    }

    /// Copy with the subterm at `pos` replaced.
    pub fn replace_at(&self, pos: &[usize], by: &PTerm) -> PTerm {
        match pos.split_first() {
            None => by.clone(),
            Some((&i, rest)) => match self {
                PTerm::App(s, args) => {
                    let mut args = args.clone();
                    args[i] = args[i].replace_at(rest, by);
                    PTerm::App(*s, args)
                }
                PTerm::Var(_) => unreachable!("position below a variable"),
            },
        }
    }

    /// Positions of non-variable subterms, outermost first.
    pub fn positions(&self, out: &mut Vec<Vec<usize>>, prefix: &mut Vec<usize>) {
        if let PTerm::App(_, args) = self {
            out.push(prefix.clone());
            for (i, a) in args.iter().enumerate() {
                prefix.push(i);
                a.positions(out, prefix);
                prefix.pop();
            }
        }
    }

    pub fn display<'a>(&'a self, sig: &'a Signature) -> TermDisplay<'a> {
        TermDisplay { t: self, sig }
    }
}

pub struct TermDisplay<'a> {
    t: &'a PTerm,
    sig: &'a Signature,
}

impl fmt::Display for TermDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.t {
            PTerm::Var(v) => write!(f, "X{v}"),
            PTerm::App(s, args) => {
                f.write_str(self.sig.name(*s))?;
                if !args.is_empty() {
                    f.write_str("(")?;
                    for (i, a) in args.iter().enumerate() {
                        if i > 0 {
                            f.write_str(", ")?;
                        }
                        write!(f, "{}", a.display(self.sig))?;
                    }
                    f.write_str(")")?;
                }
                Ok(())
            }
        }
    }
}

/// A triangular substitution indexed by variable number.
#[derive(Clone, Debug, Default)]
pub struct Subst {
    map: Vec<Option<PTerm>>,
}

impl Subst {
    pub fn new() -> Subst {
        Subst::default()
    }

    pub fn get(&self, v: u32) -> Option<&PTerm> {
        self.map.get(v as usize).and_then(Option::as_ref)
    }

    fn bind(&mut self, v: u32, t: PTerm) {
        let i = v as usize;
        if self.map.len() <= i {
            self.map.resize(i + 1, None);
        }
        self.map[i] = Some(t);
    }

    pub fn apply(&self, t: &PTerm) -> PTerm {
        match t {
            PTerm::Var(v) => match self.get(*v) {
                Some(b) => self.apply(b),
                None => t.clone(),
            },
            PTerm::App(s, args) => PTerm::App(*s, args.iter().map(|a| self.apply(a)).collect()),
        }
    }

    fn walk<'a>(&'a self, t: &'a PTerm) -> &'a PTerm {
        let mut cur = t;
        while let PTerm::Var(v) = cur {
            match self.get(*v) {
                Some(b) => cur = b,
                None => break,
            }
        }
        cur
    }

    fn occurs(&self, v: u32, t: &PTerm) -> bool {
        match self.walk(t) {
            PTerm::Var(w) => *w == v,
            PTerm::App(_, args) => args.iter().any(|a| self.occurs(v, a)),
        }
    }
}

fn individual(sig: &Signature, t: &PTerm) -> bool {
    match t {
        PTerm::Var(_) => true,
        PTerm::App(s, _) => sig.kind(*s) == SymKind::Func,
    }
}

/// Most general unifier extending `sub`, if any.
pub fn unify(sig: &Signature, a: &PTerm, b: &PTerm, sub: &mut Subst) -> bool {
    let a = resolve(a, sub);
    let b = resolve(b, sub);
    match (a.as_ref(), b.as_ref()) {
        (PTerm::Var(x), PTerm::Var(y)) if x == y => true,
        (PTerm::Var(x), t) | (t, PTerm::Var(x)) => {
            if !individual(sig, t) || sub.occurs(*x, t) {
                return false;
            }
            sub.bind(*x, t.clone());
            true
        }
        (PTerm::App(f, fa), PTerm::App(g, ga)) => {
            f == g && fa.iter().zip(ga).all(|(s, t)| unify(sig, s, t, sub))
        }
    }
}

// The binding a variable resolves to; cloned only when it is bound.
fn resolve<'a>(t: &'a PTerm, sub: &Subst) -> Cow<'a, PTerm> {
    match t {
        PTerm::Var(v) if sub.get(*v).is_some() => Cow::Owned(sub.walk(t).clone()),
        _ => Cow::Borrowed(t),
    }
}

/// One-way matching: extends `sub` so that `sub(pattern) == target`.
/// Bindings borrow from the target.
pub fn match_term<'t>(
    pattern: &PTerm,
    target: &'t PTerm,
    sub: &mut Vec<Option<&'t PTerm>>,
) -> bool {
    match pattern {
        PTerm::Var(v) => {
            let i = *v as usize;
            if sub.len() <= i {
                sub.resize(i + 1, None);
            }
            match sub[i] {
                Some(b) => b == target,
                None => {
                    sub[i] = Some(target);
                    true
                }
            }
        }
        PTerm::App(f, fa) => match target {
            PTerm::App(g, ga) if f == g => fa.iter().zip(ga).all(|(p, t)| match_term(p, t, sub)),
            _ => false,
        },
    }
}

pub fn apply_match(t: &PTerm, sub: &[Option<&PTerm>]) -> PTerm {
    t.map_vars(&mut |v| match sub.get(v as usize) {
        Some(Some(b)) => (*b).clone(),
        _ => PTerm::Var(v),
    })
}

/// Result of comparing two terms in a partial order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Cmp {
    Greater,
    Less,
    Equal,
    Incomparable,
}

/// Knuth–Bendix order with unit weights.
pub fn kbo(sig: &Signature, s: &PTerm, t: &PTerm) -> Cmp {
    if s == t {
        Cmp::Equal
    } else if kbo_gt(sig, s, t) {
        Cmp::Greater
    } else if kbo_gt(sig, t, s) {
        Cmp::Less
    } else {
        Cmp::Incomparable
    }
}

pub fn kbo_gt(sig: &Signature, s: &PTerm, t: &PTerm) -> bool {
    match (s, t) {
        (PTerm::Var(_), _) => false,
        (_, PTerm::Var(v)) => s.occurs(*v),
        (PTerm::App(f, fa), PTerm::App(g, ga)) => {
            let (ws, wt) = (s.weight(), t.weight());
            if ws < wt || !vars_dominate(s, t) {
                return false;
            }
            if ws > wt {
                return true;
            }
            match sig.precedence(*f).cmp(&sig.precedence(*g)) {
                Ordering::Greater => true,
                Ordering::Less => false,
                Ordering::Equal => fa
                    .iter()
                    .zip(ga)
                    .find(|(a, b)| a != b)
                    .is_some_and(|(a, b)| kbo_gt(sig, a, b)),
            }
        }
    }
}

/// Every variable occurs in `s` at least as often as in `t`.
fn vars_dominate(s: &PTerm, t: &PTerm) -> bool {
    const SMALL: usize = 32;
    let max = s.max_var().max(t.max_var()).map_or(0, |m| m as usize + 1);
    if max <= SMALL {
        let mut counts = [0i32; SMALL];
        add_counts(s, &mut counts, 1);
        add_counts(t, &mut counts, -1);
        counts.iter().all(|&c| c >= 0)
    } else {
        let mut counts = vec![0i32; max];
        add_counts(s, &mut counts, 1);
        add_counts(t, &mut counts, -1);
        counts.iter().all(|&c| c >= 0)
    }
}

fn add_counts(t: &PTerm, counts: &mut [i32], sign: i32) {
    match t {
        PTerm::Var(v) => counts[*v as usize] += sign,
        PTerm::App(_, args) => args.iter().for_each(|a| add_counts(a, counts, sign)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(i: u32) -> PTerm {
        PTerm::Var(i)
    }
    fn plus(a: PTerm, b: PTerm) -> PTerm {
        PTerm::app(PLUS, vec![a, b])
    }
    fn times(a: PTerm, b: PTerm) -> PTerm {
        PTerm::app(TIMES, vec![a, b])
    }
    fn zero() -> PTerm {
        PTerm::constant(ZERO)
    }

    #[test]
    fn kbo_orients_unit_laws() {
        let sig = Signature::new();
        assert_eq!(kbo(&sig, &plus(v(0), zero()), &v(0)), Cmp::Greater);
        assert_eq!(kbo(&sig, &times(v(0), zero()), &zero()), Cmp::Greater);
        // commutativity is not orientable
        assert_eq!(kbo(&sig, &plus(v(0), v(1)), &plus(v(1), v(0))), Cmp::Incomparable);
        // but its ground instances are
        let one = PTerm::constant(ONE);
        assert_eq!(kbo(&sig, &plus(one.clone(), zero()), &plus(zero(), one)), Cmp::Greater);
        // associativity left-to-right
        let l = plus(plus(v(0), v(1)), v(2));
        let r = plus(v(0), plus(v(1), v(2)));
        assert_eq!(kbo(&sig, &l, &r), Cmp::Greater);
        // times above plus
        let d_l = times(v(0), plus(v(1), v(2)));
        let d_r = plus(times(v(0), v(1)), times(v(0), v(2)));
        assert_eq!(kbo(&sig, &d_l, &d_r), Cmp::Less);
    }

    #[test]
    fn unification_and_occurs_check() {
        let sig = Signature::new();
        let mut s = Subst::new();
        assert!(unify(&sig, &plus(v(0), zero()), &plus(v(1), v(1)), &mut s));
        assert_eq!(s.apply(&v(0)), zero());
        let mut s = Subst::new();
        assert!(!unify(&sig, &v(0), &plus(v(0), zero()), &mut s));
        let mut s = Subst::new();
        let atom = PTerm::app(LESS, vec![zero(), zero()]);
        assert!(!unify(&sig, &v(0), &atom, &mut s));
    }

    #[test]
    fn matching_is_one_way() {
        let mut m = Vec::new();
        assert!(match_term(&plus(v(0), v(0)), &plus(zero(), zero()), &mut m));
        let mut m = Vec::new();
        assert!(!match_term(&plus(zero(), zero()), &plus(v(0), zero()), &mut m));
        let mut m = Vec::new();
        assert!(!match_term(&plus(v(0), v(0)), &plus(zero(), v(0)), &mut m));
    }
}
