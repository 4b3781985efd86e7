//! Evaluation in ℤ\[X\]⁺.
//!
//! Quantifier-free formulas are decided exactly. For `∃y φ` with `φ`
//! quantifier-free, each disjunct of `φ`'s DNF is decided by
//!
//! 1. exact arithmetic if it does not mention `y`;
//! 2. exact linear solving if some positive equation has degree one in `y`:
//!    `a·y + b = 0` has at most one solution, `−b / a`, which must be an exact
//!    quotient in ℤ\[X\] and lie in ℤ\[X\]⁺;
//! 3. otherwise a bounded search for a witness, whose failure is reported as
//!    unknown rather than false.
//!
//! `∀y φ` is evaluated as `¬∃y ¬φ`.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use serde::Serialize;

use super::poly::{enumerate_polys, PolyPlus, ZPoly};
use super::EvalError;
use crate::fol::{literal_dnf, Formula, Literal, Relation, Term};

pub type PolyEnv = BTreeMap<String, PolyPlus>;

/// Bounds for witness search.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessConfig {
    pub max_degree: usize,
    pub max_coeff: u64,
    /// Assignments tried by [`refute_claim`](super::refute_claim).
    pub max_assignments: usize,
}

impl Default for WitnessConfig {
    fn default() -> Self {
        WitnessConfig {
            max_degree: 3,
            max_coeff: 7,
            max_assignments: 4096,
        }
    }
}

/// Kleene three-valued truth.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum ThreeVal {
    True,
    False,
    Unknown(String),
}

impl ThreeVal {
    pub fn from_bool(b: bool) -> ThreeVal {
        if b {
            ThreeVal::True
        } else {
            ThreeVal::False
        }
    }

    pub fn is_true(&self) -> bool {
        *self == ThreeVal::True
    }

    pub fn is_false(&self) -> bool {
        *self == ThreeVal::False
    }

    pub fn not(self) -> ThreeVal {
        match self {
            ThreeVal::True => ThreeVal::False,
            ThreeVal::False => ThreeVal::True,
            u => u,
        }
    }

    pub fn and(self, other: impl FnOnce() -> ThreeVal) -> ThreeVal {
        match self {
            ThreeVal::False => ThreeVal::False,
            ThreeVal::True => other(),
            u => match other() {
                ThreeVal::False => ThreeVal::False,
                _ => u,
            },
        }
    }

    pub fn or(self, other: impl FnOnce() -> ThreeVal) -> ThreeVal {
        self.not().and(|| other().not()).not()
    }
}

pub fn poly_eval(t: &Term, env: &PolyEnv) -> Result<PolyPlus, EvalError> {
    Ok(match t {
        Term::Var(v) => env.get(v).cloned().ok_or_else(|| EvalError::Unbound(v.clone()))?,
        Term::Zero => PolyPlus::zero(),
        Term::One => PolyPlus::one(),
        Term::Add(l, r) => &poly_eval(l, env)? + &poly_eval(r, env)?,
        Term::Mul(l, r) => &poly_eval(l, env)? * &poly_eval(r, env)?,
    })
}

pub fn zx_eval(f: &Formula, env: &PolyEnv, cfg: &WitnessConfig) -> Result<ThreeVal, EvalError> {
    let cands = OnceLock::new();
    Evaluator::new(cfg, &cands, false).eval(f, env)
}

/// As [`zx_eval`], also returning one trace line per decision on a disjunct.
pub fn zx_eval_traced(
    f: &Formula,
    env: &PolyEnv,
    cfg: &WitnessConfig,
) -> Result<(ThreeVal, Vec<String>), EvalError> {
    let cands = OnceLock::new();
    let mut ev = Evaluator::new(cfg, &cands, true);
    let v = ev.eval(f, env)?;
    Ok((v, ev.trace))
}

/// Polynomial in `y` with coefficients in ℤ\[X\]; index `i` holds `yⁱ`.
type YPoly = Vec<ZPoly>;

fn y_trim(mut p: YPoly) -> YPoly {
    while p.last().is_some_and(ZPoly::is_zero) {
        p.pop();
    }
    p
}

fn y_add(a: &YPoly, b: &YPoly) -> YPoly {
    let n = a.len().max(b.len());
    let zero = ZPoly::zero();
    y_trim(
        (0..n)
            .map(|i| a.get(i).unwrap_or(&zero) + b.get(i).unwrap_or(&zero))
            .collect(),
    )
}

fn y_neg(a: &YPoly) -> YPoly {
    a.iter().map(|c| -c).collect()
}

fn y_mul(a: &YPoly, b: &YPoly) -> YPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![ZPoly::zero(); a.len() + b.len() - 1];
    for (i, p) in a.iter().enumerate() {
        for (j, q) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + &(p * q);
        }
    }
    y_trim(out)
}

fn y_at(p: &YPoly, y: &ZPoly) -> ZPoly {
    p.iter()
        .rev()
        .fold(ZPoly::zero(), |acc, c| &(&acc * y) + c)
}

fn y_eval(t: &Term, env: &PolyEnv, y: &str) -> Result<YPoly, EvalError> {
    Ok(match t {
        Term::Var(v) if v == y => vec![ZPoly::zero(), ZPoly::constant(1)],
        Term::Var(v) => {
            let p = env.get(v).ok_or_else(|| EvalError::Unbound(v.clone()))?;
            y_trim(vec![p.as_poly().clone()])
        }
        Term::Zero => Vec::new(),
        Term::One => vec![ZPoly::constant(1)],
        Term::Add(l, r) => y_add(&y_eval(l, env, y)?, &y_eval(r, env, y)?),
        Term::Mul(l, r) => y_mul(&y_eval(l, env, y)?, &y_eval(r, env, y)?),
    })
}

// A literal with both sides as polynomials in y.
struct YLit<'a> {
    lit: &'a Literal,
    lhs: YPoly,
    rhs: YPoly,
}

impl YLit<'_> {
    // lhs − rhs
    fn diff(&self) -> YPoly {
        y_add(&self.lhs, &y_neg(&self.rhs))
    }

    fn holds_at(&self, y: &ZPoly) -> bool {
        let l = y_at(&self.lhs, y);
        let r = y_at(&self.rhs, y);
        let atom = match self.lit.rel {
            Relation::Eq => l == r,
            Relation::Lt => l < r,
        };
        atom == self.lit.positive
    }
}

fn literal_text(l: &Literal) -> String {
    l.to_formula().to_string()
}

fn env_text(env: &PolyEnv) -> String {
    if env.is_empty() {
        return "{}".to_string();
    }
    let parts: Vec<String> = env.iter().map(|(k, v)| format!("{k} = {v}")).collect();
    parts.join(", ")
}

// Cap on DNF size inside a quantifier before falling back to enumeration.
const QUANTIFIER_DNF_CAP: usize = 10_000;

enum Decision {
    True(String),
    False(String),
    Unknown(String),
}

pub(crate) struct Evaluator<'a> {
    cfg: &'a WitnessConfig,
    candidates: &'a OnceLock<Vec<PolyPlus>>,
    tracing: bool,
    pub(crate) trace: Vec<String>,
}

impl<'a> Evaluator<'a> {
    pub(crate) fn new(
        cfg: &'a WitnessConfig,
        candidates: &'a OnceLock<Vec<PolyPlus>>,
        tracing: bool,
    ) -> Self {
        Evaluator {
            cfg,
            candidates,
            tracing,
            trace: Vec::new(),
        }
    }

    fn candidates(&self) -> &'a [PolyPlus] {
        self.candidates
            .get_or_init(|| enumerate_polys(self.cfg.max_degree, self.cfg.max_coeff))
    }

    fn note(&mut self, line: impl FnOnce() -> String) {
        if self.tracing {
            self.trace.push(line());
        }
    }

    pub(crate) fn eval(&mut self, f: &Formula, env: &PolyEnv) -> Result<ThreeVal, EvalError> {
        Ok(match f {
            Formula::Eq(l, r) => ThreeVal::from_bool(poly_eval(l, env)? == poly_eval(r, env)?),
            Formula::Lt(l, r) => ThreeVal::from_bool(poly_eval(l, env)? < poly_eval(r, env)?),
            Formula::Not(g) => self.eval(g, env)?.not(),
            Formula::And(l, r) => {
                let a = self.eval(l, env)?;
                if a.is_false() {
                    return Ok(a);
                }
                let b = self.eval(r, env)?;
                a.and(|| b)
            }
            Formula::Or(l, r) => {
                let a = self.eval(l, env)?;
                if a.is_true() {
                    return Ok(a);
                }
                let b = self.eval(r, env)?;
                a.or(|| b)
            }
            Formula::Implies(l, r) => {
                let a = self.eval(l, env)?;
                if a.is_false() {
                    return Ok(ThreeVal::True);
                }
                let b = self.eval(r, env)?;
                a.not().or(|| b)
            }
            Formula::Iff(l, r) => {
                let a = self.eval(l, env)?;
                let b = self.eval(r, env)?;
                match (&a, &b) {
                    (ThreeVal::Unknown(_), _) => a,
                    (_, ThreeVal::Unknown(_)) => b,
                    _ => ThreeVal::from_bool(a == b),
                }
            }
            Formula::Exists(y, body) => self.exists(y, body, env)?,
            Formula::ForAll(y, body) => {
                let neg = Formula::not((**body).clone());
                self.exists(y, &neg, env)?.not()
            }
        })
    }

    fn exists(&mut self, y: &str, body: &Formula, env: &PolyEnv) -> Result<ThreeVal, EvalError> {
        if !body.has_quantifier() {
            if let Ok(dnf) = literal_dnf(body, QUANTIFIER_DNF_CAP) {
                return self.exists_dnf(y, &dnf, env);
            }
        }
        self.exists_by_search(y, body, env)
    }

    fn exists_by_search(
        &mut self,
        y: &str,
        body: &Formula,
        env: &PolyEnv,
    ) -> Result<ThreeVal, EvalError> {
        let mut inner = env.clone();
        let mut unknown = None;
        let tracing = self.tracing;
        self.tracing = false;
        let cands = self.candidates();
        for c in cands {
            inner.insert(y.to_string(), c.clone());
            match self.eval(body, &inner) {
                Ok(ThreeVal::True) => {
                    self.tracing = tracing;
                    self.note(|| format!("?{y} at {}: witness {y} = {c}", env_text(env)));
                    return Ok(ThreeVal::True);
                }
                Ok(ThreeVal::Unknown(r)) => {
                    unknown.get_or_insert(r);
                }
                Ok(ThreeVal::False) => {}
                Err(e) => {
                    self.tracing = tracing;
                    return Err(e);
                }
            }
        }
        self.tracing = tracing;
        let reason = format!(
            "no witness for {y} among {} candidates (degree <= {}, |coeff| <= {})",
            cands.len(),
            self.cfg.max_degree,
            self.cfg.max_coeff
        );
        self.note(|| format!("?{y} at {}: unknown, {reason}", env_text(env)));
        Ok(ThreeVal::Unknown(unknown.unwrap_or(reason)))
    }

    fn exists_dnf(
        &mut self,
        y: &str,
        dnf: &[Vec<Literal>],
        env: &PolyEnv,
    ) -> Result<ThreeVal, EvalError> {
        let mut unknown = None;
        for (j, conj) in dnf.iter().enumerate() {
            let lits = conj
                .iter()
                .map(|lit| {
                    Ok(YLit {
                        lit,
                        lhs: y_eval(&lit.lhs, env, y)?,
                        rhs: y_eval(&lit.rhs, env, y)?,
                    })
                })
                .collect::<Result<Vec<_>, EvalError>>()?;
            let shown: Vec<String> = conj.iter().map(literal_text).collect();
            let head = || format!("?{y} at {}: disjunct {} [{}]", env_text(env), j + 1, shown.join(" & "));
            match self.decide(&lits) {
                Decision::True(why) => {
                    self.note(|| format!("{}: true, {why}", head()));
                    return Ok(ThreeVal::True);
                }
                Decision::False(why) => self.note(|| format!("{}: false, {why}", head())),
                Decision::Unknown(why) => {
                    self.note(|| format!("{}: unknown, {why}", head()));
                    unknown.get_or_insert(why);
                }
            }
        }
        Ok(match unknown {
            Some(why) => ThreeVal::Unknown(why),
            None => ThreeVal::False,
        })
    }

    fn decide(&self, lits: &[YLit<'_>]) -> Decision {
        // y-free literals first
        for l in lits {
            if l.lhs.len() <= 1 && l.rhs.len() <= 1 && !l.holds_at(&ZPoly::zero()) {
                return Decision::False(format!("{} fails", literal_text(l.lit)));
            }
        }
        // a positive equation linear in y fixes y
        for l in lits {
            if !(l.lit.positive && l.lit.rel == Relation::Eq) {
                continue;
            }
            let d = l.diff();
            if d.len() != 2 {
                continue;
            }
            let a = &d[1];
            let b = &d[0];
            let eq = literal_text(l.lit);
            let Some(y) = (-b).div_exact(a) else {
                return Decision::False(format!(
                    "{eq} needs ({a})*y = {}, exact division fails",
                    -b
                ));
            };
            if !y.is_nonnegative() {
                return Decision::False(format!("{eq} forces y = {y}, which is negative"));
            }
            return match lits.iter().find(|m| !m.holds_at(&y)) {
                None => Decision::True(format!("{eq} forces y = {y}, all literals hold")),
                Some(m) => Decision::False(format!(
                    "{eq} forces y = {y}, where {} fails",
                    literal_text(m.lit)
                )),
            };
        }
        // roots of the other linear literals, then the enumeration
        let mut smart: Vec<ZPoly> = vec![ZPoly::zero()];
        for l in lits {
            let d = l.diff();
            if d.len() == 2 {
                if let Some(r) = (-&d[0]).div_exact(&d[1]) {
                    for delta in [-1i64, 0, 1] {
                        let c = &r + &ZPoly::constant(delta);
                        if c.is_nonnegative() && !smart.contains(&c) {
                            smart.push(c);
                        }
                    }
                }
            }
        }
        let all = smart
            .iter()
            .chain(self.candidates().iter().map(PolyPlus::as_poly));
        for y in all {
            if lits.iter().all(|l| l.holds_at(y)) {
                return Decision::True(format!("witness y = {y}"));
            }
        }
        Decision::Unknown(format!(
            "no witness among polynomials of degree <= {} with |coeff| <= {}",
            self.cfg.max_degree, self.cfg.max_coeff
        ))
    }
}
