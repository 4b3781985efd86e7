//! Syntactic constructions between proof shapes.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::fol::{fresh_var, parse_schematic, DnfConjunct, Formula, ParseError, Schematic, Term};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransformError {
    #[error("unexpected free variables {vars:?}")]
    ExtraFreeVars { vars: Vec<String> },
    #[error("nothing to merge")]
    EmptyMerge,
    #[error("{0} must be a sentence")]
    NotClosed(&'static str),
    #[error("template expects {expected} parameters, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("unknown construction {0:?}; expected one of not_cut, not_acut, chi, rho, rho0, square")]
    UnknownConstruction(String),
    #[error("construction {name} needs input {input}")]
    MissingInput { name: &'static str, input: &'static str },
    #[error("too many inequations ({0}) to expand the product")]
    TooManyInequations(usize),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

fn check_vars(f: &Formula, allowed: &[&str]) -> Result<(), TransformError> {
    let stray: Vec<String> = f
        .free_vars()
        .into_iter()
        .filter(|v| !allowed.contains(&v.as_str()))
        .collect();
    if stray.is_empty() {
        Ok(())
    } else {
        Err(TransformError::ExtraFreeVars { vars: stray })
    }
}

fn allowed<'a>(x: &'a str, params: &'a [String]) -> Vec<&'a str> {
    std::iter::once(x).chain(params.iter().map(String::as_str)).collect()
}

/// Turns an induction axiom for `theta` into a formula `φ(x)`, inductive over
/// PA⁻, with `∀x φ(x)` equivalent to that axiom:
/// `∀z̄ (θ(0, z̄) ∧ ∀y (θ(y, z̄) → θ(y+1, z̄)) → θ(x, z̄))`.
pub fn axiom_to_inductive(
    theta: &Formula,
    x: &str,
    params: &[String],
) -> Result<Formula, TransformError> {
    check_vars(theta, &allowed(x, params))?;
    let mut avoid = theta.all_vars();
    avoid.insert(x.to_string());
    avoid.extend(params.iter().cloned());
    let y = fresh_var("y", &avoid);
    let ty = theta.substitute(x, &Term::var(&y));
    let step = Formula::forall(
        &y,
        Formula::implies(ty.clone(), ty.substitute(&y, &Term::add(Term::var(&y), Term::One))),
    );
    let body = Formula::implies(
        Formula::and(theta.substitute(x, &Term::Zero), step),
        theta.clone(),
    );
    Ok(Formula::forall_many(params, body))
}

/// One input to [`merge`]: a formula, its induction variable, its parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InductionInput {
    pub theta: Formula,
    pub x: String,
    pub params: Vec<String>,
}

/// Conjunction of the [`axiom_to_inductive`] outputs, folded left to right.
/// The result's free variable is the first input's `x`.
pub fn merge(inputs: &[InductionInput]) -> Result<Formula, TransformError> {
    let first = inputs.first().ok_or(TransformError::EmptyMerge)?;
    let target = Term::var(&first.x);
    let mut parts = Vec::with_capacity(inputs.len());
    for inp in inputs {
        let psi = axiom_to_inductive(&inp.theta, &inp.x, &inp.params)?;
        parts.push(if inp.x == first.x {
            psi
        } else {
            psi.substitute(&inp.x, &target)
        });
    }
    Ok(Formula::conj(parts))
}

/// `¬σ → ψ(x)`.
pub fn equivalence_shape(sigma: &Formula, psi: &Formula) -> Result<Formula, TransformError> {
    if !sigma.free_vars().is_empty() {
        return Err(TransformError::NotClosed("sigma"));
    }
    Ok(Formula::implies(Formula::not(sigma.clone()), psi.clone()))
}

/// A sentence over the arithmetic language plus one unary predicate `X`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchemeTemplate {
    pub body: Schematic,
    /// Number of parameters `z̄` an instance is expected to have.
    pub arity_hint: usize,
}

impl SchemeTemplate {
    /// Parses a template in which the predicate is written `X(t)`.
    pub fn parse(text: &str, arity_hint: usize) -> Result<SchemeTemplate, TransformError> {
        Ok(SchemeTemplate {
            body: parse_schematic(text, Some("X"))?,
            arity_hint,
        })
    }

    /// The successor induction template `X(0) ∧ ∀x (X(x) → X(x+1)) → ∀x X(x)`.
    pub fn successor() -> SchemeTemplate {
        SchemeTemplate::parse("(X(0) & !x. (X(x) -> X(x + 1))) -> !x. X(x)", 0)
            .expect("template parses")
    }
}

/// `Sφ`: every `X(t)` in the template replaced by `φ(t)`, then closed
/// universally over `params`.
pub fn scheme_substitute(
    template: &SchemeTemplate,
    phi: &Formula,
    x: &str,
    params: &[String],
) -> Result<Formula, TransformError> {
    if params.len() != template.arity_hint {
        return Err(TransformError::Arity {
            expected: template.arity_hint,
            got: params.len(),
        });
    }
    check_vars(phi, &allowed(x, params))?;
    let avoid: BTreeSet<String> = params.iter().cloned().collect();
    let body = template
        .body
        .rename_binders_away(&avoid)
        .fill(&mut |t| phi.substitute(x, t));
    Ok(Formula::forall_many(params, body))
}

/// Named witness formulas.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Construction {
    /// `φ(x) ∨ ∃c (δ(c) ∧ x ≥ c²)`: inductive but not a cut.
    NotCut,
    /// `∃c ∃z (φ(z) ∧ δ(c) ∧ x ≤ c² + z)`: a cut but not an a-cut.
    NotACut,
    /// `φ(x) ∨ ∃y (x = (m+1)·y)`.
    Chi,
    /// `φ(x) ∨ ∀c (δ(c) → ⋁_{k<n+1} x = c² + k)`.
    Rho,
    /// `φ(x) ∨ ∀c (δ(c) → x = c²)`.
    Rho0,
    /// `φ(x × x)`.
    Square,
}

impl Construction {
    pub const ALL: [Construction; 6] = [
        Construction::NotCut,
        Construction::NotACut,
        Construction::Chi,
        Construction::Rho,
        Construction::Rho0,
        Construction::Square,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Construction::NotCut => "not_cut",
            Construction::NotACut => "not_acut",
            Construction::Chi => "chi",
            Construction::Rho => "rho",
            Construction::Rho0 => "rho0",
            Construction::Square => "square",
        }
    }
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Construction {
    type Err = TransformError;
    fn from_str(s: &str) -> Result<Self, TransformError> {
        Construction::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| TransformError::UnknownConstruction(s.to_string()))
    }
}

/// Inputs to [`gallery`]. `phi` and `delta` are formulas in the variable `x`.
#[derive(Clone, Debug, Default)]
pub struct GalleryInputs {
    pub phi: Option<Formula>,
    pub delta: Option<Formula>,
    pub m: Option<u64>,
    pub n: Option<u64>,
    pub x: String,
}

impl GalleryInputs {
    pub fn new(phi: Formula) -> GalleryInputs {
        GalleryInputs {
            phi: Some(phi),
            x: "x".to_string(),
            ..GalleryInputs::default()
        }
    }

    pub fn delta(mut self, delta: Formula) -> GalleryInputs {
        self.delta = Some(delta);
        self
    }

    pub fn m(mut self, m: u64) -> GalleryInputs {
        self.m = Some(m);
        self
    }

    pub fn n(mut self, n: u64) -> GalleryInputs {
        self.n = Some(n);
        self
    }
}

/// Builds one of the named witness formulas. `c² ` is written `c × c`.
pub fn gallery(name: Construction, inp: &GalleryInputs) -> Result<Formula, TransformError> {
    let label = name.name();
    let missing = |input| TransformError::MissingInput { name: label, input };
    let x = inp.x.as_str();
    let phi = inp.phi.as_ref().ok_or(missing("phi"))?;
    check_vars(phi, &[x])?;
    let needs_delta = matches!(
        name,
        Construction::NotCut | Construction::NotACut | Construction::Rho | Construction::Rho0
    );
    let delta = if needs_delta {
        let d = inp.delta.as_ref().ok_or(missing("delta"))?;
        check_vars(d, &[x])?;
        Some(d)
    } else {
        None
    };
    let mut avoid = phi.all_vars();
    if let Some(d) = delta {
        avoid.extend(d.all_vars());
    }
    avoid.insert(x.to_string());
    let mut fresh = |base: &str| {
        let v = fresh_var(base, &avoid);
        avoid.insert(v.clone());
        v
    };
    let xv = Term::var(x);
    let out = match name {
        Construction::NotCut => {
            let c = fresh("c");
            let d = delta.expect("checked").substitute(x, &Term::var(&c));
            let sq = Term::mul(Term::var(&c), Term::var(&c));
            Formula::or(
                phi.clone(),
                Formula::exists(&c, Formula::and(d, Formula::le(sq, xv))),
            )
        }
        Construction::NotACut => {
            let c = fresh("c");
            let z = fresh("z");
            let d = delta.expect("checked").substitute(x, &Term::var(&c));
            let sq = Term::mul(Term::var(&c), Term::var(&c));
            let body = Formula::conj([
                phi.substitute(x, &Term::var(&z)),
                d,
                Formula::le(xv, Term::add(sq, Term::var(&z))),
            ]);
            Formula::exists(&c, Formula::exists(&z, body))
        }
        Construction::Chi => {
            let m = inp.m.ok_or(missing("m"))?;
            let y = fresh("y");
            let mult = Term::mul(Term::numeral(m + 1), Term::var(&y));
            Formula::or(phi.clone(), Formula::exists(&y, Formula::eq(xv, mult)))
        }
        Construction::Rho | Construction::Rho0 => {
            let n = match name {
                Construction::Rho => inp.n.ok_or(missing("n"))?,
                _ => 0,
            };
            let c = fresh("c");
            let d = delta.expect("checked").substitute(x, &Term::var(&c));
            let sq = Term::mul(Term::var(&c), Term::var(&c));
            let options =
                Formula::disj((0..=n).map(|k| Formula::eq(xv.clone(), sq.clone().plus_ones(k))));
            Formula::or(phi.clone(), Formula::forall(&c, Formula::implies(d, options)))
        }
        Construction::Square => phi.substitute(x, &Term::mul(xv.clone(), xv)),
    };
    Ok(out)
}

/// A conjunct of ring literals rewritten as one equation and one inequation
/// over the subtraction-free signature.
///
/// `p.0 = p.1` holds iff every equality holds, since `p.0 − p.1` is the sum of
/// the squared differences. `q.0 ≠ q.1` holds iff every inequation holds,
/// since `q.0 − q.1` is the product of the differences.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KayeReduced {
    pub p: (Term, Term),
    pub q: (Term, Term),
}

impl KayeReduced {
    /// `p.0 = p.1 ∧ ¬(q.0 = q.1)`.
    pub fn to_formula(&self) -> Formula {
        Formula::and(
            Formula::eq(self.p.0.clone(), self.p.1.clone()),
            Formula::not(Formula::eq(self.q.0.clone(), self.q.1.clone())),
        )
    }
}

impl fmt::Display for KayeReduced {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {} & ~({} = {})", self.p.0, self.p.1, self.q.0, self.q.1)
    }
}

/// Largest number of inequations [`kaye_reduce`] will expand.
pub const MAX_KAYE_INEQUATIONS: usize = 16;

/// Sum-of-squares and product form of a ring-language conjunct.
///
/// `p = (Σ (sⱼ·sⱼ + tⱼ·tⱼ), Σ 2·(sⱼ·tⱼ))` over the equalities `sⱼ = tⱼ`;
/// `q` is `∏ (uⱼ − vⱼ)` expanded, split into its positive and negative
/// monomials. An empty conjunct gives `p = (0, 0)` and `q = (1, 0)`.
pub fn kaye_reduce(c: &DnfConjunct) -> Result<KayeReduced, TransformError> {
    let n = c.inequations.len();
    if n > MAX_KAYE_INEQUATIONS {
        return Err(TransformError::TooManyInequations(n));
    }
    let left = Term::sum(c.equalities.iter().map(|(s, t)| {
        Term::add(Term::mul(s.clone(), s.clone()), Term::mul(t.clone(), t.clone()))
    }));
    let right = Term::sum(
        c.equalities
            .iter()
            .map(|(s, t)| Term::mul(Term::numeral(2), Term::mul(s.clone(), t.clone()))),
    );
    let mut even = Vec::new();
    let mut odd = Vec::new();
    for mask in 0u32..(1 << n) {
        let factors = c
            .inequations
            .iter()
            .enumerate()
            .map(|(j, (u, v))| if mask & (1 << j) != 0 { v.clone() } else { u.clone() });
        let mono = Term::product(factors);
        if mask.count_ones() % 2 == 0 {
            even.push(mono);
        } else {
            odd.push(mono);
        }
    }
    Ok(KayeReduced {
        p: (left, right),
        q: (Term::sum(even), Term::sum(odd)),
    })
}
