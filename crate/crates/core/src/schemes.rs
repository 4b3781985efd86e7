//! The base theory PA⁻, induction axioms, and inductiveness obligations.
//!
//! Throughout, `x + k` for a literal `k` is spelled `((x + 1) + …) + 1` (see
//! [`Term::plus_ones`]) and `x + 0` is `x` itself, so that 1-step induction,
//! 1-induction and successor induction produce the same formulas.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::fol::{fresh_var, parse_term, FormulaClass, Formula, Term};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SchemeError {
    #[error("cut notions only define obligations, not induction axioms")]
    CutHasNoAxiom,
    #[error("unexpected free variables {vars:?}; declare them as parameters")]
    ExtraFreeVars { vars: Vec<String> },
    #[error("parameter list must not contain the induction variable {0}")]
    ParamIsInductionVar(String),
    #[error("{0}")]
    BadNotion(String),
}

/// Which extra closure condition a cut must satisfy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum CutKind {
    /// Downward closed.
    Cut,
    /// Downward closed and closed under `x ↦ x + x`.
    ACut,
    /// As `ACut`, and closed under `x ↦ x × x`.
    AMCut,
}

/// A Walther-style scheme: base cases `B` and step terms `S`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct WaltherScheme {
    pub bases: BTreeSet<u64>,
    pub steps: Vec<Term>,
}

impl WaltherScheme {
    pub fn new(bases: impl IntoIterator<Item = u64>, steps: impl IntoIterator<Item = Term>) -> Self {
        let mut out = WaltherScheme {
            bases: bases.into_iter().collect(),
            steps: Vec::new(),
        };
        for t in steps {
            if !out.steps.contains(&t) {
                out.steps.push(t);
            }
        }
        out
    }
}

impl fmt::Display for WaltherScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let bases: Vec<String> = self.bases.iter().map(u64::to_string).collect();
        let steps: Vec<String> = self.steps.iter().map(Term::to_string).collect();
        write!(f, "B={};S={}", bases.join(","), steps.join(","))
    }
}

impl FromStr for WaltherScheme {
    type Err = SchemeError;

    /// Reads `B=0,1;S=x+1,x+2`. Either part may be empty.
    fn from_str(s: &str) -> Result<Self, SchemeError> {
        let bad = |msg: String| SchemeError::BadNotion(msg);
        let mut bases = None;
        let mut steps = None;
        for part in s.split(';') {
            let part = part.trim();
            if let Some(rest) = part.strip_prefix("B=") {
                let mut b = Vec::new();
                for item in rest.split(',').map(str::trim).filter(|i| !i.is_empty()) {
                    b.push(
                        item.parse::<u64>()
                            .map_err(|_| bad(format!("base {item:?} is not a natural number")))?,
                    );
                }
                bases = Some(b);
            } else if let Some(rest) = part.strip_prefix("S=") {
                let mut t = Vec::new();
                for item in rest.split(',').map(str::trim).filter(|i| !i.is_empty()) {
                    t.push(parse_term(item).map_err(|e| bad(format!("step term {item:?}: {e}")))?);
                }
                steps = Some(t);
            } else {
                return Err(bad(format!("expected B=… or S=…, found {part:?}")));
            }
        }
        match (bases, steps) {
            (Some(b), Some(s)) => Ok(WaltherScheme::new(b, s)),
            _ => Err(bad("a scheme needs both B=… and S=…".into())),
        }
    }
}

/// A notion of inductiveness, and the induction axiom shape that goes with it.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Notion {
    Successor,
    LessThan,
    /// `k`-step induction, `k ≥ 1`.
    StepK(u64),
    /// `k`-induction, `k ≥ 1`.
    KInduction(u64),
    /// Polynomial induction in base `b ≥ 2`.
    PolyInd(u64),
    Generalized(WaltherScheme),
    Cut(CutKind),
}

impl Notion {
    fn validate(&self) -> Result<(), SchemeError> {
        match self {
            Notion::StepK(0) | Notion::KInduction(0) => {
                Err(SchemeError::BadNotion("step count must be at least 1".into()))
            }
            Notion::PolyInd(b) if *b < 2 => {
                Err(SchemeError::BadNotion("polynomial induction needs base at least 2".into()))
            }
            _ => Ok(()),
        }
    }
}

impl fmt::Display for Notion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Notion::Successor => f.write_str("succ"),
            Notion::LessThan => f.write_str("less"),
            Notion::StepK(k) => write!(f, "step:{k}"),
            Notion::KInduction(k) => write!(f, "kind:{k}"),
            Notion::PolyInd(b) => write!(f, "pind:{b}"),
            Notion::Generalized(w) => write!(f, "gen:{w}"),
            Notion::Cut(CutKind::Cut) => f.write_str("cut"),
            Notion::Cut(CutKind::ACut) => f.write_str("acut"),
            Notion::Cut(CutKind::AMCut) => f.write_str("amcut"),
        }
    }
}

impl Serialize for Notion {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl FromStr for Notion {
    type Err = SchemeError;

    /// `succ | less | step:k | kind:k | pind[:b] | cut | acut | amcut | gen:B=…;S=…`
    fn from_str(s: &str) -> Result<Self, SchemeError> {
        let s = s.trim();
        let count = |name: &str, v: &str| {
            v.parse::<u64>()
                .map_err(|_| SchemeError::BadNotion(format!("{name} needs a natural number, got {v:?}")))
        };
        let notion = match s.split_once(':') {
            None => match s {
                "succ" => Notion::Successor,
                "less" => Notion::LessThan,
                "pind" => Notion::PolyInd(2),
                "cut" => Notion::Cut(CutKind::Cut),
                "acut" => Notion::Cut(CutKind::ACut),
                "amcut" => Notion::Cut(CutKind::AMCut),
                _ => return Err(SchemeError::BadNotion(format!("unknown notion {s:?}"))),
            },
            Some(("step", k)) => Notion::StepK(count("step", k)?),
            Some(("kind", k)) => Notion::KInduction(count("kind", k)?),
            Some(("pind", b)) => Notion::PolyInd(count("pind", b)?),
            Some(("gen", rest)) => Notion::Generalized(rest.parse()?),
            Some(_) => return Err(SchemeError::BadNotion(format!("unknown notion {s:?}"))),
        };
        notion.validate()?;
        Ok(notion)
    }
}

/// Axioms P1–P16 of PA⁻, in order, with `≤`, `≥` and `>` spelled out.
pub fn pa_minus_axioms() -> Vec<Formula> {
    const TEXT: [&str; 16] = [
        "!x. !y. !z. (x + y) + z = x + (y + z)",
        "!x. !y. x + y = y + x",
        "!x. !y. !z. (x*y)*z = x*(y*z)",
        "!x. !y. x*y = y*x",
        "!x. !y. !z. x*(y + z) = x*y + x*z",
        "!x. x + 0 = x",
        "!x. x*0 = 0",
        "!x. x*1 = x",
        "!x. !y. !z. (x < y & y < z -> x < z)",
        "!x. ~(x < x)",
        "!x. !y. ((x < y | x = y) | y < x)",
        "!x. !y. !z. (x < y -> x + z < y + z)",
        "!x. !y. !z. (~(z = 0) & x < y -> x*z < y*z)",
        "!x. !y. (x < y <-> ?z. (x + z) + 1 = y)",
        "0 < 1 & !x. (0 < x -> 1 < x | 1 = x)",
        "!x. (0 < x | 0 = x)",
    ];
    TEXT.iter()
        .map(|t| crate::fol::parse_formula(t).expect("axiom text parses"))
        .collect()
}

fn check_vars(
    f: &Formula,
    x: &str,
    params: &[String],
    extra: impl IntoIterator<Item = String>,
) -> Result<(), SchemeError> {
    if params.iter().any(|p| p == x) {
        return Err(SchemeError::ParamIsInductionVar(x.to_string()));
    }
    let mut stray: BTreeSet<String> = f.free_vars();
    stray.extend(extra);
    stray.remove(x);
    for p in params {
        stray.remove(p);
    }
    if stray.is_empty() {
        Ok(())
    } else {
        Err(SchemeError::ExtraFreeVars {
            vars: stray.into_iter().collect(),
        })
    }
}

fn at(theta: &Formula, x: &str, t: Term) -> Formula {
    theta.substitute(x, &t)
}

fn x_plus(x: &str, k: u64) -> Term {
    Term::var(x).plus_ones(k)
}

// The (base, step) premises shared by axioms and obligations, except `<`.
fn premises(theta: &Formula, x: &str, n: &Notion) -> Vec<(String, Formula)> {
    let th = |t: Term| at(theta, x, t);
    let all = |body: Formula| Formula::forall(x, body);
    let mut out = Vec::new();
    match n {
        Notion::Successor | Notion::Cut(_) => {
            out.push(("base:0".to_string(), th(Term::Zero)));
            out.push((
                "step".to_string(),
                all(Formula::implies(theta.clone(), th(x_plus(x, 1)))),
            ));
        }
        Notion::StepK(k) => {
            for i in 0..*k {
                out.push((format!("base:{i}"), th(Term::numeral(i))));
            }
            out.push((
                "step".to_string(),
                all(Formula::implies(theta.clone(), th(x_plus(x, *k)))),
            ));
        }
        Notion::KInduction(k) => {
            for i in 0..*k {
                out.push((format!("base:{i}"), th(Term::numeral(i))));
            }
            let hyp = Formula::conj((0..*k).map(|i| th(x_plus(x, i))));
            out.push(("step".to_string(), all(Formula::implies(hyp, th(x_plus(x, *k))))));
        }
        Notion::PolyInd(b) => {
            out.push(("base:0".to_string(), th(Term::Zero)));
            let bx = Term::mul(Term::numeral(*b), Term::var(x));
            let concl = Formula::conj((0..*b).map(|i| th(bx.clone().plus_ones(i))));
            out.push(("step".to_string(), all(Formula::implies(theta.clone(), concl))));
        }
        Notion::Generalized(w) => {
            for &k in &w.bases {
                out.push((format!("base:{k}"), th(Term::numeral(k))));
            }
            let single = w.steps.len() == 1;
            for (i, t) in w.steps.iter().enumerate() {
                let tag = if single { "step".to_string() } else { format!("step:{i}") };
                out.push((tag, all(Formula::implies(theta.clone(), th(t.clone())))));
            }
        }
        Notion::LessThan => unreachable!("handled separately"),
    }
    out
}

// ∀y (∀x (x < y → θ(x)) → θ(y)) with y fresh.
fn less_premise(theta: &Formula, x: &str) -> Formula {
    let mut avoid = theta.all_vars();
    avoid.insert(x.to_string());
    let y = fresh_var("y", &avoid);
    let below = Formula::forall(
        x,
        Formula::implies(Formula::lt(Term::var(x), Term::var(&y)), theta.clone()),
    );
    Formula::forall(&y, Formula::implies(below, at(theta, x, Term::var(&y))))
}

/// The induction axiom for `theta` in `x` of the given shape, universally
/// closed over `params` (outermost first).
pub fn induction_axiom(
    theta: &Formula,
    x: &str,
    params: &[String],
    n: &Notion,
) -> Result<Formula, SchemeError> {
    n.validate()?;
    let step_vars = match n {
        Notion::Cut(_) => return Err(SchemeError::CutHasNoAxiom),
        Notion::Generalized(w) => w.steps.iter().flat_map(Term::vars).collect(),
        _ => BTreeSet::new(),
    };
    check_vars(theta, x, params, step_vars)?;
    let antecedent = match n {
        Notion::LessThan => less_premise(theta, x),
        _ => Formula::conj(premises(theta, x, n).into_iter().map(|(_, f)| f)),
    };
    let body = Formula::implies(antecedent, Formula::forall(x, theta.clone()));
    Ok(Formula::forall_many(params, body))
}

/// The theory a set of obligations is to be proved in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum BaseTheory {
    PaMinus,
    /// Pure first-order logic.
    Empty,
}

impl BaseTheory {
    pub fn axioms(self) -> Vec<Formula> {
        match self {
            BaseTheory::PaMinus => pa_minus_axioms(),
            BaseTheory::Empty => Vec::new(),
        }
    }
}

/// One sequent `base theory + hypotheses ⊢ goal`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Obligation {
    pub tag: String,
    pub hypotheses: Vec<Formula>,
    pub goal: Formula,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ObligationSet {
    pub base: BaseTheory,
    pub obligations: Vec<Obligation>,
}

impl ObligationSet {
    pub fn tags(&self) -> Vec<&str> {
        self.obligations.iter().map(|o| o.tag.as_str()).collect()
    }

    pub fn get(&self, tag: &str) -> Option<&Obligation> {
        self.obligations.iter().find(|o| o.tag == tag)
    }

    /// The goals, in order.
    pub fn goals(&self) -> Vec<Formula> {
        self.obligations.iter().map(|o| o.goal.clone()).collect()
    }

    /// Whether both sets have the same tags with pairwise α-equal goals and
    /// hypotheses.
    pub fn alpha_eq(&self, other: &ObligationSet) -> bool {
        self.base == other.base
            && self.obligations.len() == other.obligations.len()
            && self.obligations.iter().zip(&other.obligations).all(|(a, b)| {
                a.tag == b.tag
                    && a.goal.alpha_eq(&b.goal)
                    && a.hypotheses.len() == b.hypotheses.len()
                    && a.hypotheses.iter().zip(&b.hypotheses).all(|(p, q)| p.alpha_eq(q))
            })
    }
}

/// What must be proved in PA⁻ for `phi` to be inductive in the sense of `n`.
///
/// `phi` may have no free variable other than `x`.
pub fn inductiveness_obligations(
    phi: &Formula,
    x: &str,
    n: &Notion,
) -> Result<ObligationSet, SchemeError> {
    n.validate()?;
    let step_vars: BTreeSet<String> = match n {
        Notion::Generalized(w) => w.steps.iter().flat_map(Term::vars).collect(),
        _ => BTreeSet::new(),
    };
    check_vars(phi, x, &[], step_vars)?;
    let mut goals = match n {
        Notion::LessThan => vec![("step".to_string(), less_premise(phi, x))],
        _ => premises(phi, x, n),
    };
    if let Notion::Cut(kind) = n {
        let mut avoid = phi.all_vars();
        avoid.insert(x.to_string());
        let y = fresh_var("y", &avoid);
        let down = Formula::forall(
            x,
            Formula::forall(
                &y,
                Formula::implies(
                    Formula::and(
                        Formula::lt(Term::var(x), Term::var(&y)),
                        at(phi, x, Term::var(&y)),
                    ),
                    phi.clone(),
                ),
            ),
        );
        goals.push(("downward".to_string(), down));
        let closed_under = |t: Term| Formula::forall(x, Formula::implies(phi.clone(), at(phi, x, t)));
        if matches!(kind, CutKind::ACut | CutKind::AMCut) {
            goals.push((
                "double".to_string(),
                closed_under(Term::add(Term::var(x), Term::var(x))),
            ));
        }
        if *kind == CutKind::AMCut {
            goals.push((
                "square".to_string(),
                closed_under(Term::mul(Term::var(x), Term::var(x))),
            ));
        }
    }
    Ok(ObligationSet {
        base: BaseTheory::PaMinus,
        obligations: goals
            .into_iter()
            .map(|(tag, goal)| Obligation {
                tag,
                hypotheses: Vec::new(),
                goal,
            })
            .collect(),
    })
}

/// The obligations of `target` for `phi`, each with every obligation goal of
/// `source` as a hypothesis. Discharging them shows that `source`-inductive
/// formulas are `target`-inductive, at least for this `phi`.
pub fn entailment_obligations(
    phi: &Formula,
    x: &str,
    source: &Notion,
    target: &Notion,
) -> Result<ObligationSet, SchemeError> {
    let hyps = inductiveness_obligations(phi, x, source)?.goals();
    let mut set = inductiveness_obligations(phi, x, target)?;
    for o in &mut set.obligations {
        o.hypotheses = hyps.clone();
    }
    Ok(set)
}

/// Subset test: `B ⊆ B′` and `S ⊆ S′`. When it holds, the left scheme proves
/// the right one; when it fails nothing follows.
pub fn walther_subsumes(left: &WaltherScheme, right: &WaltherScheme) -> bool {
    left.bases.is_subset(&right.bases) && left.steps.iter().all(|t| right.steps.contains(t))
}

/// Signature a scheme instance may use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Language {
    /// `{0, 1, +, ×, <}`.
    OrderedRing,
    /// `{0, 1, +, ×}`.
    Ring,
}

/// Induction axioms for those `thetas` that lie in `class` and `lang`,
/// with every free variable other than `x` taken as a parameter.
pub fn scheme_instances(
    class: FormulaClass,
    lang: Language,
    n: &Notion,
    thetas: &[Formula],
    x: &str,
) -> Result<Vec<Formula>, SchemeError> {
    thetas
        .iter()
        .filter(|t| class.admits(t))
        .filter(|t| lang == Language::OrderedRing || !t.mentions_lt())
        .map(|t| {
            let params: Vec<String> = t.free_vars().into_iter().filter(|v| v != x).collect();
            induction_axiom(t, x, &params, n)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fol::{parse_formula, print_text};

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    #[test]
    fn axiom_list_shape() {
        let ax = pa_minus_axioms();
        assert_eq!(ax.len(), 16);
        assert_eq!(ax[5], f("!x. x + 0 = x"));
        assert_eq!(ax[15], f("!x. (0 < x | 0 = x)"));
        assert_eq!(ax[14], f("0 < 1 & !x. (0 < x -> (1 < x | 1 = x))"));
        assert!(ax.iter().all(|a| a.free_vars().is_empty()));
    }

    #[test]
    fn successor_axiom() {
        let a = induction_axiom(&f("x + 0 = x"), "x", &[], &Notion::Successor).unwrap();
        assert_eq!(a, f("(0 + 0 = 0 & !x. (x + 0 = x -> (x + 1) + 0 = x + 1)) -> !x. x + 0 = x"));
    }

    #[test]
    fn polynomial_axiom() {
        let a = induction_axiom(&f("x = x"), "x", &[], &Notion::PolyInd(2)).unwrap();
        assert_eq!(
            a,
            f("(0 = 0 & !x. (x = x -> 2*x = 2*x & 2*x + 1 = 2*x + 1)) -> !x. x = x")
        );
    }

    #[test]
    fn parameters_are_closed_outermost_first() {
        let a = induction_axiom(&f("x < z"), "x", &["z".into()], &Notion::Successor).unwrap();
        assert_eq!(print_text(&a), "!z. ((0 < z & !x. (x < z -> x + 1 < z)) -> !x. x < z)");
        assert_eq!(
            induction_axiom(&f("x < z"), "x", &[], &Notion::Successor),
            Err(SchemeError::ExtraFreeVars { vars: vec!["z".into()] })
        );
    }

    #[test]
    fn less_axiom_uses_fresh_variable() {
        let a = induction_axiom(&f("x < y"), "x", &["y".into()], &Notion::LessThan).unwrap();
        assert_eq!(
            a,
            f("!y. ((!y1. ((!x. (x < y1 -> x < y)) -> y1 < y)) -> !x. x < y)")
        );
    }

    #[test]
    fn generalized_singleton_matches_successor() {
        let w: WaltherScheme = "B=0;S=x+1".parse().unwrap();
        for th in ["x + 0 = x", "x = x"] {
            let a = induction_axiom(&f(th), "x", &[], &Notion::Generalized(w.clone())).unwrap();
            let b = induction_axiom(&f(th), "x", &[], &Notion::Successor).unwrap();
            assert!(a.alpha_eq(&b));
        }
    }

    #[test]
    fn cuts_have_no_axiom() {
        assert_eq!(
            induction_axiom(&f("x = x"), "x", &[], &Notion::Cut(CutKind::Cut)),
            Err(SchemeError::CutHasNoAxiom)
        );
    }

    #[test]
    fn obligations_by_notion() {
        let phi = f("x = x");
        let s = inductiveness_obligations(&phi, "x", &Notion::Successor).unwrap();
        assert_eq!(s.tags(), ["base:0", "step"]);
        assert_eq!(s.obligations[1].goal, f("!x. (x = x -> x + 1 = x + 1)"));

        let k = inductiveness_obligations(&phi, "x", &Notion::KInduction(2)).unwrap();
        assert_eq!(k.tags(), ["base:0", "base:1", "step"]);
        assert_eq!(k.obligations[1].goal, f("0 + 1 = 0 + 1"));
        assert_eq!(
            k.obligations[2].goal,
            f("!x. (x = x & x + 1 = x + 1 -> x + 1 + 1 = x + 1 + 1)")
        );

        let l = inductiveness_obligations(&phi, "x", &Notion::LessThan).unwrap();
        assert_eq!(l.tags(), ["step"]);
        assert_eq!(l.obligations[0].goal, f("!y. ((!x. (x < y -> x = x)) -> y = y)"));

        let am = inductiveness_obligations(&phi, "x", &Notion::Cut(CutKind::AMCut)).unwrap();
        assert_eq!(am.tags(), ["base:0", "step", "downward", "double", "square"]);
        assert_eq!(am.obligations[2].goal, f("!x. !y. (x < y & y = y -> x = x)"));
    }

    #[test]
    fn one_step_notions_coincide() {
        for phi in ["x = x", "x + 0 = x", "x < x + 1 | ?y. x = y*y"] {
            let phi = f(phi);
            let s = inductiveness_obligations(&phi, "x", &Notion::Successor).unwrap();
            let a = inductiveness_obligations(&phi, "x", &Notion::StepK(1)).unwrap();
            let b = inductiveness_obligations(&phi, "x", &Notion::KInduction(1)).unwrap();
            assert!(s.alpha_eq(&a) && s.alpha_eq(&b));
        }
    }

    #[test]
    fn obligations_reject_parameters() {
        assert!(matches!(
            inductiveness_obligations(&f("x < z"), "x", &Notion::Successor),
            Err(SchemeError::ExtraFreeVars { .. })
        ));
    }

    #[test]
    fn walther_examples() {
        let a: WaltherScheme = "B=0;S=x+1".parse().unwrap();
        let b: WaltherScheme = "B=0,1;S=x+1,x+2".parse().unwrap();
        let c: WaltherScheme = "B=0,1;S=x+1".parse().unwrap();
        let d: WaltherScheme = "B=0,1;S=x+2".parse().unwrap();
        assert!(walther_subsumes(&a, &b));
        assert!(!walther_subsumes(&b, &a));
        assert!(!walther_subsumes(&c, &d) && !walther_subsumes(&d, &c));
        assert!(walther_subsumes(&d, &d));
    }

    #[test]
    fn notion_grammar_round_trips() {
        for s in ["succ", "less", "step:2", "kind:3", "pind:2", "cut", "acut", "amcut", "gen:B=0,1;S=x + 2"] {
            let n: Notion = s.parse().unwrap();
            assert_eq!(n.to_string(), s);
        }
        assert_eq!("pind".parse::<Notion>().unwrap(), Notion::PolyInd(2));
        assert!("step:0".parse::<Notion>().is_err());
        assert!("pind:1".parse::<Notion>().is_err());
        assert!("ind".parse::<Notion>().is_err());
        assert!("gen:B=0".parse::<Notion>().is_err());
    }

    #[test]
    fn instances_filter_by_class_and_language() {
        let thetas = [f("x + 0 = x"), f("~(x = 0)"), f("?y. x = y + y"), f("!y. (y < x -> y = 0)")];
        let n = Notion::Successor;
        let atomic = scheme_instances(FormulaClass::Atomic, Language::OrderedRing, &n, &thetas, "x").unwrap();
        assert_eq!(atomic.len(), 1);
        let open = scheme_instances(FormulaClass::QuantifierFree, Language::OrderedRing, &n, &thetas, "x").unwrap();
        assert_eq!(open.len(), 2);
        let bounded = scheme_instances(FormulaClass::Bounded, Language::OrderedRing, &n, &thetas, "x").unwrap();
        assert_eq!(bounded.len(), 3);
        let ring = scheme_instances(FormulaClass::Unrestricted, Language::Ring, &n, &thetas, "x").unwrap();
        assert_eq!(ring.len(), 3);
    }
}
