//! Checks shared by the acceptance target and the ordinary test files.

use std::collections::BTreeSet;

use indshape::fol::{to_dnf, DnfConjunct, Formula, Term};
use indshape::model::{nat_bounded_eval, strip_universals, zx_eval, NatEnv, PolyEnv, ThreeVal, WitnessConfig};
use indshape::schemes::{inductiveness_obligations, pa_minus_axioms, Notion};
use indshape::transforms::kaye_reduce;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{env_of, nat_truth, rand_poly, rand_qf, rand_term};

/// Successor map of a notion: `steps(n, param)`.
pub type Steps = fn(u64, u64) -> Vec<u64>;

/// Notions checked by the finite-induction oracle, with the base points,
/// successor map and parameter that generate what each one reaches.
pub fn oracle_notions() -> Vec<(&'static str, Vec<u64>, Steps, u64)> {
    vec![
        ("succ", vec![0], |n, _| vec![n + 1], 0),
        ("less", vec![], |_, _| vec![], 0),
        ("step:2", vec![0, 1], |n, k| vec![n + k], 2),
        ("step:3", vec![0, 1, 2], |n, k| vec![n + k], 3),
        ("kind:2", vec![0, 1], |n, _| vec![n + 1], 2),
        ("pind:2", vec![0], |n, b| (0..b).map(|i| b * n + i).collect(), 2),
        ("pind:3", vec![0], |n, b| (0..b).map(|i| b * n + i).collect(), 3),
        ("gen:B=0;S=x+2", vec![0], |n, _| vec![n + 2], 0),
        ("gen:B=1;S=x+x,x*x+1", vec![1], |n, _| vec![n + n, n * n + 1], 0),
    ]
}

/// Points `≤ bound` generated from `bases` by `steps`. `less` reaches
/// everything: its single obligation is strong induction.
fn reachable(name: &str, bases: &[u64], steps: Steps, p: u64, bound: u64) -> BTreeSet<u64> {
    if name == "less" {
        return (0..=bound).collect();
    }
    let mut seen: BTreeSet<u64> = bases.iter().copied().filter(|&b| b <= bound).collect();
    let mut todo: Vec<u64> = seen.iter().copied().collect();
    while let Some(n) = todo.pop() {
        for m in steps(n, p) {
            if m <= bound && seen.insert(m) {
                todo.push(m);
            }
        }
    }
    seen
}

#[derive(Debug, Default)]
pub struct OracleReport {
    pub formulas: usize,
    /// (formula, notion) pairs whose obligations all held.
    pub applicable: usize,
    pub violations: Vec<String>,
}

/// Random quantifier-free `θ(x)`; whenever every obligation of a notion holds
/// in the truncation at `bound`, `θ` must hold at every reachable point.
pub fn finite_induction(seed: u64, count: usize, bound: u64) -> OracleReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let notions: Vec<_> = oracle_notions()
        .into_iter()
        .map(|(s, b, st, p)| {
            let reach = reachable(s, &b, st, p, bound);
            (s, s.parse::<Notion>().expect("notion parses"), reach)
        })
        .collect();
    let mut rep = OracleReport { formulas: count, ..OracleReport::default() };
    for _ in 0..count {
        let theta = rand_qf(&mut rng, &["x"], 4, 3);
        for (name, notion, reach) in &notions {
            let obls = inductiveness_obligations(&theta, "x", notion).expect("obligations");
            let holds = obls
                .obligations
                .iter()
                .all(|o| nat_bounded_eval(&o.goal, &NatEnv::new(), bound).expect("closed"));
            if !holds {
                continue;
            }
            rep.applicable += 1;
            for &n in reach {
                if !nat_truth(&theta, &mut env_of(&[("x", n as u128)]), bound as u128) {
                    rep.violations.push(format!("{name}: {theta} fails at x = {n}"));
                }
            }
        }
    }
    rep
}

#[derive(Debug, Default)]
pub struct SampleReport {
    pub evaluations: usize,
    pub failures: Vec<String>,
}

/// Every PA⁻ axiom at `per_axiom` random points of ℤ[X]⁺.
pub fn axiom_sampling(seed: u64, per_axiom: usize, deg: usize, coeff: i64) -> SampleReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cfg = WitnessConfig::default();
    let mut rep = SampleReport::default();
    for (i, ax) in pa_minus_axioms().iter().enumerate() {
        let (vars, matrix) = strip_universals(ax);
        for _ in 0..per_axiom {
            let env: PolyEnv = vars.iter().map(|v| (v.clone(), rand_poly(&mut rng, deg, coeff))).collect();
            rep.evaluations += 1;
            match zx_eval(&matrix, &env, &cfg) {
                Ok(ThreeVal::True) => {}
                other => {
                    let at: Vec<String> = env.iter().map(|(v, p)| format!("{v} = {p}")).collect();
                    rep.failures.push(format!("P{} at {}: {other:?}", i + 1, at.join(", ")));
                }
            }
        }
    }
    rep
}

/// A random conjunct of ring literals over `x` and `y`.
pub fn rand_conjunct(rng: &mut impl Rng) -> DnfConjunct {
    let vars = ["x", "y"];
    let n_eq = rng.gen_range(0..=2);
    let n_neq = rng.gen_range(0..=3);
    let mut lits = |n: usize| -> Vec<(Term, Term)> {
        (0..n).map(|_| (rand_term(rng, &vars, 2, 2), rand_term(rng, &vars, 2, 2))).collect()
    };
    let equalities = lits(n_eq);
    let inequations = lits(n_neq);
    DnfConjunct { equalities, inequations }
}

/// The reduced pair agrees with the conjunct at every point of `0..=bound`².
pub fn kaye_points(seed: u64, count: usize, bound: u128) -> (usize, Vec<String>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bad = Vec::new();
    let mut points = 0;
    for _ in 0..count {
        let c = rand_conjunct(&mut rng);
        let original = c.to_formula();
        let reduced = kaye_reduce(&c).expect("few inequations").to_formula();
        for x in 0..=bound {
            for y in 0..=bound {
                points += 1;
                let mut env = env_of(&[("x", x), ("y", y)]);
                if nat_truth(&original, &mut env, 0) != nat_truth(&reduced, &mut env, 0) {
                    bad.push(format!("{original} vs {reduced} at x = {x}, y = {y}"));
                }
            }
        }
    }
    (points, bad)
}

/// `∀x ∃y (⋁_{r<d} x = d·y + r)`.
pub fn div_claim(d: u64) -> Formula {
    let dy = Term::mul(Term::numeral(d), Term::var("y"));
    let options = (0..d).map(|r| Formula::eq(Term::var("x"), dy.clone().plus_ones(r)));
    Formula::forall("x", Formula::exists("y", Formula::disj(options)))
}

/// Conjuncts of the DNF of `f`, for tests that start from formulas.
pub fn conjuncts(f: &Formula) -> Vec<DnfConjunct> {
    to_dnf(f).expect("small formula")
}
