//! Given-clause saturation with superposition.
//!
//! Inference rules: superposition, equality resolution, equality factoring,
//! restricted by a Knuth–Bendix order and by selecting one negative literal
//! when a clause has any. Eligibility is decided before unification only, a
//! weaker restriction than the textbook one that finds the short proofs of
//! cancellation laws much sooner. Simplification: tautology deletion,
//! demodulation by unit equations, unit simplification, subsumption (forward
//! and backward).

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap, VecDeque};
use std::time::{Duration, Instant};

use sha2::{Digest, Sha256};

use super::clause::{subsumes, unit_matches, Clause, Lit};
use super::cnf::ClauseSet;
use super::term::{
    apply_match, kbo, kbo_gt, match_term, unify, Cmp, PTerm, Signature,
    Subst, Sym,
};

/// Resource limits for one saturation run.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Limits {
    pub max_clauses: usize,
    pub max_seconds: f64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_clauses: 50_000,
            max_seconds: 10.0,
        }
    }
}

/// Every `AGE_PICK`-th given clause is the oldest passive one.
pub const AGE_PICK: usize = 6;

/// Weight multiplier for clauses that do not descend from the goal.
const GOAL_BIAS: usize = 2;

/// A derivation of the empty clause, one line per ancestor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Proof {
    pub lines: Vec<String>,
    /// Number of derived (non-input) lines.
    pub inferences: usize,
    /// Hex SHA-256 of the lines joined by newlines.
    pub hash: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Proof(Proof),
    /// No empty clause and nothing left to do. `complete` is false when some
    /// clause was dropped, so the set need not be satisfiable.
    Saturated { complete: bool },
    ClauseLimit,
    Timeout,
}

#[derive(Debug)]
struct Entry {
    clause: Clause,
    rule: String,
    parents: Vec<usize>,
    /// Eligible literal indices; `selected` means a single chosen negative one.
    eligible: Vec<usize>,
    selected: bool,
    /// Descends from the negated goal.
    goal: bool,
    /// Positive and negative literal counts, then symbol occurrence counts.
    /// An instance of a subclause can only raise them.
    features: Vec<u16>,
}

pub fn saturate(set: &ClauseSet, limits: &Limits) -> Outcome {
    let mut p = Saturation::new(&set.sig, limits);
    for c in &set.clauses {
        p.next_is_goal = c.from_goal;
        if let Err(id) = p.insert(c.clause.clone(), c.source.clone(), Vec::new()) {
            return Outcome::Proof(p.proof(id));
        }
    }
    p.run()
}

struct Saturation<'a> {
    sig: &'a Signature,
    limits: Limits,
    start: Instant,
    store: Vec<Entry>,
    active: Vec<usize>,
    alive: Vec<bool>,
    in_passive: Vec<bool>,
    by_weight: BinaryHeap<Reverse<(usize, usize)>>,
    by_age: VecDeque<usize>,
    picks: usize,
    next_is_goal: bool,
    /// Active units by the head symbols of their sides (`None`: a variable).
    unit_index: HashMap<Option<Sym>, Vec<usize>>,
    rules: Rules,
}

enum Stop {
    Empty(usize),
    Limit,
    Time,
}

impl<'a> Saturation<'a> {
    fn new(sig: &'a Signature, limits: &Limits) -> Self {
        Saturation {
            sig,
            limits: *limits,
            start: Instant::now(),
            store: Vec::new(),
            active: Vec::new(),
            alive: Vec::new(),
            in_passive: Vec::new(),
            by_weight: BinaryHeap::new(),
            by_age: VecDeque::new(),
            picks: 0,
            next_is_goal: false,
            unit_index: HashMap::new(),
            rules: Rules::default(),
        }
    }

    fn out_of_time(&self) -> bool {
        self.start.elapsed() > Duration::from_secs_f64(self.limits.max_seconds)
    }

    fn run(&mut self) -> Outcome {
        match self.main_loop() {
            Ok(()) => Outcome::Saturated { complete: true },
            Err(Stop::Empty(id)) => Outcome::Proof(self.proof(id)),
            Err(Stop::Limit) => Outcome::ClauseLimit,
            Err(Stop::Time) => Outcome::Timeout,
        }
    }

    fn main_loop(&mut self) -> Result<(), Stop> {
        while let Some(id) = self.pick() {
            if self.out_of_time() {
                return Err(Stop::Time);
            }
            // Re-simplify against the current active set.
            let Some((clause, extra)) = self.simplify(&self.store[id].clause) else {
                continue;
            };
            let given = if extra.is_empty() {
                id
            } else {
                let mut parents = vec![id];
                parents.extend(extra);
                let nid = self.push(clause, "simplify".into(), parents);
                if self.store[nid].clause.is_empty() {
                    return Err(Stop::Empty(nid));
                }
                nid
            };
            self.backward(given)?;
            self.activate(given);
            self.generate(given)?;
        }
        Ok(())
    }

    fn pick(&mut self) -> Option<usize> {
        self.picks += 1;
        let by_age = self.picks.is_multiple_of(AGE_PICK);
        loop {
            let id = if by_age {
                self.by_age.pop_front()?
            } else {
                self.by_weight.pop()?.0 .1
            };
            if self.in_passive[id] {
                self.in_passive[id] = false;
                return Some(id);
            }
        }
    }

    fn push(&mut self, clause: Clause, rule: String, parents: Vec<usize>) -> usize {
        let (eligible, selected) = eligibility(self.sig, &clause);
        let goal = if parents.is_empty() {
            self.next_is_goal
        } else {
            parents.iter().any(|&p| self.store[p].goal)
        };
        let features = features(self.sig, &clause);
        self.store.push(Entry {
            goal,
            features,
            clause,
            rule,
            parents,
            eligible,
            selected,
        });
        self.alive.push(false);
        self.in_passive.push(false);
        self.store.len() - 1
    }

    /// Simplifies and queues a new clause. `Err` carries the id of an empty
    /// clause.
    fn insert(&mut self, clause: Clause, rule: String, parents: Vec<usize>) -> Result<(), usize> {
        let Some((simplified, extra)) = self.simplify(&clause) else {
            return Ok(());
        };
        let id = if parents.is_empty() && simplified != clause {
            // keep the input as given so the proof shows where it started
            let input = self.push(clause, rule, Vec::new());
            let mut ps = vec![input];
            ps.extend(extra);
            self.push(simplified, "simplify".into(), ps)
        } else if extra.is_empty() {
            self.push(simplified, rule, parents)
        } else {
            let mut ps = parents;
            ps.extend(extra);
            self.push(simplified, format!("{rule}+simplify"), ps)
        };
        let c = &self.store[id].clause;
        if c.is_empty() {
            return Err(id);
        }
        self.in_passive[id] = true;
        let w = c.weight();
        let prio = if self.store[id].goal { w } else { w * GOAL_BIAS };
        self.by_weight.push(Reverse((prio, id)));
        self.by_age.push_back(id);
        Ok(())
    }

    fn insert_checked(&mut self, c: Clause, rule: &str, parents: Vec<usize>) -> Result<(), Stop> {
        if self.store.len() >= self.limits.max_clauses {
            return Err(Stop::Limit);
        }
        self.insert(c, rule.to_string(), parents).map_err(Stop::Empty)
    }

    fn activate(&mut self, id: usize) {
        self.alive[id] = true;
        self.active.push(id);
        let c = &self.store[id].clause;
        if c.lits.len() == 1 {
            let l = &c.lits[0];
            // keyed by the head of either side, so lookups by literal heads find it
            self.unit_index.entry(l.lhs.head()).or_default().push(id);
            if l.rhs.head() != l.lhs.head() {
                self.unit_index.entry(l.rhs.head()).or_default().push(id);
            }
            self.rules.add(self.sig, id, l);
        }
    }

    /// Forward simplification. `None` if the clause is redundant; otherwise
    /// the simplified clause and the units used.
    fn simplify(&self, c: &Clause) -> Option<(Clause, Vec<usize>)> {
        let mut c = c.clone();
        let mut used = Vec::new();
        c.cleanup();
        if c.is_tautology() {
            return None;
        }
        // bounded in case rewriting and AC sorting ever disagree
        for _ in 0..16 {
            let mut changed = false;
            for lit in &mut c.lits {
                for side in [&mut lit.lhs, &mut lit.rhs] {
                    if let Some(n) = self.rules.normalize(self.sig, &self.alive, side, &mut used) {
                        *side = n;
                        changed = true;
                    }
                }
            }
            // unit simplification
            let before = c.lits.len();
            let mut kept = Vec::with_capacity(c.lits.len());
            for lit in c.lits.drain(..) {
                let killer = [lit.lhs.head(), lit.rhs.head(), None]
                    .iter()
                    .filter_map(|h| self.unit_index.get(h))
                    .flatten()
                    .copied()
                    .find(|&u| {
                        let ul = &self.store[u].clause.lits[0];
                        self.alive[u] && ul.positive != lit.positive && unit_matches(ul, &lit)
                    });
                match killer {
                    Some(u) => used.push(u),
                    None => kept.push(lit),
                }
            }
            c.lits = kept;
            changed |= c.lits.len() != before;
            if !changed {
                break;
            }
            c.cleanup();
            if c.is_tautology() {
                return None;
            }
        }
        used.sort_unstable();
        used.dedup();
        if c.is_empty() {
            return Some((Clause::new(c.lits), used));
        }
        let c = Clause::new(c.lits);
        let fc = features(self.sig, &c);
        let subsumed = self.active.iter().any(|&i| {
            let e = &self.store[i];
            self.alive[i] && features_le(&e.features, &fc) && subsumes(&e.clause, &c)
        });
        if subsumed {
            return None;
        }
        Some((c, used))
    }

    /// Removes active clauses made redundant by `g`; rewritten versions are
    /// queued again.
    fn backward(&mut self, g: usize) -> Result<(), Stop> {
        let gc = self.store[g].clause.clone();
        let unit = gc.lits.len() == 1;
        let mut only_g = Rules::default();
        if unit {
            only_g.add(self.sig, g, &gc.lits[0]);
        }
        let mut requeue = Vec::new();
        for k in 0..self.active.len() {
            let a = self.active[k];
            if !self.alive[a] {
                continue;
            }
            let ac = &self.store[a].clause;
            if features_le(&self.store[g].features, &self.store[a].features) && subsumes(&gc, ac) {
                self.alive[a] = false;
                continue;
            }
            if !unit {
                continue;
            }
            let gl = &gc.lits[0];
            let mut changed = false;
            let mut lits = Vec::with_capacity(ac.lits.len());
            for lit in &ac.lits {
                if gl.positive != lit.positive && unit_matches(gl, lit) {
                    changed = true;
                    continue;
                }
                let mut lit = lit.clone();
                for side in [&mut lit.lhs, &mut lit.rhs] {
                    if let Some(n) = only_g.normalize(self.sig, &self.alive, side, &mut Vec::new()) {
                        *side = n;
                        changed = true;
                    }
                }
                lits.push(lit);
            }
            if changed {
                self.alive[a] = false;
                requeue.push((Clause::new(lits), a));
            }
        }
        self.active.retain(|&i| self.alive[i]);
        for (c, a) in requeue {
            self.insert_checked(c, "simplify", vec![a, g])?;
        }
        Ok(())
    }

    fn generate(&mut self, g: usize) -> Result<(), Stop> {
        let mut out: Vec<(Clause, &'static str, Vec<usize>)> = Vec::new();
        {
            let ge = &self.store[g];
            for c in equality_resolution(self.sig, ge) {
                out.push((c, "eq_res", vec![g]));
            }
            for c in equality_factoring(self.sig, ge) {
                out.push((c, "eq_fact", vec![g]));
            }
            for &a in &self.active {
                if !self.alive[a] {
                    continue;
                }
                let ae = &self.store[a];
                for c in superpositions(self.sig, ge, ae) {
                    out.push((c, "sup", vec![g, a]));
                }
                if a != g {
                    for c in superpositions(self.sig, ae, ge) {
                        out.push((c, "sup", vec![a, g]));
                    }
                }
            }
        }
        for (c, rule, parents) in out {
            if self.out_of_time() {
                return Err(Stop::Time);
            }
            self.insert_checked(c, rule, parents)?;
        }
        Ok(())
    }

    fn proof(&self, empty: usize) -> Proof {
        let mut seen = vec![false; self.store.len()];
        let mut stack = vec![empty];
        while let Some(i) = stack.pop() {
            if !seen[i] {
                seen[i] = true;
                stack.extend(&self.store[i].parents);
            }
        }
        // renumber the ancestors densely
        let ids: Vec<usize> = (0..self.store.len()).filter(|&i| seen[i]).collect();
        let local = |i: usize| ids.binary_search(&i).map_or(i, |k| k + 1);
        let mut lines = Vec::new();
        let mut inferences = 0;
        for (k, &i) in ids.iter().enumerate() {
            let e = &self.store[i];
            let just = if e.parents.is_empty() {
                e.rule.clone()
            } else {
                inferences += 1;
                let ps: Vec<String> = e.parents.iter().map(|&p| local(p).to_string()).collect();
                format!("{} {}", e.rule, ps.join(","))
            };
            lines.push(format!("{}. {} [{}]", k + 1, e.clause.display(self.sig), just));
        }
        let hash = Sha256::digest(lines.join("\n").as_bytes());
        Proof {
            lines,
            inferences,
            hash: format!("{hash:x}"),
        }
    }
}

/// A rewrite rule from an active unit equation.
struct Rule {
    /// Heads of the arguments of `l`; `None` for a variable.
    arg_heads: Vec<Option<Sym>>,
    l: PTerm,
    r: PTerm,
    /// `l ≻ r`, so every instance is decreasing.
    oriented: bool,
    unit: usize,
}

/// Demodulators indexed by the head symbol of their left side.
#[derive(Default)]
struct Rules {
    by_head: HashMap<Sym, Vec<Rule>>,
}

impl Rules {
    fn add(&mut self, sig: &Signature, unit: usize, lit: &Lit) {
        if !lit.positive || lit.is_pred() {
            return;
        }
        let mut push = |l: &PTerm, r: &PTerm, oriented: bool| {
            if let Some(h) = l.head() {
                let arg_heads = match l {
                    PTerm::App(_, args) => args.iter().map(PTerm::head).collect(),
                    PTerm::Var(_) => Vec::new(),
                };
                self.by_head.entry(h).or_default().push(Rule {
                    arg_heads,
                    l: l.clone(),
                    r: r.clone(),
                    oriented,
                    unit,
                });
            }
        };
        match kbo(sig, &lit.lhs, &lit.rhs) {
            Cmp::Greater => push(&lit.lhs, &lit.rhs, true),
            Cmp::Less => push(&lit.rhs, &lit.lhs, true),
            Cmp::Incomparable => {
                push(&lit.lhs, &lit.rhs, false);
                push(&lit.rhs, &lit.lhs, false);
            }
            Cmp::Equal => {}
        }
    }

    /// Innermost normal form under the live rules, `None` if `t` is already
    /// normal.
    fn normalize(
        &self,
        sig: &Signature,
        alive: &[bool],
        t: &PTerm,
        used: &mut Vec<usize>,
    ) -> Option<PTerm> {
        let PTerm::App(s, args) = t else {
            return None;
        };
        let mut new_args: Option<Vec<PTerm>> = None;
        for (i, a) in args.iter().enumerate() {
            if let Some(n) = self.normalize(sig, alive, a, used) {
                new_args.get_or_insert_with(|| args.clone())[i] = n;
            }
        }
        let rebuilt = new_args.map(|a| PTerm::App(*s, a));
        let cur = rebuilt.as_ref().unwrap_or(t);
        let PTerm::App(_, cur_args) = cur else {
            unreachable!()
        };
        if let Some(rules) = self.by_head.get(s) {
            for rule in rules {
                let compatible = rule
                    .arg_heads
                    .iter()
                    .zip(cur_args)
                    .all(|(h, a)| h.is_none() || *h == a.head());
                if !compatible || !alive[rule.unit] {
                    continue;
                }
                let mut m = Vec::new();
                if !match_term(&rule.l, cur, &mut m) {
                    continue;
                }
                let rr = apply_match(&rule.r, &m);
                if rule.oriented || kbo_gt(sig, cur, &rr) {
                    used.push(rule.unit);
                    return Some(self.normalize(sig, alive, &rr, used).unwrap_or(rr));
                }
            }
        }
        rebuilt
    }
}

fn features(sig: &Signature, c: &Clause) -> Vec<u16> {
    fn count(t: &PTerm, f: &mut [u16]) {
        if let PTerm::App(s, args) = t {
            f[2 + *s as usize] += 1;
            args.iter().for_each(|a| count(a, f));
        }
    }
    let mut f = vec![0u16; 2 + sig.len()];
    for l in &c.lits {
        f[usize::from(!l.positive)] += 1;
        count(&l.lhs, &mut f);
        count(&l.rhs, &mut f);
    }
    f
}

fn features_le(a: &[u16], b: &[u16]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn lit_terms(l: &Lit) -> Vec<&PTerm> {
    if l.positive {
        vec![&l.lhs, &l.rhs]
    } else {
        vec![&l.lhs, &l.lhs, &l.rhs, &l.rhs]
    }
}

/// Multiset extension of the term order.
fn multiset_gt(sig: &Signature, a: &[&PTerm], b: &[&PTerm]) -> bool {
    let mut a: Vec<&PTerm> = a.to_vec();
    let mut b_rest = Vec::new();
    for t in b {
        match a.iter().position(|s| s == t) {
            Some(i) => {
                a.swap_remove(i);
            }
            None => b_rest.push(*t),
        }
    }
    !a.is_empty() && b_rest.iter().all(|t| a.iter().any(|s| kbo_gt(sig, s, t)))
}

fn lit_gt(sig: &Signature, a: &Lit, b: &Lit) -> bool {
    multiset_gt(sig, &lit_terms(a), &lit_terms(b))
}

/// Literal `i` is not below any other literal (or, if `strict`, neither below
/// nor equal to one).
fn is_maximal(sig: &Signature, lits: &[Lit], i: usize, strict: bool) -> bool {
    lits.iter().enumerate().all(|(j, m)| {
        j == i || !(lit_gt(sig, m, &lits[i]) || (strict && m == &lits[i]))
    })
}

fn eligibility(sig: &Signature, c: &Clause) -> (Vec<usize>, bool) {
    let neg = c
        .lits
        .iter()
        .enumerate()
        .filter(|(_, l)| !l.positive)
        .max_by_key(|(i, l)| (l.weight(), Reverse(*i)));
    if let Some((i, _)) = neg {
        return (vec![i], true);
    }
    let elig = (0..c.lits.len())
        .filter(|&i| is_maximal(sig, &c.lits, i, false))
        .collect();
    (elig, false)
}

/// Applies `sub` to all literals.
fn instantiate(lits: &[Lit], sub: &Subst) -> Vec<Lit> {
    lits.iter().map(|l| l.map(&mut |t| sub.apply(t))).collect()
}

fn equality_resolution(sig: &Signature, e: &Entry) -> Vec<Clause> {
    let mut out = Vec::new();
    for &i in &e.eligible {
        let l = &e.clause.lits[i];
        if l.positive {
            continue;
        }
        let mut sub = Subst::new();
        if !unify(sig, &l.lhs, &l.rhs, &mut sub) {
            continue;
        }
        let lits = instantiate(&e.clause.lits, &sub);
        let rest = lits
            .into_iter()
            .enumerate()
            .filter_map(|(j, l)| (j != i).then_some(l))
            .collect();
        out.push(Clause::new(rest));
    }
    out
}

fn equality_factoring(sig: &Signature, e: &Entry) -> Vec<Clause> {
    let mut out = Vec::new();
    if e.selected {
        return out;
    }
    let lits = &e.clause.lits;
    for &i in &e.eligible {
        let li = &lits[i];
        if !li.positive {
            continue;
        }
        for (j, lj) in lits.iter().enumerate() {
            if j == i || !lj.positive {
                continue;
            }
            for (s, t) in [(&li.lhs, &li.rhs), (&li.rhs, &li.lhs)] {
                for (s2, t2) in [(&lj.lhs, &lj.rhs), (&lj.rhs, &lj.lhs)] {
                    let mut sub = Subst::new();
                    if !unify(sig, s, s2, &mut sub) {
                        continue;
                    }
                    let (ss, st) = (sub.apply(s), sub.apply(t));
                    if kbo_gt(sig, &st, &ss) {
                        continue;
                    }
                    let inst = instantiate(lits, &sub);
                    let mut rest: Vec<Lit> = inst
                        .into_iter()
                        .enumerate()
                        .filter_map(|(k, l)| (k != i).then_some(l))
                        .collect();
                    rest.push(Lit::eq(false, st, sub.apply(t2)));
                    out.push(Clause::new(rest));
                }
            }
        }
    }
    out
}

/// All superpositions from a positive eligible literal of `from` into an
/// eligible literal of `into`.
fn superpositions(sig: &Signature, from: &Entry, into: &Entry) -> Vec<Clause> {
    let mut out = Vec::new();
    if from.selected {
        return out;
    }
    let shift = from.clause.var_count();
    let into_lits: Vec<Lit> = into
        .clause
        .lits
        .iter()
        .map(|l| l.map(&mut |t| t.offset(shift)))
        .collect();
    for &fi in &from.eligible {
        let fl = &from.clause.lits[fi];
        if !fl.positive {
            continue;
        }
        for (l, r) in [(&fl.lhs, &fl.rhs), (&fl.rhs, &fl.lhs)] {
            if matches!(l, PTerm::Var(_)) || kbo(sig, l, r) == Cmp::Less {
                continue;
            }
            for &ii in &into.eligible {
                let il = &into_lits[ii];
                for side in 0..2 {
                    let (s, other) = if side == 0 { (&il.lhs, &il.rhs) } else { (&il.rhs, &il.lhs) };
                    if kbo(sig, s, other) == Cmp::Less {
                        continue;
                    }
                    let mut positions = Vec::new();
                    s.positions(&mut positions, &mut Vec::new());
                    for pos in positions {
                        let mut sub = Subst::new();
                        if !unify(sig, l, s.at(&pos), &mut sub) {
                            continue;
                        }
                        let (sl, sr) = (sub.apply(l), sub.apply(r));
                        if sl == sr || kbo_gt(sig, &sr, &sl) {
                            continue;
                        }
                        let (ss, so) = (sub.apply(s), sub.apply(other));
                        if kbo_gt(sig, &so, &ss) {
                            continue;
                        }
                        let finst = instantiate(&from.clause.lits, &sub);
                        let iinst = instantiate(&into_lits, &sub);
                        let rewritten = ss.replace_at(&pos, &sr);
                        let new_lit = if side == 0 {
                            Lit::eq(il.positive, rewritten, so)
                        } else {
                            Lit::eq(il.positive, so, rewritten)
                        };
                        let mut lits: Vec<Lit> = finst
                            .into_iter()
                            .enumerate()
                            .filter_map(|(k, l)| (k != fi).then_some(l))
                            .collect();
                        lits.extend(
                            iinst
                                .into_iter()
                                .enumerate()
                                .filter_map(|(k, l)| (k != ii).then_some(l)),
                        );
                        lits.push(new_lit);
                        out.push(Clause::new(lits));
                    }
                }
            }
        }
    }
    out
}
