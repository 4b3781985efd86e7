//! Discharging obligations.
//!
//! The built-in backend clausifies `base + hypotheses ∧ ¬goal` and runs a
//! superposition prover on it ([`saturate`]). The external backend hands a
//! TPTP problem to another prover ([`external`]). Before either runs, the
//! sequent is evaluated in ℤ\[X\]⁺: that structure satisfies PA⁻, so a
//! falsifying assignment there shows the goal does not follow, and false
//! obligations are rejected without waiting for a resource limit.

pub mod clause;
pub mod cnf;
pub mod external;
pub mod saturate;
pub mod term;

use std::collections::BTreeMap;
use std::time::Duration;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::fol::Formula;
use crate::model::{refute_claim_with, WitnessConfig};
use crate::par::{self, Exec};
use crate::schemes::{BaseTheory, Obligation, ObligationSet};
use cnf::{clausify_with, ClausifyOptions};
use external::{run_external, ExternalResult};
pub use saturate::Limits;
use saturate::{saturate, Outcome};

#[derive(Clone, Debug, PartialEq)]
pub enum Backend {
    Builtin(Limits),
    /// A command template with an optional `{file}` placeholder.
    External { command: String, timeout: Duration },
}

impl Default for Backend {
    fn default() -> Self {
        Backend::Builtin(Limits::default())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum UnknownReason {
    Timeout,
    ClauseLimit,
    ExternalError(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    /// `trace` is the derivation (built-in) or the status line (external);
    /// `hash` is the hex SHA-256 of the trace lines.
    Proved { trace: Vec<String>, hash: String },
    /// `saturated`: the built-in prover ran out of inferences without the
    /// empty clause. Otherwise a countermodel is described.
    Refuted {
        saturated: bool,
        countermodel: Option<String>,
    },
    Unknown(UnknownReason),
}

impl Verdict {
    pub fn is_proved(&self) -> bool {
        matches!(self, Verdict::Proved { .. })
    }

    pub fn is_refuted(&self) -> bool {
        matches!(self, Verdict::Refuted { .. })
    }

    /// One-word summary.
    pub fn word(&self) -> &'static str {
        match self {
            Verdict::Proved { .. } => "proved",
            Verdict::Refuted { .. } => "refuted",
            Verdict::Unknown(_) => "unknown",
        }
    }
}

/// The candidate search used to reject false sequents. Kept small: it runs
/// before every proof attempt.
pub fn countermodel_config() -> WitnessConfig {
    WitnessConfig {
        max_degree: 2,
        max_coeff: 3,
        max_assignments: 200,
    }
}

/// Attempts every obligation independently. Results do not depend on `exec`
/// except through wall-clock limits.
pub fn prove(obls: &ObligationSet, backend: &Backend, exec: Exec) -> BTreeMap<String, Verdict> {
    let verdicts = par::map(exec, &obls.obligations, |o: &Obligation| {
        prove_sequent(obls.base, &o.hypotheses, &o.goal, backend)
    });
    obls.obligations
        .iter()
        .map(|o| o.tag.clone())
        .zip(verdicts)
        .collect()
}

/// `base + hypotheses ⊢ goal`, free variables read universally.
pub fn prove_sequent(
    base: BaseTheory,
    hypotheses: &[Formula],
    goal: &Formula,
    backend: &Backend,
) -> Verdict {
    if let Some(v) = countermodel(hypotheses, goal) {
        return v;
    }
    let mut inputs: Vec<(String, Formula)> = base
        .axioms()
        .into_iter()
        .enumerate()
        .map(|(i, a)| (format!("p{}", i + 1), a))
        .collect();
    inputs.extend(
        hypotheses
            .iter()
            .enumerate()
            .map(|(i, h)| (format!("h{}", i + 1), h.clone())),
    );
    match backend {
        Backend::Builtin(limits) => builtin(&inputs, goal, limits),
        Backend::External { command, timeout } => {
            match run_external(command, *timeout, &inputs, goal) {
                Ok(ExternalResult::Proved { status }) => proved(vec![format!("SZS status {status}")]),
                Ok(ExternalResult::Refuted { status }) => Verdict::Refuted {
                    saturated: false,
                    countermodel: Some(format!("external prover: SZS status {status}")),
                },
                Ok(ExternalResult::Unknown { status }) => Verdict::Unknown(UnknownReason::ExternalError(
                    match status {
                        Some(s) => format!("SZS status {s}"),
                        None => "no SZS status".to_string(),
                    },
                )),
                Ok(ExternalResult::Timeout) => Verdict::Unknown(UnknownReason::Timeout),
                Err(e) => Verdict::Unknown(UnknownReason::ExternalError(e.to_string())),
            }
        }
    }
}

fn builtin(inputs: &[(String, Formula)], goal: &Formula, limits: &Limits) -> Verdict {
    let opts = ClausifyOptions {
        equality_axioms: false,
        ..ClausifyOptions::default()
    };
    let set = match clausify_with(inputs, Some(goal), opts) {
        Ok(s) => s,
        Err(_) => return Verdict::Unknown(UnknownReason::ClauseLimit),
    };
    match saturate(&set, limits) {
        Outcome::Proof(p) => Verdict::Proved {
            trace: p.lines,
            hash: p.hash,
        },
        Outcome::Saturated { complete: true } => Verdict::Refuted {
            saturated: true,
            countermodel: None,
        },
        Outcome::Saturated { complete: false } | Outcome::ClauseLimit => {
            Verdict::Unknown(UnknownReason::ClauseLimit)
        }
        Outcome::Timeout => Verdict::Unknown(UnknownReason::Timeout),
    }
}

fn proved(trace: Vec<String>) -> Verdict {
    let hash = format!("{:x}", Sha256::digest(trace.join("\n").as_bytes()));
    Verdict::Proved { trace, hash }
}

/// A falsifying assignment of `hypotheses → goal` in ℤ\[X\]⁺, if the search
/// finds one.
fn countermodel(hypotheses: &[Formula], goal: &Formula) -> Option<Verdict> {
    let claim = if hypotheses.is_empty() {
        goal.clone()
    } else {
        // each hypothesis is closed on its own, as it is for the prover
        let hs = hypotheses.iter().map(Formula::universal_closure);
        Formula::implies(Formula::conj(hs), goal.clone())
    };
    let out = refute_claim_with(&claim, &countermodel_config(), Exec::Sequential).ok()?;
    let r = out.refutation?;
    let shown: Vec<String> = r.assignment.iter().map(|(v, p)| format!("{v} = {p}")).collect();
    let text = if shown.is_empty() {
        "false in Z[X]+".to_string()
    } else {
        format!("false in Z[X]+ at {}", shown.join(", "))
    };
    Some(Verdict::Refuted {
        saturated: false,
        countermodel: Some(text),
    })
}
