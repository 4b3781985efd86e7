//! The `indshape` command line.
//!
//! [`run`] does all the work and returns the rendered report with its exit
//! code, so the binary is a thin wrapper and tests can drive commands
//! in-process. Exit codes: 0 when every check holds, 1 on any negative
//! answer, 2 when something stayed unknown, 3 on a usage error.
//!
//! Settings come from flags, then `INDSHAPE_PROVER_CMD`, then a key=value
//! file (`--config`, or `./indshape.conf` when present). Any formula
//! argument written `@path` is read from that file.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use thiserror::Error;

use crate::fol::{is_ring_language, parse_formula, to_dnf, Formula};
use crate::model::{
    nat_bounded_eval, refute_claim_with, walther_unreachable, zx_eval_traced, NatEnv, PolyEnv,
    PolyPlus, ThreeVal, WitnessConfig,
};
use crate::par::Exec;
use crate::prover::external::PROVER_CMD_ENV;
use crate::prover::{prove, Backend, Limits, UnknownReason, Verdict};
use crate::schemes::{induction_axiom, inductiveness_obligations, walther_subsumes, Notion, WaltherScheme};
use crate::transforms::{
    axiom_to_inductive, equivalence_shape, gallery, kaye_reduce, merge, scheme_substitute,
    Construction, GalleryInputs, InductionInput, SchemeTemplate,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_UNKNOWN: i32 = 2;
pub const EXIT_USAGE: i32 = 3;

/// Printed by `walther` when neither scheme is a subset of the other.
pub const WALTHER_CAVEAT: &str =
    "incomparable by subset test; NOTE: syntactic comparison is incomplete (Thm IOpen)";

/// Default settings file, looked up in the working directory.
pub const CONFIG_FILE: &str = "indshape.conf";

/// How far `walther` checks that a scheme reaches every natural.
const WALTHER_REACH: u64 = 64;

#[derive(Parser, Debug)]
#[command(name = "indshape", version, about = "Induction-axiom shapes over PA-minus")]
pub struct Cli {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    /// key=value settings file.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Attempt obligations one at a time.
    #[arg(long, global = true)]
    pub sequential: bool,
    #[command(subcommand)]
    pub cmd: Cmd,
}

#[derive(Args, Debug, Default)]
pub struct ProverArgs {
    /// builtin or external.
    #[arg(long)]
    pub backend: Option<String>,
    /// External prover command; `{file}` marks the problem path.
    #[arg(long)]
    pub prover_cmd: Option<String>,
    /// External prover timeout in seconds.
    #[arg(long)]
    pub timeout: Option<f64>,
    #[arg(long)]
    pub max_clauses: Option<usize>,
    #[arg(long)]
    pub max_seconds: Option<f64>,
    /// Print derivations of proved obligations.
    #[arg(long)]
    pub trace: bool,
}

#[derive(Args, Debug, Default)]
pub struct SearchArgs {
    #[arg(long)]
    pub max_degree: Option<usize>,
    #[arg(long)]
    pub max_coeff: Option<u64>,
    #[arg(long)]
    pub max_assignments: Option<usize>,
}

#[derive(Subcommand, Debug)]
pub enum Cmd {
    /// Generate and discharge the obligations for a formula to be inductive.
    Check {
        #[arg(long)]
        formula: String,
        #[arg(long, default_value = "x")]
        var: String,
        /// succ | less | step:k | kind:k | pind[:b] | cut | acut | amcut | gen:B=..;S=..
        #[arg(long)]
        notion: String,
        #[command(flatten)]
        prover: ProverArgs,
    },
    /// Print an induction axiom.
    Scheme {
        #[arg(long)]
        theta: String,
        #[arg(long, default_value = "x")]
        var: String,
        /// Parameters, outermost first.
        #[arg(long, value_delimiter = ',')]
        params: Vec<String>,
        #[arg(long)]
        notion: String,
    },
    /// Syntactic constructions.
    Transform {
        #[command(subcommand)]
        kind: TransformCmd,
    },
    /// Search ℤ[X]⁺ for a counterexample.
    Refute {
        #[arg(long)]
        formula: String,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Evaluate a formula at a point of ℤ[X]⁺ or of bounded ℕ.
    Eval {
        #[arg(long)]
        formula: String,
        /// Assignments such as `x=X+1,y=2`.
        #[arg(long, default_value = "")]
        at: String,
        /// zx or nat.
        #[arg(long, default_value = "zx")]
        model: String,
        /// Quantifier range for the nat model.
        #[arg(long, default_value_t = 16)]
        bound: u64,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Compare two schemes by the subset test.
    Walther {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    /// Print every witness construction.
    Gallery {
        #[arg(long)]
        phi: String,
        #[arg(long)]
        delta: String,
        #[arg(long, default_value_t = 1)]
        m: u64,
        #[arg(long, default_value_t = 1)]
        n: u64,
    },
}

#[derive(Subcommand, Debug)]
pub enum TransformCmd {
    /// Induction axiom to inductive formula.
    Normalize {
        #[arg(long)]
        theta: String,
        #[arg(long, default_value = "x")]
        var: String,
        #[arg(long, value_delimiter = ',')]
        params: Vec<String>,
    },
    /// Conjunction of normalized axioms; parameters are the free variables
    /// other than `var`.
    Merge {
        #[arg(long = "theta", required = true)]
        thetas: Vec<String>,
        #[arg(long, default_value = "x")]
        var: String,
    },
    /// `~sigma -> psi`.
    Equiv {
        #[arg(long)]
        sigma: String,
        #[arg(long)]
        psi: String,
    },
    /// Instantiate a template written with `X(t)`.
    Substitute {
        #[arg(long)]
        template: String,
        #[arg(long)]
        phi: String,
        #[arg(long, default_value = "x")]
        var: String,
        #[arg(long, value_delimiter = ',')]
        params: Vec<String>,
    },
    /// One witness construction.
    Gallery {
        #[arg(long)]
        name: String,
        #[arg(long)]
        phi: String,
        #[arg(long)]
        delta: Option<String>,
        #[arg(long)]
        m: Option<u64>,
        #[arg(long)]
        n: Option<u64>,
    },
    /// Sum-of-squares form of each DNF conjunct of a ring formula.
    Kaye {
        #[arg(long)]
        formula: String,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Negative,
    Unknown,
}

/// One checked item of a report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReportItem {
    pub tag: String,
    pub status: Status,
    /// `proved`, `refuted`, `true`, `no`, …
    pub word: String,
    pub detail: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RunReport {
    pub command: Vec<String>,
    /// Constructed formulas and other plain output.
    pub output: Vec<String>,
    pub items: Vec<ReportItem>,
    pub notes: Vec<String>,
    pub exit_code: i32,
}

impl RunReport {
    fn new(command: &[String]) -> RunReport {
        RunReport {
            command: command.to_vec(),
            output: Vec::new(),
            items: Vec::new(),
            notes: Vec::new(),
            exit_code: EXIT_OK,
        }
    }

    fn item(&mut self, tag: impl Into<String>, status: Status, word: &str, detail: Vec<String>) {
        self.items.push(ReportItem {
            tag: tag.into(),
            status,
            word: word.to_string(),
            detail,
        });
    }

    fn finish(mut self) -> RunReport {
        let any = |s| self.items.iter().any(|i| i.status == s);
        self.exit_code = if any(Status::Negative) {
            EXIT_NEGATIVE
        } else if any(Status::Unknown) {
            EXIT_UNKNOWN
        } else {
            EXIT_OK
        };
        self
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for l in &self.output {
            out.push_str(l);
            out.push('\n');
        }
        for it in &self.items {
            out.push_str(&format!("{}: {}\n", it.tag, it.word));
            for d in &it.detail {
                out.push_str(&format!("  {d}\n"));
            }
        }
        for n in &self.notes {
            out.push_str(n);
            out.push('\n');
        }
        out
    }

    pub fn render_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

/// What the binary should print and return.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

#[derive(Debug, Error)]
pub enum UsageError {
    #[error("{0}")]
    Bad(String),
    #[error("cannot read {path}: {source}")]
    Read {
        path: String,
        source: std::io::Error,
    },
}

fn bad(e: impl std::fmt::Display) -> UsageError {
    UsageError::Bad(e.to_string())
}

/// Runs one command; `args[0]` is the program name.
pub fn run(args: &[String]) -> Output {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    Output { stdout: text, stderr: String::new(), code: EXIT_OK }
                }
                _ => Output { stdout: String::new(), stderr: text, code: EXIT_USAGE },
            };
        }
    };
    match execute(&cli, &args[1..]) {
        Ok(report) => Output {
            stdout: if cli.json { report.render_json() } else { report.render_text() },
            stderr: String::new(),
            code: report.exit_code,
        },
        Err(e) => Output {
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
            code: EXIT_USAGE,
        },
    }
}

/// Settings read from a key=value file.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Config {
    pub values: BTreeMap<String, String>,
}

const CONFIG_KEYS: [&str; 8] = [
    "backend",
    "prover_cmd",
    "timeout",
    "max_clauses",
    "max_seconds",
    "max_degree",
    "max_coeff",
    "max_assignments",
];

impl Config {
    pub fn parse(text: &str) -> Result<Config, UsageError> {
        let mut values = BTreeMap::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| bad(format!("config line {}: expected key=value", i + 1)))?;
            let k = k.trim();
            if !CONFIG_KEYS.contains(&k) {
                return Err(bad(format!("config line {}: unknown key {k:?}", i + 1)));
            }
            values.insert(k.to_string(), v.trim().to_string());
        }
        Ok(Config { values })
    }

    fn load(explicit: Option<&Path>) -> Result<Config, UsageError> {
        let path = match explicit {
            Some(p) => p.to_path_buf(),
            None => {
                let p = PathBuf::from(CONFIG_FILE);
                if !p.is_file() {
                    return Ok(Config::default());
                }
                p
            }
        };
        let text = std::fs::read_to_string(&path).map_err(|source| UsageError::Read {
            path: path.display().to_string(),
            source,
        })?;
        Config::parse(&text)
    }

    fn get<T: std::str::FromStr>(&self, key: &str) -> Result<Option<T>, UsageError> {
        self.values
            .get(key)
            .map(|v| v.parse().map_err(|_| bad(format!("config: bad value {v:?} for {key}"))))
            .transpose()
    }
}

fn read_arg(text: &str) -> Result<String, UsageError> {
    match text.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path)
            .map(|s| s.trim().to_string())
            .map_err(|source| UsageError::Read {
                path: path.to_string(),
                source,
            }),
        None => Ok(text.to_string()),
    }
}

fn formula_arg(text: &str) -> Result<Formula, UsageError> {
    parse_formula(&read_arg(text)?).map_err(bad)
}

fn backend(p: &ProverArgs, cfg: &Config) -> Result<Backend, UsageError> {
    let cmd = match &p.prover_cmd {
        Some(c) => Some(c.clone()),
        None => std::env::var(PROVER_CMD_ENV)
            .ok()
            .filter(|c| !c.trim().is_empty())
            .or(cfg.get("prover_cmd")?),
    };
    let kind = match &p.backend {
        Some(b) => b.clone(),
        None => match cfg.get::<String>("backend")? {
            Some(b) => b,
            None if p.prover_cmd.is_some() => "external".into(),
            None => "builtin".into(),
        },
    };
    match kind.as_str() {
        "builtin" => {
            let d = Limits::default();
            Ok(Backend::Builtin(Limits {
                max_clauses: p.max_clauses.or(cfg.get("max_clauses")?).unwrap_or(d.max_clauses),
                max_seconds: p.max_seconds.or(cfg.get("max_seconds")?).unwrap_or(d.max_seconds),
            }))
        }
        "external" => {
            let command = cmd.ok_or_else(|| {
                bad(format!("external backend needs --prover-cmd or {PROVER_CMD_ENV}"))
            })?;
            let secs: f64 = p.timeout.or(cfg.get("timeout")?).unwrap_or(30.0);
            if !(secs > 0.0 && secs.is_finite()) {
                return Err(bad("timeout must be positive"));
            }
            Ok(Backend::External {
                command,
                timeout: Duration::from_secs_f64(secs),
            })
        }
        other => Err(bad(format!("unknown backend {other:?}; expected builtin or external"))),
    }
}

fn witness_config(s: &SearchArgs, cfg: &Config) -> Result<WitnessConfig, UsageError> {
    let d = WitnessConfig::default();
    Ok(WitnessConfig {
        max_degree: s.max_degree.or(cfg.get("max_degree")?).unwrap_or(d.max_degree),
        max_coeff: s.max_coeff.or(cfg.get("max_coeff")?).unwrap_or(d.max_coeff),
        max_assignments: s
            .max_assignments
            .or(cfg.get("max_assignments")?)
            .unwrap_or(d.max_assignments),
    })
}

fn execute(cli: &Cli, args: &[String]) -> Result<RunReport, UsageError> {
    let cfg = Config::load(cli.config.as_deref())?;
    let exec = if cli.sequential { Exec::Sequential } else { Exec::Parallel };
    let mut r = RunReport::new(args);
    match &cli.cmd {
        Cmd::Check {
            formula,
            var,
            notion,
            prover,
        } => {
            let phi = formula_arg(formula)?;
            let notion: Notion = notion.parse().map_err(bad)?;
            let obls = inductiveness_obligations(&phi, var, &notion).map_err(bad)?;
            let backend = backend(prover, &cfg)?;
            let verdicts = prove(&obls, &backend, exec);
            for o in &obls.obligations {
                let v = &verdicts[&o.tag];
                let mut detail = vec![format!("goal {}", o.goal)];
                let status = match v {
                    Verdict::Proved { trace, hash } => {
                        detail.push(format!("hash {hash}"));
                        if prover.trace {
                            detail.extend(trace.iter().cloned());
                        }
                        Status::Ok
                    }
                    Verdict::Refuted {
                        saturated,
                        countermodel,
                    } => {
                        if *saturated {
                            detail.push("saturated without a proof".into());
                        }
                        if let Some(c) = countermodel {
                            detail.push(format!("countermodel {c}"));
                        }
                        Status::Negative
                    }
                    Verdict::Unknown(reason) => {
                        detail.push(match reason {
                            UnknownReason::Timeout => "timeout".to_string(),
                            UnknownReason::ClauseLimit => "clause limit".to_string(),
                            UnknownReason::ExternalError(e) => format!("external error: {e}"),
                        });
                        Status::Unknown
                    }
                };
                r.item(&o.tag, status, v.word(), detail);
            }
        }
        Cmd::Scheme {
            theta,
            var,
            params,
            notion,
        } => {
            let theta = formula_arg(theta)?;
            let notion: Notion = notion.parse().map_err(bad)?;
            let ax = induction_axiom(&theta, var, params, &notion).map_err(bad)?;
            r.output.push(ax.to_string());
        }
        Cmd::Transform { kind } => transform(kind, &mut r)?,
        Cmd::Refute { formula, search } => {
            let f = formula_arg(formula)?;
            let wc = witness_config(search, &cfg)?;
            let out = refute_claim_with(&f, &wc, exec).map_err(bad)?;
            match out.refutation {
                Some(refn) => {
                    let mut detail: Vec<String> = refn
                        .assignment
                        .iter()
                        .map(|(v, p)| format!("{v} = {p}"))
                        .collect();
                    detail.extend(refn.trace);
                    r.item("counterexample", Status::Negative, "found", detail);
                }
                None => r.item(
                    "counterexample",
                    Status::Unknown,
                    "none",
                    vec![format!(
                        "examined {} assignments, {} unknown",
                        out.examined, out.unknown
                    )],
                ),
            }
        }
        Cmd::Eval {
            formula,
            at,
            model,
            bound,
            search,
        } => {
            let f = formula_arg(formula)?;
            let pairs = assignments(at)?;
            match model.as_str() {
                "zx" => {
                    let mut env = PolyEnv::new();
                    for (v, text) in pairs {
                        env.insert(v, PolyPlus::parse(&text).map_err(bad)?);
                    }
                    let wc = witness_config(search, &cfg)?;
                    let (val, trace) = zx_eval_traced(&f, &env, &wc).map_err(bad)?;
                    let (status, word) = match &val {
                        ThreeVal::True => (Status::Ok, "true"),
                        ThreeVal::False => (Status::Negative, "false"),
                        ThreeVal::Unknown(_) => (Status::Unknown, "unknown"),
                    };
                    let mut detail = trace;
                    if let ThreeVal::Unknown(why) = val {
                        detail.push(why);
                    }
                    r.item("zx", status, word, detail);
                }
                "nat" => {
                    let mut env = NatEnv::new();
                    for (v, text) in pairs {
                        let n: u64 = text.parse().map_err(|_| bad(format!("{text:?} is not a natural number")))?;
                        env.insert(v, n);
                    }
                    let b = nat_bounded_eval(&f, &env, *bound).map_err(bad)?;
                    let (status, word) = if b { (Status::Ok, "true") } else { (Status::Negative, "false") };
                    r.item(format!("nat<={bound}"), status, word, Vec::new());
                }
                other => return Err(bad(format!("unknown model {other:?}; expected zx or nat"))),
            }
        }
        Cmd::Walther { left, right } => {
            let l: WaltherScheme = read_arg(left)?.parse().map_err(bad)?;
            let rt: WaltherScheme = read_arg(right)?.parse().map_err(bad)?;
            r.output.push(format!("left: {l}"));
            r.output.push(format!("right: {rt}"));
            for (name, w) in [("left", &l), ("right", &rt)] {
                let missed = walther_unreachable(w, "x", WALTHER_REACH).map_err(bad)?;
                let word = if missed.is_empty() { "yes" } else { "no" };
                let detail = missed.iter().take(8).map(|m| format!("misses {m}")).collect();
                let status = if missed.is_empty() { Status::Ok } else { Status::Negative };
                r.item(format!("{name} reaches 0..={WALTHER_REACH}"), status, word, detail);
            }
            let lr = walther_subsumes(&l, &rt);
            let rl = walther_subsumes(&rt, &l);
            let yn = |b: bool| if b { "yes" } else { "no" };
            r.output.push(format!("left subset of right: {}", yn(lr)));
            r.output.push(format!("right subset of left: {}", yn(rl)));
            if lr || rl {
                r.item("comparison", Status::Ok, "comparable", Vec::new());
            } else {
                r.item("comparison", Status::Negative, "incomparable", Vec::new());
                r.notes.push(WALTHER_CAVEAT.to_string());
            }
        }
        Cmd::Gallery { phi, delta, m, n } => {
            let inp = GalleryInputs::new(formula_arg(phi)?)
                .delta(formula_arg(delta)?)
                .m(*m)
                .n(*n);
            for c in Construction::ALL {
                let f = gallery(c, &inp).map_err(bad)?;
                r.output.push(format!("{c}: {f}"));
            }
        }
    }
    Ok(r.finish())
}

fn transform(kind: &TransformCmd, r: &mut RunReport) -> Result<(), UsageError> {
    let f = match kind {
        TransformCmd::Normalize { theta, var, params } => {
            axiom_to_inductive(&formula_arg(theta)?, var, params).map_err(bad)?
        }
        TransformCmd::Merge { thetas, var } => {
            let inputs = thetas
                .iter()
                .map(|t| {
                    let theta = formula_arg(t)?;
                    let params = theta.free_vars().into_iter().filter(|v| v != var).collect();
                    Ok(InductionInput {
                        theta,
                        x: var.clone(),
                        params,
                    })
                })
                .collect::<Result<Vec<_>, UsageError>>()?;
            merge(&inputs).map_err(bad)?
        }
        TransformCmd::Equiv { sigma, psi } => {
            equivalence_shape(&formula_arg(sigma)?, &formula_arg(psi)?).map_err(bad)?
        }
        TransformCmd::Substitute {
            template,
            phi,
            var,
            params,
        } => {
            let s = SchemeTemplate::parse(&read_arg(template)?, params.len()).map_err(bad)?;
            scheme_substitute(&s, &formula_arg(phi)?, var, params).map_err(bad)?
        }
        TransformCmd::Gallery {
            name,
            phi,
            delta,
            m,
            n,
        } => {
            let c: Construction = name.parse().map_err(bad)?;
            let mut inp = GalleryInputs::new(formula_arg(phi)?);
            if let Some(d) = delta {
                inp = inp.delta(formula_arg(d)?);
            }
            inp.m = *m;
            inp.n = *n;
            gallery(c, &inp).map_err(bad)?
        }
        TransformCmd::Kaye { formula } => {
            let f = formula_arg(formula)?;
            if !is_ring_language(&f) {
                return Err(bad("kaye needs a formula without `<`"));
            }
            let conjuncts = to_dnf(&f).map_err(bad)?;
            for (i, c) in conjuncts.iter().enumerate() {
                let k = kaye_reduce(c).map_err(bad)?;
                r.output.push(format!("conjunct {}: {}", i + 1, c.to_formula()));
                r.output.push(format!("reduced {}: {k}", i + 1));
            }
            return Ok(());
        }
    };
    r.output.push(f.to_string());
    Ok(())
}

/// `x=X+1,y=2` (or `;`-separated) into pairs.
fn assignments(text: &str) -> Result<Vec<(String, String)>, UsageError> {
    text.split([',', ';'])
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| {
            let (v, val) = p
                .split_once('=')
                .ok_or_else(|| bad(format!("expected var=value, found {p:?}")))?;
            Ok((v.trim().to_string(), val.trim().to_string()))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn go(args: &[&str]) -> Output {
        let mut v = vec!["indshape".to_string()];
        v.extend(args.iter().map(|s| s.to_string()));
        run(&v)
    }

    #[test]
    fn usage_errors_exit_3() {
        assert_eq!(go(&[]).code, EXIT_USAGE);
        assert_eq!(go(&["check", "--formula", "x = ", "--notion", "succ"]).code, EXIT_USAGE);
        assert_eq!(go(&["check", "--formula", "x = x", "--notion", "nope"]).code, EXIT_USAGE);
        assert_eq!(go(&["--help"]).code, EXIT_OK);
    }

    #[test]
    fn config_lines() {
        let c = Config::parse("# comment\nmax_degree = 2\n\nbackend=builtin\n").unwrap();
        assert_eq!(c.get::<usize>("max_degree").unwrap(), Some(2));
        assert!(Config::parse("colour=blue").is_err());
        assert!(Config::parse("max_degree").is_err());
    }

    #[test]
    fn assignment_lists() {
        assert_eq!(
            assignments("x=X+1; y = 2").unwrap(),
            vec![("x".into(), "X+1".into()), ("y".into(), "2".into())]
        );
        assert!(assignments("x").is_err());
    }
}
