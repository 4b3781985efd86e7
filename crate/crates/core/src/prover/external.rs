//! Bridge to an external TPTP prover.
//!
//! The problem is written as a TPTP FOF file in a fresh temporary directory
//! and the command is run with the file path substituted for `{file}` (or
//! appended when the template has no placeholder). Standard output is scanned
//! for `SZS status <word>`.

use std::io::Read;
use std::process::{Command, Stdio};
use std::thread;
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::fol::{print_tptp, Formula};

/// Environment variable holding a default command template.
pub const PROVER_CMD_ENV: &str = "INDSHAPE_PROVER_CMD";

/// What the external tool said, after mapping SZS words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExternalResult {
    /// `Theorem` or `Unsatisfiable`.
    Proved { status: String },
    /// `CounterSatisfiable` or `Satisfiable`.
    Refuted { status: String },
    /// Any other status, or none.
    Unknown { status: Option<String> },
    Timeout,
}

#[derive(Debug, Error)]
pub enum ExternalError {
    #[error("empty prover command")]
    EmptyCommand,
    #[error("cannot run prover: {0}")]
    Io(#[from] std::io::Error),
}

/// The problem file: axioms, then the goal as a conjecture.
pub fn tptp_problem(axioms: &[(String, Formula)], goal: &Formula) -> String {
    let mut out = String::new();
    for (name, f) in axioms {
        out.push_str(&print_tptp(name, "axiom", &f.universal_closure()));
        out.push('\n');
    }
    out.push_str(&print_tptp("goal", "conjecture", &goal.universal_closure()));
    out.push('\n');
    out
}

/// The first `SZS status` word on standard output.
pub fn szs_status(stdout: &str) -> Option<&str> {
    stdout.lines().find_map(|line| {
        let rest = &line[line.find("SZS status")? + "SZS status".len()..];
        rest.split_whitespace().next()
    })
}

pub fn classify_status(status: Option<&str>) -> ExternalResult {
    match status {
        Some(s @ ("Theorem" | "Unsatisfiable")) => ExternalResult::Proved { status: s.into() },
        Some(s @ ("CounterSatisfiable" | "Satisfiable")) => {
            ExternalResult::Refuted { status: s.into() }
        }
        other => ExternalResult::Unknown {
            status: other.map(str::to_string),
        },
    }
}

/// Splits a template on whitespace and puts `file` in for `{file}`.
pub fn command_line(template: &str, file: &str) -> Result<Vec<String>, ExternalError> {
    let mut words: Vec<String> = template.split_whitespace().map(str::to_string).collect();
    if words.is_empty() {
        return Err(ExternalError::EmptyCommand);
    }
    if words.iter().any(|w| w.contains("{file}")) {
        for w in &mut words {
            *w = w.replace("{file}", file);
        }
    } else {
        words.push(file.to_string());
    }
    Ok(words)
}

/// Runs the prover on `axioms ⊢ goal`, killing it after `timeout`.
pub fn run_external(
    template: &str,
    timeout: Duration,
    axioms: &[(String, Formula)],
    goal: &Formula,
) -> Result<ExternalResult, ExternalError> {
    let dir = tempfile::tempdir()?;
    let path = dir.path().join("problem.p");
    std::fs::write(&path, tptp_problem(axioms, goal))?;
    let words = command_line(template, &path.to_string_lossy())?;
    let mut child = Command::new(&words[0])
        .args(&words[1..])
        .stdin(Stdio::null())
        .stdout(Stdio::piped())
        .stderr(Stdio::null())
        .spawn()?;
    // drain stdout on a thread so a chatty prover cannot block on a full pipe
    let mut stdout = child.stdout.take().expect("piped stdout");
    let reader = thread::spawn(move || {
        let mut s = String::new();
        let _ = stdout.read_to_string(&mut s);
        s
    });
    let start = Instant::now();
    loop {
        if child.try_wait()?.is_some() {
            break;
        }
        if start.elapsed() >= timeout {
            let _ = child.kill();
            let _ = child.wait();
            return Ok(ExternalResult::Timeout);
        }
        thread::sleep(Duration::from_millis(5));
    }
    let out = reader.join().unwrap_or_default();
    Ok(classify_status(szs_status(&out)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fol::parse_formula;

    #[test]
    fn status_words() {
        let out = "% blah\n% SZS status Theorem for problem\n";
        assert_eq!(szs_status(out), Some("Theorem"));
        assert!(matches!(classify_status(Some("Unsatisfiable")), ExternalResult::Proved { .. }));
        assert!(matches!(classify_status(Some("CounterSatisfiable")), ExternalResult::Refuted { .. }));
        assert_eq!(
            classify_status(Some("GaveUp")),
            ExternalResult::Unknown { status: Some("GaveUp".into()) }
        );
        assert_eq!(szs_status("nothing here"), None);
    }

    #[test]
    fn placeholder_or_appended() {
        assert_eq!(command_line("eprover --auto {file}", "/t/p").unwrap(), ["eprover", "--auto", "/t/p"]);
        assert_eq!(command_line("vampire -t 5", "/t/p").unwrap(), ["vampire", "-t", "5", "/t/p"]);
        assert!(command_line("  ", "/t/p").is_err());
    }

    #[test]
    fn problem_file_shape() {
        let ax = vec![("p6".to_string(), parse_formula("x + 0 = x").unwrap())];
        let p = tptp_problem(&ax, &parse_formula("0 + 0 = 0").unwrap());
        assert_eq!(
            p,
            "fof(p6, axiom, ![X]: plus(X, zero) = X).\n\
             fof(goal, conjecture, plus(zero, zero) = zero).\n"
        );
    }

    #[cfg(unix)]
    fn script(dir: &std::path::Path, name: &str, body: &str) -> String {
        use std::os::unix::fs::PermissionsExt;
        let p = dir.join(name);
        std::fs::write(&p, format!("#!/bin/sh\n{body}\n")).unwrap();
        std::fs::set_permissions(&p, std::fs::Permissions::from_mode(0o755)).unwrap();
        p.to_string_lossy().into_owned()
    }

    #[cfg(unix)]
    #[test]
    fn fake_prover_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let goal = parse_formula("0 = 0").unwrap();
        let t = Duration::from_secs(5);
        // the fake prover answers Theorem only if it was handed a conjecture
        let grep = script(dir.path(), "grep.sh", "grep -q conjecture \"$1\" && echo '% SZS status Theorem for p'");
        let r = run_external(&grep, t, &[], &goal).unwrap();
        assert!(matches!(r, ExternalResult::Proved { .. }), "{r:?}");
        let sat = script(dir.path(), "sat.sh", "echo 'SZS status CounterSatisfiable'");
        let r = run_external(&format!("{sat} {{file}}"), t, &[], &goal).unwrap();
        assert!(matches!(r, ExternalResult::Refuted { .. }));
        let mute = script(dir.path(), "mute.sh", "exit 3");
        let r = run_external(&mute, t, &[], &goal).unwrap();
        assert_eq!(r, ExternalResult::Unknown { status: None });
        let slow = script(dir.path(), "slow.sh", "sleep 10");
        let r = run_external(&slow, Duration::from_millis(100), &[], &goal).unwrap();
        assert_eq!(r, ExternalResult::Timeout);
        assert!(run_external("/no/such/prover", t, &[], &goal).is_err());
    }
}
