//! Stored expected outputs for the scheme and transform shapes.

use std::path::PathBuf;

use indshape::fol::{parse_formula, Formula};
use indshape::schemes::{induction_axiom, Notion};
use indshape::transforms::{
    axiom_to_inductive, equivalence_shape, gallery, merge, scheme_substitute, Construction,
    GalleryInputs, InductionInput, SchemeTemplate,
};

pub const THETAS: [(&str, &str, &[&str]); 3] = [
    ("xplus0", "x + 0 = x", &[]),
    ("refl", "x = x", &[]),
    ("lessz", "x < z", &["z"]),
];

pub const NOTIONS: [(&str, &str); 8] = [
    ("succ", "succ"),
    ("less", "less"),
    ("step2", "step:2"),
    ("kind2", "kind:2"),
    ("pind2", "pind:2"),
    ("pind3", "pind:3"),
    ("gen_0_x1", "gen:B=0;S=x+1"),
    ("gen_01_x2", "gen:B=0,1;S=x+2"),
];

pub fn dir(sub: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(sub)
}

fn f(s: &str) -> Formula {
    parse_formula(s).unwrap()
}

/// Byte-exact comparison of every induction axiom with its file. With
/// `bless`, missing files are written instead of reported. Returns the
/// number of files checked and the mismatches.
pub fn scheme_mismatches(bless: bool) -> (usize, Vec<String>) {
    let mut checked = 0;
    let mut bad = Vec::new();
    for (tname, theta, params) in THETAS {
        let theta = f(theta);
        let params: Vec<String> = params.iter().map(|s| s.to_string()).collect();
        for (nname, notion) in NOTIONS {
            let n: Notion = notion.parse().unwrap();
            let got = format!("{}\n", induction_axiom(&theta, "x", &params, &n).unwrap());
            let path = dir("schemes").join(format!("{tname}_{nname}.txt"));
            checked += 1;
            match std::fs::read_to_string(&path) {
                Ok(want) if want == got => {}
                Err(_) if bless => std::fs::write(&path, &got).unwrap(),
                Ok(want) => bad.push(format!("{}:\n want {want} got  {got}", path.display())),
                Err(e) => bad.push(format!("{}: {e}", path.display())),
            }
        }
    }
    (checked, bad)
}

/// Transform outputs keyed by golden file name.
pub fn transform_outputs() -> Vec<(&'static str, Formula)> {
    let none: &[String] = &[];
    let z = ["z".to_string()];
    let inp = |s: &str| InductionInput { theta: f(s), x: "x".into(), params: vec![] };
    let g = GalleryInputs::new(f("x + 0 = x")).delta(f("0 < x")).m(1).n(1);
    let run = |c: Construction, g: &GalleryInputs| gallery(c, g).unwrap();
    vec![
        ("normalize_refl", axiom_to_inductive(&f("x = x"), "x", none).unwrap()),
        ("normalize_xplus0", axiom_to_inductive(&f("x + 0 = x"), "x", none).unwrap()),
        ("normalize_lessz", axiom_to_inductive(&f("x < z"), "x", &z).unwrap()),
        ("merge_xplus0_xtimes1", merge(&[inp("x + 0 = x"), inp("x * 1 = x")]).unwrap()),
        ("equiv_00_refl", equivalence_shape(&f("0 = 0"), &f("x = x")).unwrap()),
        (
            "substitute_succ_refl",
            scheme_substitute(&SchemeTemplate::successor(), &f("x = x"), "x", none).unwrap(),
        ),
        (
            "substitute_x0_lt1",
            scheme_substitute(&SchemeTemplate::parse("X(0)", 0).unwrap(), &f("x < 1"), "x", none)
                .unwrap(),
        ),
        ("gallery_not_cut", run(Construction::NotCut, &g)),
        ("gallery_not_acut", run(Construction::NotACut, &g)),
        ("gallery_chi_m1", run(Construction::Chi, &g)),
        ("gallery_chi_m2", run(Construction::Chi, &g.clone().m(2))),
        ("gallery_rho_n1", run(Construction::Rho, &g)),
        ("gallery_rho_n2", run(Construction::Rho, &g.clone().n(2))),
        ("gallery_rho0", run(Construction::Rho0, &g)),
        ("gallery_square", run(Construction::Square, &g)),
    ]
}

/// Each output must be α-equal to the parsed file contents.
pub fn transform_mismatches() -> (usize, Vec<String>) {
    let outs = transform_outputs();
    let mut bad = Vec::new();
    for (name, got) in &outs {
        let path = dir("transforms").join(format!("{name}.txt"));
        match std::fs::read_to_string(&path) {
            Ok(text) => match parse_formula(text.trim()) {
                Ok(want) if want.alpha_eq(got) => {}
                Ok(_) => bad.push(format!("{name}: want {} got {got}", text.trim())),
                Err(e) => bad.push(format!("{name}: {e}")),
            },
            Err(e) => bad.push(format!("{}: {e}", path.display())),
        }
    }
    (outs.len(), bad)
}

/// Output of the built binary, run in `cwd` with no prover command in the
/// environment.
pub fn run_cli(args: &[&str], cwd: &std::path::Path) -> (String, String, i32) {
    let out = std::process::Command::new(env!("CARGO_BIN_EXE_indshape"))
        .args(args)
        .current_dir(cwd)
        .env_remove(indshape::prover::external::PROVER_CMD_ENV)
        .output()
        .expect("binary runs");
    (
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
        out.status.code().unwrap_or(-1),
    )
}

/// CLI invocations whose standard output is stored under `golden/cli`, with
/// the exit code each must give.
pub const CLI_CASES: [(&str, &[&str], i32); 6] = [
    ("walther", &["walther", "--left", "B=0,1;S=x+1", "--right", "B=0,1;S=x+2"], 1),
    ("refute_div2", &["refute", "--formula", "!x. ?y. (x = 2*y | x = 2*y + 1)"], 1),
    ("refute_div3", &["refute", "--formula", "!x. ?y. (x = 3*y | x = 3*y + 1 | x = 3*y + 2)"], 1),
    ("gallery", &["gallery", "--phi", "x + 0 = x", "--delta", "0 < x", "--m", "1", "--n", "2"], 0),
    ("transform_equiv", &["transform", "equiv", "--sigma", "0 = 0", "--psi", "x = x"], 0),
    ("scheme_pind", &["scheme", "--theta", "x < z", "--params", "z", "--notion", "pind:2"], 0),
];

/// Byte-exact comparison of each case's stdout and exit code. With `bless`,
/// missing files are written.
pub fn cli_mismatches(only: Option<&str>, bless: bool) -> (usize, Vec<String>) {
    let cwd = tempfile::tempdir().unwrap();
    let mut bad = Vec::new();
    let mut checked = 0;
    for (name, args, code) in CLI_CASES {
        if only.is_some_and(|o| o != name) {
            continue;
        }
        checked += 1;
        let (stdout, stderr, got) = run_cli(args, cwd.path());
        if got != code {
            bad.push(format!("{name}: exit {got}, want {code}; stderr {stderr}"));
        }
        let path = dir("cli").join(format!("{name}.txt"));
        match std::fs::read_to_string(&path) {
            Ok(want) if want == stdout => {}
            Err(_) if bless => std::fs::write(&path, &stdout).unwrap(),
            Ok(want) => bad.push(format!("{name}:\n--- want\n{want}--- got\n{stdout}")),
            Err(e) => bad.push(format!("{}: {e}", path.display())),
        }
    }
    (checked, bad)
}
