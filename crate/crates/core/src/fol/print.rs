//! Text and TPTP printers.

use super::formula::Formula;
use super::term::Term;

const PREC_IFF: u8 = 1;
const PREC_IMP: u8 = 2;
const PREC_OR: u8 = 3;
const PREC_AND: u8 = 4;
const PREC_UNARY: u8 = 5;

/// Prints a term in the text syntax. Numerals of two or more are compacted
/// to decimals; `0 + 1` stays as written so that it reparses to itself.
pub fn term_text(t: &Term) -> String {
    let mut out = String::new();
    write_term(t, 0, &mut out);
    out
}

// prec: 0 = top, 1 = operand of +, 2 = right operand of + or operand of *,
// 3 = right operand of *.
fn write_term(t: &Term, ctx: u8, out: &mut String) {
    if let Some(n) = t.as_numeral() {
        if n >= 2 {
            out.push_str(&n.to_string());
            return;
        }
    }
    match t {
        Term::Var(v) => out.push_str(v),
        Term::Zero => out.push('0'),
        Term::One => out.push('1'),
        Term::Add(l, r) => {
            let paren = ctx > 1;
            if paren {
                out.push('(');
            }
            write_term(l, 1, out);
            out.push_str(" + ");
            write_term(r, 2, out);
            if paren {
                out.push(')');
            }
        }
        Term::Mul(l, r) => {
            let paren = ctx > 2;
            if paren {
                out.push('(');
            }
            write_term(l, 2, out);
            out.push('*');
            write_term(r, 3, out);
            if paren {
                out.push(')');
            }
        }
    }
}

fn prec(f: &Formula) -> u8 {
    match f {
        Formula::Iff(..) => PREC_IFF,
        Formula::Implies(..) => PREC_IMP,
        Formula::Or(..) => PREC_OR,
        Formula::And(..) => PREC_AND,
        Formula::Not(..) | Formula::Eq(..) | Formula::Lt(..) => PREC_UNARY,
        Formula::ForAll(..) | Formula::Exists(..) => 0,
    }
}

/// Prints a formula in the text syntax accepted by
/// [`parse_formula`](super::parse_formula), with minimal parentheses.
pub fn print_text(f: &Formula) -> String {
    let mut out = String::new();
    write_formula(f, 0, true, &mut out);
    out
}

/// [`print_text`] of the α-normal form: bound variables become `v0, v1, …`.
pub fn print_canonical(f: &Formula) -> String {
    print_text(&f.alpha_normalize())
}

// `rightmost` is true when nothing follows this subformula before the
// enclosing parenthesis, so a quantifier's maximal scope is unambiguous.
fn write_formula(f: &Formula, ctx: u8, rightmost: bool, out: &mut String) {
    let needs_paren = if f.is_quantifier() {
        !rightmost
    } else {
        prec(f) < ctx || (!rightmost && ends_with_quantifier(f))
    };
    if needs_paren {
        out.push('(');
        write_formula(f, 0, true, out);
        out.push(')');
        return;
    }
    match f {
        Formula::Eq(l, r) => {
            write_term(l, 0, out);
            out.push_str(" = ");
            write_term(r, 0, out);
        }
        Formula::Lt(l, r) => {
            write_term(l, 0, out);
            out.push_str(" < ");
            write_term(r, 0, out);
        }
        Formula::Not(g) => {
            out.push_str("~(");
            write_formula(g, 0, true, out);
            out.push(')');
        }
        Formula::Iff(l, r) => write_bin(l, r, " <-> ", PREC_IFF, PREC_IMP, rightmost, out),
        Formula::Implies(l, r) => write_bin(l, r, " -> ", PREC_OR, PREC_IMP, rightmost, out),
        Formula::Or(l, r) => write_bin(l, r, " | ", PREC_OR, PREC_AND, rightmost, out),
        Formula::And(l, r) => write_bin(l, r, " & ", PREC_AND, PREC_UNARY, rightmost, out),
        Formula::ForAll(v, body) | Formula::Exists(v, body) => {
            out.push(if matches!(f, Formula::ForAll(..)) { '!' } else { '?' });
            out.push_str(v);
            out.push_str(". ");
            let binary = matches!(
                **body,
                Formula::And(..) | Formula::Or(..) | Formula::Implies(..) | Formula::Iff(..)
            );
            if binary {
                out.push('(');
                write_formula(body, 0, true, out);
                out.push(')');
            } else {
                write_formula(body, 0, true, out);
            }
        }
    }
}

fn ends_with_quantifier(f: &Formula) -> bool {
    match f {
        Formula::ForAll(..) | Formula::Exists(..) => true,
        Formula::And(_, r) | Formula::Or(_, r) | Formula::Implies(_, r) | Formula::Iff(_, r) => {
            ends_with_quantifier(r)
        }
        _ => false,
    }
}

fn write_bin(
    l: &Formula,
    r: &Formula,
    op: &str,
    lctx: u8,
    rctx: u8,
    rightmost: bool,
    out: &mut String,
) {
    write_formula(l, lctx, false, out);
    out.push_str(op);
    write_formula(r, rctx, rightmost, out);
}

/// TPTP spelling of a variable name.
pub fn tptp_var(name: &str) -> String {
    name.to_ascii_uppercase()
}

/// Prints a term with the fixed TPTP symbol map: `0 → zero`, `1 → one`,
/// `+ → plus/2`, `× → times/2`, variables uppercased. Numerals are never
/// compacted.
pub fn tptp_term(t: &Term) -> String {
    match t {
        Term::Var(v) => tptp_var(v),
        Term::Zero => "zero".to_string(),
        Term::One => "one".to_string(),
        Term::Add(l, r) => format!("plus({}, {})", tptp_term(l), tptp_term(r)),
        Term::Mul(l, r) => format!("times({}, {})", tptp_term(l), tptp_term(r)),
    }
}

/// The formula part of a TPTP `fof` annotated formula.
pub fn tptp_formula(f: &Formula) -> String {
    match f {
        Formula::Eq(l, r) => format!("{} = {}", tptp_term(l), tptp_term(r)),
        Formula::Lt(l, r) => format!("less({}, {})", tptp_term(l), tptp_term(r)),
        Formula::Not(g) => format!("~({})", tptp_formula(g)),
        Formula::And(l, r) => format!("({} & {})", tptp_formula(l), tptp_formula(r)),
        Formula::Or(l, r) => format!("({} | {})", tptp_formula(l), tptp_formula(r)),
        Formula::Implies(l, r) => format!("({} => {})", tptp_formula(l), tptp_formula(r)),
        Formula::Iff(l, r) => format!("({} <=> {})", tptp_formula(l), tptp_formula(r)),
        Formula::ForAll(v, g) => format!("![{}]: {}", tptp_var(v), tptp_formula(g)),
        Formula::Exists(v, g) => format!("?[{}]: {}", tptp_var(v), tptp_formula(g)),
    }
}

/// One TPTP annotated formula: `fof(name, role, formula).`
pub fn print_tptp(name: &str, role: &str, f: &Formula) -> String {
    format!("fof({name}, {role}, {}).", tptp_formula(f))
}
