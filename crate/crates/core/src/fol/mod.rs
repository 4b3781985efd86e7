//! Terms and formulas over `{0, 1, +, ×, <}`: construction, parsing,
//! printing, substitution, classification, and DNF.

mod classify;
mod dnf;
mod formula;
mod parse;
mod print;
mod schematic;
mod term;

pub use classify::{bounded_body, classify, is_bounded, FormulaClass};
pub use dnf::{
    dnf_to_formula, literal_dnf, to_dnf, to_dnf_capped, DnfConjunct, DnfError, Literal, Relation,
    DEFAULT_LITERAL_CAP,
};
pub use formula::{fresh_var, Formula};
pub use parse::{parse_formula, parse_schematic, parse_term, ParseError, MAX_LITERAL};
pub use print::{print_canonical, print_text, print_tptp, term_text, tptp_formula, tptp_term, tptp_var};
pub use schematic::{Connective, Quantifier, Schematic};
pub use term::Term;

/// Whether `f` is in the ring language, i.e. does not mention `<`.
pub fn is_ring_language(f: &Formula) -> bool {
    !f.mentions_lt()
}
