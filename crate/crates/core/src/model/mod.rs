//! Exact evaluation in the nonstandard model ℤ\[X\]⁺ and in truncations of ℕ.

mod nat;
mod poly;
mod refute;
mod zx;

use thiserror::Error;

pub use nat::{nat_bounded_eval, nat_term_eval, walther_unreachable, NatEnv};
pub use poly::{enumerate_polys, PolyError, PolyPlus, ZPoly};
pub use refute::{graded_lex, refute_claim, refute_claim_with, strip_universals, RefuteOutcome, Refutation};
pub use zx::{poly_eval, zx_eval, zx_eval_traced, PolyEnv, ThreeVal, WitnessConfig};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("variable {0} has no value")]
    Unbound(String),
}
