//! Induction-axiom shapes over PA⁻.
//!
//! * [`fol`]: terms and formulas over `{0, 1, +, ×, <}`.
//! * [`schemes`]: the base theory PA⁻, induction axioms, and inductiveness
//!   obligations.
//! * [`transforms`]: syntactic constructions between proof shapes.
//! * [`model`]: exact evaluation in ℤ\[X\]⁺ and in bounded ℕ.
//! * [`prover`]: clausification, a saturation prover, and an external bridge.
//! * [`cli`]: the command-line front end.

pub mod cli;
pub mod fol;
pub mod model;
pub mod par;
pub mod prover;
pub mod schemes;
pub mod transforms;
