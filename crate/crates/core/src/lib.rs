//! First-order stable model semantics toolkit.
//!
//! The crate parses function-free first-order sentences and logic programs
//! (including programs with explicit quantifiers), builds the second-order
//! stable-model operator `SM[F]`, computes first-order loop formulas and
//! external support formulas, analyzes safety and finite complete sets of
//! loops, reduces `SM[F]` to first-order logic where the syntactic
//! conditions allow it, verifies stability over finite interpretations by
//! brute force, and exports entailment problems in TPTP FOF syntax.

pub mod ground;
pub mod loops;
pub mod oracle;
pub mod parse;
pub mod print;
pub mod program;
pub mod safety;
pub mod second_order;
pub mod subst;
pub mod syntax;
pub mod tptp;
pub mod transform;

pub use parse::{parse_file, parse_formula, parse_program, ParseError, ProgramFile};
pub use program::{Program, Rule, RuleKind};
pub use subst::{SubstError, Substitution};
pub use syntax::{Atom, Formula, Signature, Symbol, Term};
