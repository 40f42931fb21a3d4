//! Stack machines over annotated alphabets.
//!
//! A pushdown or two-stack computation is described by an annotation string
//! that interleaves input symbols with explicit push and pop tokens. A word is
//! accepted when some annotation projects onto it, drives the finite control
//! into an accepting state, and has a valid stack projection (every pop
//! matches the top and the stacks end empty).
//!
//! The crate provides the machine types ([`TwoStackMachine`], [`PdaI`],
//! [`PdaII`], [`DpdaII`], [`QuantumMachine`]), validity checking, exact PDA-II
//! membership, bounded two-stack search, the PDA-I/PDA-II conversions, subset
//! construction over the extended alphabet, quantum evolution, and a text
//! format with DOT export.

pub mod alphabet;
pub mod bound;
mod compiled;
pub mod convert;
pub mod determinize;
pub mod dot;
pub mod error;
pub mod fixtures;
pub mod format;
pub mod machine;
pub mod project;
pub mod quantum;
pub mod recognition;
pub mod symbol;
pub mod validity;

pub use alphabet::{AlphabetKind, AlphabetProblem, Alphabets};
pub use bound::Bound;
pub use convert::{accepts_pda1, pda1_to_pda2, pda2_to_pda1, AuxStateName};
pub use determinize::{corollary1_language, eps_closure, subset_construct, SubsetState};
pub use error::{Error, Result};
pub use format::{parse_machine, serialize, AnyMachine, MachineKind, ParseError};
pub use machine::{
    embed_dfa_as_two_stack, validate_machine, Dfa, DpdaII, PdaI, PdaII, PdaIKey, PdaIMove, Site,
    TwoStackMachine, Validate, Violation,
};
pub use project::{project, project_input, project_stack};
pub use quantum::{accept_prob_bounded, check_unitary, evolve, Flavor, QuantumMachine};
pub use recognition::{
    accepts_dpda2, accepts_pda2, accepts_two_stack_bounded, brute_force_accepts,
    run_annotation_two_stack, BalancedReachabilityTable, RunOutcome, SearchLimits, Verdict,
};
pub use symbol::{AnnotationString, Direction, PairOp, StackIndex, StackOp, Token};
pub use validity::{
    check_valid_single, check_valid_two, enumerate_valid, valid_string_grammar, Outcome, StackTrace,
};
