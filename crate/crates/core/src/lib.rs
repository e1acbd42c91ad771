//! A defeasible-reasoning engine over classical propositional logic.
//!
//! Arguments are sequents with an optional assumption zone
//! (`A |~ G => c`), built over a finite conclusion pool. Attack rules
//! (undercut, direct undercut, and contrary attacks on assumptions)
//! induce abstract frameworks, which are evaluated under grounded,
//! complete, preferred and stable semantics and queried through three
//! nonmonotonic entailment modes. The crate also ships a brute-force
//! maximally-consistent-subset reasoner and a native assumption-based
//! argumentation engine together with its translation into the sequent
//! setting, so the three routes can be checked against each other.

pub mod aba;
pub mod argument;
pub mod attack;
pub mod entailment;
pub mod formula;
pub mod logic;
pub mod mcs;
pub mod parser;
pub mod semantics;
pub mod universe;

/// Default resource caps. Every exhaustive procedure in the crate is
/// bounded by one of these; all entry points accept explicit overrides.
pub mod limits {
    /// Distinct atoms allowed in a truth-table computation.
    pub const DEFAULT_MAX_ATOMS: usize = 16;
    /// Strict premises plus assumptions in one universe.
    pub const DEFAULT_MAX_PREMISES: usize = 12;
    /// Arguments allowed in extension enumeration.
    pub const DEFAULT_MAX_ARGUMENTS: usize = 20;
}

pub use argument::AssumptiveArgument;
pub use attack::{Attack, AttackRule, Framework};
pub use entailment::EntailmentMode;
pub use formula::Formula;
pub use semantics::{Extension, Semantics};
pub use universe::{ArgumentUniverse, UniverseOptions};
