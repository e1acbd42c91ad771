//! Finite argument universes.
//!
//! The set of all arguments over a premise base is infinite, so universes
//! are restricted to a finite conclusion pool. For every assumption
//! subset, support subset and pool formula with a derivation, the
//! universe holds one argument. With the minimal-support option every
//! kept argument also has no junk premises: each premise belongs to at
//! least one subset-minimal deriving subset of the argument's premises.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::argument::AssumptiveArgument;
use crate::formula::{atoms_of, conjoin, Formula};
use crate::limits;
use crate::logic;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum UniverseError {
    #[error("strict premises are inconsistent but assumptions are present")]
    InconsistentStrictSet,
    #[error("strict premises and assumptions overlap: {0}")]
    OverlappingZones(String),
    #[error("{count} premises exceed the cap of {cap}")]
    PremiseCapExceeded { count: usize, cap: usize },
    #[error("{count} distinct atoms exceed the cap of {cap}")]
    AtomCapExceeded { count: usize, cap: usize },
}

#[derive(Debug, Clone)]
pub struct UniverseOptions {
    /// Keep only arguments without junk premises (see module docs).
    pub minimal_support: bool,
    pub max_premises: usize,
    pub max_atoms: usize,
}

impl Default for UniverseOptions {
    fn default() -> Self {
        UniverseOptions {
            minimal_support: false,
            max_premises: limits::DEFAULT_MAX_PREMISES,
            max_atoms: limits::DEFAULT_MAX_ATOMS,
        }
    }
}

/// An immutable, canonically ordered argument universe together with the
/// premise sets and conclusion pool that generated it.
#[derive(Debug, Clone)]
pub struct ArgumentUniverse {
    arguments: Vec<AssumptiveArgument>,
    strict: BTreeSet<Formula>,
    assumptions: BTreeSet<Formula>,
    pool: BTreeSet<Formula>,
}

impl ArgumentUniverse {
    pub fn arguments(&self) -> &[AssumptiveArgument] {
        &self.arguments
    }

    pub fn len(&self) -> usize {
        self.arguments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arguments.is_empty()
    }

    pub fn strict(&self) -> &BTreeSet<Formula> {
        &self.strict
    }

    pub fn assumption_set(&self) -> &BTreeSet<Formula> {
        &self.assumptions
    }

    pub fn pool(&self) -> &BTreeSet<Formula> {
        &self.pool
    }

    pub fn index_of(&self, argument: &AssumptiveArgument) -> Option<usize> {
        self.arguments.binary_search(argument).ok()
    }

    /// Find the argument with the given parts, if present.
    pub fn find(
        &self,
        assumptions: &BTreeSet<Formula>,
        support: &BTreeSet<Formula>,
        conclusion: &Formula,
    ) -> Option<usize> {
        self.arguments.iter().position(|a| {
            a.assumptions() == assumptions
                && a.support() == support
                && a.conclusion() == conclusion
        })
    }
}

/// Build the universe over the classical core logic.
pub fn build_universe(
    strict: &BTreeSet<Formula>,
    assumptions: &BTreeSet<Formula>,
    pool: &BTreeSet<Formula>,
    options: &UniverseOptions,
) -> Result<ArgumentUniverse, UniverseError> {
    if !assumptions.is_empty() && !logic::is_consistent(strict) {
        return Err(UniverseError::InconsistentStrictSet);
    }
    let derives =
        |premises: &[&Formula], goal: &Formula| logic::entails(premises.iter().copied(), goal);
    build_universe_with(&derives, strict, assumptions, pool, options)
}

/// Build the universe under an arbitrary (monotone) derivability
/// relation. Used for rule-system frameworks; the classical consistency
/// precondition is the caller's responsibility here.
pub fn build_universe_with(
    derives: &dyn Fn(&[&Formula], &Formula) -> bool,
    strict: &BTreeSet<Formula>,
    assumptions: &BTreeSet<Formula>,
    pool: &BTreeSet<Formula>,
    options: &UniverseOptions,
) -> Result<ArgumentUniverse, UniverseError> {
    if let Some(shared) = strict.intersection(assumptions).next() {
        return Err(UniverseError::OverlappingZones(shared.to_string()));
    }
    let premise_count = strict.len() + assumptions.len();
    if premise_count > options.max_premises {
        return Err(UniverseError::PremiseCapExceeded {
            count: premise_count,
            cap: options.max_premises,
        });
    }
    let atom_count = atoms_of(strict.iter().chain(assumptions.iter()).chain(pool.iter())).len();
    if atom_count > options.max_atoms {
        return Err(UniverseError::AtomCapExceeded {
            count: atom_count,
            cap: options.max_atoms,
        });
    }

    // Fixed element order: assumptions first, then strict premises.
    let assumption_elems: Vec<&Formula> = assumptions.iter().collect();
    let strict_elems: Vec<&Formula> = strict.iter().collect();
    let elems: Vec<&Formula> = assumption_elems
        .iter()
        .chain(strict_elems.iter())
        .copied()
        .collect();
    let n = elems.len();

    let mut arguments = Vec::new();
    let mut scratch: Vec<&Formula> = Vec::with_capacity(n);
    for goal in pool {
        let mut deriving_masks: Vec<u32> = Vec::new();
        for mask in 0..(1u32 << n) {
            scratch.clear();
            scratch.extend(
                elems
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, f)| *f),
            );
            if derives(&scratch, goal) {
                deriving_masks.push(mask);
            }
        }
        let kept: Vec<u32> = if options.minimal_support {
            relevant_masks(&deriving_masks)
        } else {
            deriving_masks
        };
        for mask in kept {
            let arg_assumptions: BTreeSet<Formula> = assumption_elems
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, f)| (*f).clone())
                .collect();
            let arg_support: BTreeSet<Formula> = strict_elems
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> (i + assumption_elems.len()) & 1 == 1)
                .map(|(_, f)| (*f).clone())
                .collect();
            arguments.push(AssumptiveArgument::new_unchecked(
                arg_assumptions,
                arg_support,
                goal.clone(),
            ));
        }
    }

    arguments.sort();
    arguments.dedup();
    Ok(ArgumentUniverse {
        arguments,
        strict: strict.clone(),
        assumptions: assumptions.clone(),
        pool: pool.clone(),
    })
}

/// Among the deriving premise masks, keep those in which every premise
/// participates in some subset-minimal deriving subset. A mask is kept
/// exactly when it equals the union of the minimal deriving masks below
/// it.
fn relevant_masks(deriving: &[u32]) -> Vec<u32> {
    let mut minimal: Vec<u32> = Vec::new();
    let mut by_popcount: Vec<u32> = deriving.to_vec();
    by_popcount.sort_by_key(|m| (m.count_ones(), *m));
    for &mask in &by_popcount {
        #[allow(clippy::manual_contains)]
        if !minimal.iter().any(|&m| m & mask == m) {
            minimal.push(mask);
        }
    }
    deriving
        .iter()
        .copied()
        .filter(|&mask| {
            let union: u32 = minimal
                .iter()
                .filter(|&&m| m & mask == m)
                .fold(0, |acc, &m| acc | m);
            union == mask
        })
        .collect()
}

/// Negated conjunctions of every nonempty subset, the conclusions an
/// undercut attacker needs.
pub fn negated_conjunction_pool(base: &BTreeSet<Formula>) -> BTreeSet<Formula> {
    let elems: Vec<&Formula> = base.iter().collect();
    let mut out = BTreeSet::new();
    for mask in 1u32..(1 << elems.len()) {
        let subset: BTreeSet<Formula> = elems
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, f)| (*f).clone())
            .collect();
        out.insert(Formula::neg(conjoin(&subset).expect("nonempty subset")));
    }
    out
}
