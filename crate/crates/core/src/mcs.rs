//! Reasoning with maximally consistent subsets: the brute-force oracle
//! for the three nonmonotonic entailment modes, plus minimal conflicts,
//! free formulas and closure membership.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::entailment::EntailmentMode;
use crate::formula::Formula;
use crate::logic;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum McsError {
    #[error("{count} premises exceed the cap of {cap}")]
    CapExceeded { count: usize, cap: usize },
    #[error("the strict set is inconsistent")]
    InconsistentStrictSet,
}

/// The maximally consistent subsets of a premise base. For the
/// assumptive variant, members are subsets of the assumptions that are
/// maximal among those consistent together with the strict set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct McsFamily {
    pub strict: BTreeSet<Formula>,
    pub assumptions: Option<BTreeSet<Formula>>,
    pub members: Vec<BTreeSet<Formula>>,
}

impl McsFamily {
    pub fn intersection(&self) -> BTreeSet<Formula> {
        let mut iter = self.members.iter();
        let first = match iter.next() {
            Some(m) => m.clone(),
            None => return BTreeSet::new(),
        };
        iter.fold(first, |acc, m| acc.intersection(m).cloned().collect())
    }
}

fn check_cap(count: usize, cap: usize) -> Result<(), McsError> {
    if count > cap {
        return Err(McsError::CapExceeded { count, cap });
    }
    Ok(())
}

fn subset_of_mask(elems: &[&Formula], mask: u32) -> BTreeSet<Formula> {
    elems
        .iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .map(|(_, f)| (*f).clone())
        .collect()
}

/// Maximal subsets of `elems` satisfying `good`, found by descending
/// cardinality with supersets-first pruning.
fn maximal_subsets(elems: &[&Formula], good: impl Fn(u32) -> bool) -> Vec<BTreeSet<Formula>> {
    let n = elems.len();
    let mut masks: Vec<u32> = (0..(1u32 << n)).collect();
    masks.sort_by_key(|m| std::cmp::Reverse(m.count_ones()));
    let mut kept: Vec<u32> = Vec::new();
    for mask in masks {
        if kept.iter().any(|&k| k & mask == mask) {
            continue;
        }
        if good(mask) {
            kept.push(mask);
        }
    }
    let mut sets: Vec<BTreeSet<Formula>> =
        kept.into_iter().map(|m| subset_of_mask(elems, m)).collect();
    sets.sort();
    sets
}

/// The maximally consistent subsets of `premises`.
pub fn mcs(premises: &BTreeSet<Formula>, cap: usize) -> Result<McsFamily, McsError> {
    check_cap(premises.len(), cap)?;
    let elems: Vec<&Formula> = premises.iter().collect();
    let members = maximal_subsets(&elems, |mask| {
        logic::is_consistent(
            elems
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, f)| *f),
        )
    });
    Ok(McsFamily {
        strict: premises.clone(),
        assumptions: None,
        members,
    })
}

/// The maximal subsets of `assumptions` consistent together with the
/// (consistent) strict set.
pub fn mcs_with_assumptions(
    strict: &BTreeSet<Formula>,
    assumptions: &BTreeSet<Formula>,
    cap: usize,
) -> Result<McsFamily, McsError> {
    check_cap(strict.len() + assumptions.len(), cap)?;
    if !logic::is_consistent(strict) {
        return Err(McsError::InconsistentStrictSet);
    }
    let elems: Vec<&Formula> = assumptions.iter().collect();
    let members = maximal_subsets(&elems, |mask| {
        logic::is_consistent(
            elems
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, f)| *f)
                .chain(strict.iter()),
        )
    });
    Ok(McsFamily {
        strict: strict.clone(),
        assumptions: Some(assumptions.clone()),
        members,
    })
}

/// Subset-minimal inconsistent subsets of `premises`.
pub fn minimal_conflicts(
    premises: &BTreeSet<Formula>,
    cap: usize,
) -> Result<Vec<BTreeSet<Formula>>, McsError> {
    check_cap(premises.len(), cap)?;
    let elems: Vec<&Formula> = premises.iter().collect();
    let n = elems.len();
    let mut masks: Vec<u32> = (0..(1u32 << n)).collect();
    masks.sort_by_key(|m| m.count_ones());
    let mut kept: Vec<u32> = Vec::new();
    for mask in masks {
        #[allow(clippy::manual_contains)]
        if kept.iter().any(|&k| k & mask == k) {
            continue;
        }
        let inconsistent = !logic::is_consistent(
            elems
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, f)| *f),
        );
        if inconsistent {
            kept.push(mask);
        }
    }
    let mut sets: Vec<BTreeSet<Formula>> =
        kept.into_iter().map(|m| subset_of_mask(&elems, m)).collect();
    sets.sort();
    Ok(sets)
}

/// The formulas of `premises` outside every minimal conflict.
pub fn free(premises: &BTreeSet<Formula>, cap: usize) -> Result<BTreeSet<Formula>, McsError> {
    let conflicts = minimal_conflicts(premises, cap)?;
    let tainted: BTreeSet<&Formula> = conflicts.iter().flatten().collect();
    Ok(premises
        .iter()
        .filter(|f| !tainted.contains(f))
        .cloned()
        .collect())
}

/// Membership in the classical closure of `premises`.
pub fn cn_contains(premises: &BTreeSet<Formula>, goal: &Formula) -> bool {
    logic::entails(premises, goal)
}

/// Flat MCS entailment: under `Cap` the goal must follow from the
/// intersection of the family, under `Cup` from some member, under
/// `WCap` from every member.
pub fn mcs_entails(
    premises: &BTreeSet<Formula>,
    goal: &Formula,
    mode: EntailmentMode,
    cap: usize,
) -> Result<bool, McsError> {
    let family = mcs(premises, cap)?;
    Ok(match mode {
        EntailmentMode::Cap => cn_contains(&family.intersection(), goal),
        EntailmentMode::Cup => family.members.iter().any(|t| cn_contains(t, goal)),
        EntailmentMode::WCap => family.members.iter().all(|t| cn_contains(t, goal)),
    })
}

/// Assumptive MCS entailment: as [`mcs_entails`], with the strict set
/// joined in on each side.
pub fn mcs_entails_assumptive(
    strict: &BTreeSet<Formula>,
    assumptions: &BTreeSet<Formula>,
    goal: &Formula,
    mode: EntailmentMode,
    cap: usize,
) -> Result<bool, McsError> {
    let family = mcs_with_assumptions(strict, assumptions, cap)?;
    let with_strict = |t: &BTreeSet<Formula>| -> BTreeSet<Formula> {
        t.union(strict).cloned().collect()
    };
    Ok(match mode {
        EntailmentMode::Cap => cn_contains(&with_strict(&family.intersection()), goal),
        EntailmentMode::Cup => family
            .members
            .iter()
            .any(|t| cn_contains(&with_strict(t), goal)),
        EntailmentMode::WCap => family
            .members
            .iter()
            .all(|t| cn_contains(&with_strict(t), goal)),
    })
}
