//! Nonmonotonic entailment over frameworks.
//!
//! Three modes are supported. `Cap` asks for a single argument with the
//! queried conclusion that belongs to every extension, `Cup` for such an
//! argument in some extension, `WCap` for such an argument in every
//! extension, possibly a different one each time. With no extensions at
//! all, `Cap` and `WCap` hold vacuously and `Cup` fails; answers carry a
//! flag so callers can surface that situation.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::aba::{AbaError, AbaFramework, NativeAbaFramework};
use crate::attack::Framework;
use crate::formula::Formula;
use crate::semantics::{extensions, Extension, Semantics, SemanticsError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EntailmentMode {
    Cap,
    Cup,
    WCap,
}

impl EntailmentMode {
    pub const ALL: [EntailmentMode; 3] =
        [EntailmentMode::Cap, EntailmentMode::Cup, EntailmentMode::WCap];
}

impl fmt::Display for EntailmentMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EntailmentMode::Cap => write!(f, "cap"),
            EntailmentMode::Cup => write!(f, "cup"),
            EntailmentMode::WCap => write!(f, "wcap"),
        }
    }
}

impl FromStr for EntailmentMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "cap" => Ok(EntailmentMode::Cap),
            "cup" => Ok(EntailmentMode::Cup),
            "wcap" => Ok(EntailmentMode::WCap),
            other => Err(format!("unknown entailment mode: {other}")),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EntailmentError {
    #[error("query {0} is not in the conclusion pool; rebuild the universe with the query included")]
    PoolMiss(String),
    #[error(transparent)]
    Semantics(#[from] SemanticsError),
    #[error(transparent)]
    Aba(#[from] AbaError),
}

/// How an entailment answer is witnessed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EntailmentWitness {
    /// One argument (by index) inside every extension.
    EveryExtension { argument: usize },
    /// An argument inside the indicated extension.
    SomeExtension { extension: usize, argument: usize },
    /// One argument per extension, in extension order.
    PerExtension { arguments: Vec<(usize, usize)> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QueryAnswer {
    pub holds: bool,
    /// True when the semantics produced no extensions at all.
    pub no_extensions: bool,
    pub witness: Option<EntailmentWitness>,
}

/// Decide a query against precomputed extensions. `conclusions[i]` is
/// the conclusion of argument `i`.
pub fn answer_with_extensions(
    extension_list: &[Extension],
    conclusions: &[&Formula],
    mode: EntailmentMode,
    goal: &Formula,
) -> QueryAnswer {
    if extension_list.is_empty() {
        return QueryAnswer {
            holds: mode != EntailmentMode::Cup,
            no_extensions: true,
            witness: None,
        };
    }
    let matching = |i: usize| conclusions[i] == goal;
    match mode {
        EntailmentMode::Cap => {
            let common = extension_list
                .iter()
                .skip(1)
                .fold(extension_list[0].members.clone(), |acc, e| {
                    acc.intersection(&e.members).copied().collect()
                });
            let witness = common.iter().copied().find(|&i| matching(i));
            QueryAnswer {
                holds: witness.is_some(),
                no_extensions: false,
                witness: witness.map(|argument| EntailmentWitness::EveryExtension { argument }),
            }
        }
        EntailmentMode::Cup => {
            for (ext_index, extension) in extension_list.iter().enumerate() {
                if let Some(&argument) = extension.members.iter().find(|&&i| matching(i)) {
                    return QueryAnswer {
                        holds: true,
                        no_extensions: false,
                        witness: Some(EntailmentWitness::SomeExtension {
                            extension: ext_index,
                            argument,
                        }),
                    };
                }
            }
            QueryAnswer {
                holds: false,
                no_extensions: false,
                witness: None,
            }
        }
        EntailmentMode::WCap => {
            let mut picks = Vec::with_capacity(extension_list.len());
            for (ext_index, extension) in extension_list.iter().enumerate() {
                match extension.members.iter().find(|&&i| matching(i)) {
                    Some(&argument) => picks.push((ext_index, argument)),
                    None => {
                        return QueryAnswer {
                            holds: false,
                            no_extensions: false,
                            witness: None,
                        }
                    }
                }
            }
            QueryAnswer {
                holds: true,
                no_extensions: false,
                witness: Some(EntailmentWitness::PerExtension { arguments: picks }),
            }
        }
    }
}

/// Answer a query against a framework, with the full witness breakdown.
pub fn query(
    framework: &Framework,
    semantics: Semantics,
    mode: EntailmentMode,
    goal: &Formula,
    argument_cap: usize,
) -> Result<QueryAnswer, EntailmentError> {
    if !framework.universe().pool().contains(goal) {
        return Err(EntailmentError::PoolMiss(goal.to_string()));
    }
    let extension_list = extensions(&framework.attack_graph(), semantics, argument_cap)?;
    let conclusions: Vec<&Formula> = framework
        .universe()
        .arguments()
        .iter()
        .map(|a| a.conclusion())
        .collect();
    Ok(answer_with_extensions(
        &extension_list,
        &conclusions,
        mode,
        goal,
    ))
}

/// Does the framework entail the goal under the given semantics and mode?
pub fn entails(
    framework: &Framework,
    semantics: Semantics,
    mode: EntailmentMode,
    goal: &Formula,
    argument_cap: usize,
) -> Result<bool, EntailmentError> {
    Ok(query(framework, semantics, mode, goal, argument_cap)?.holds)
}

/// Entailment over the native ABA route: arguments are deductions and
/// attacks target contraries of assumptions directly.
pub fn entails_aba(
    aba: &AbaFramework,
    semantics: Semantics,
    mode: EntailmentMode,
    goal: &Formula,
    argument_cap: usize,
) -> Result<bool, EntailmentError> {
    let mut pool = aba.default_goal_pool();
    pool.insert(goal.clone());
    let native = NativeAbaFramework::build(aba, &pool, argument_cap)?;
    Ok(native.answer(semantics, mode, goal, argument_cap)?.holds)
}
