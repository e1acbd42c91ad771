//! Extension-based semantics over finite attack graphs: conflict-free
//! and admissible sets, grounded, complete, preferred and stable
//! extensions.
//!
//! Enumeration is exhaustive: a depth-first walk over conflict-free sets
//! with bitmask bookkeeping, bounded by the argument cap.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SemanticsError {
    #[error("{count} arguments exceed the enumeration cap of {cap}")]
    TooManyArguments { count: usize, cap: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Semantics {
    Grounded,
    Complete,
    Preferred,
    Stable,
}

impl Semantics {
    pub const ALL: [Semantics; 4] = [
        Semantics::Grounded,
        Semantics::Complete,
        Semantics::Preferred,
        Semantics::Stable,
    ];
}

impl fmt::Display for Semantics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Semantics::Grounded => write!(f, "grd"),
            Semantics::Complete => write!(f, "cmp"),
            Semantics::Preferred => write!(f, "prf"),
            Semantics::Stable => write!(f, "stb"),
        }
    }
}

impl FromStr for Semantics {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "grd" => Ok(Semantics::Grounded),
            "cmp" => Ok(Semantics::Complete),
            "prf" => Ok(Semantics::Preferred),
            "stb" => Ok(Semantics::Stable),
            other => Err(format!("unknown semantics: {other}")),
        }
    }
}

/// A set of argument indices accepted under some semantics.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Extension {
    pub members: BTreeSet<usize>,
    pub semantics: Semantics,
}

/// A finite directed attack relation over arguments `0..n`.
#[derive(Debug, Clone)]
pub struct AttackGraph {
    n: usize,
    attackers: Vec<u64>,
    targets: Vec<u64>,
}

impl AttackGraph {
    /// Build from attack pairs `(attacker, attacked)`. Panics if an index
    /// is out of range or `n` exceeds 64 (the bitmask width).
    pub fn new(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        assert!(n <= 64, "attack graphs are limited to 64 arguments");
        let mut attackers = vec![0u64; n];
        let mut targets = vec![0u64; n];
        for (from, to) in pairs {
            assert!(from < n && to < n, "attack index out of range");
            targets[from] |= 1 << to;
            attackers[to] |= 1 << from;
        }
        AttackGraph {
            n,
            attackers,
            targets,
        }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn attacks(&self, attacker: usize, attacked: usize) -> bool {
        self.targets[attacker] >> attacked & 1 == 1
    }

    fn mask_of(&self, set: &BTreeSet<usize>) -> u64 {
        set.iter().fold(0u64, |acc, &i| {
            assert!(i < self.n, "argument index out of range");
            acc | 1 << i
        })
    }

    fn targets_of_mask(&self, mask: u64) -> u64 {
        (0..self.n)
            .filter(|i| mask >> i & 1 == 1)
            .fold(0, |acc, i| acc | self.targets[i])
    }

    fn full_mask(&self) -> u64 {
        if self.n == 64 {
            u64::MAX
        } else {
            (1 << self.n) - 1
        }
    }
}

fn members_of_mask(mask: u64, n: usize) -> BTreeSet<usize> {
    (0..n).filter(|i| mask >> i & 1 == 1).collect()
}

/// No member attacks a member.
pub fn is_conflict_free(graph: &AttackGraph, set: &BTreeSet<usize>) -> bool {
    let mask = graph.mask_of(set);
    graph.targets_of_mask(mask) & mask == 0
}

/// Some member of `set` attacks `argument`.
pub fn set_attacks(graph: &AttackGraph, set: &BTreeSet<usize>, argument: usize) -> bool {
    let mask = graph.mask_of(set);
    graph.targets_of_mask(mask) >> argument & 1 == 1
}

/// Every attacker of `argument` is attacked by some member of `set`.
pub fn defends(graph: &AttackGraph, set: &BTreeSet<usize>, argument: usize) -> bool {
    let attacked = graph.targets_of_mask(graph.mask_of(set));
    graph.attackers[argument] & !attacked == 0
}

/// Conflict-free and defending every member.
pub fn is_admissible(graph: &AttackGraph, set: &BTreeSet<usize>) -> bool {
    is_conflict_free(graph, set) && set.iter().all(|&i| defends(graph, set, i))
}

/// Least fixed point of the defense operator, starting from the empty
/// set.
pub fn grounded_extension(graph: &AttackGraph) -> Extension {
    let mut current = 0u64;
    loop {
        let attacked = graph.targets_of_mask(current);
        let next = (0..graph.n)
            .filter(|&i| graph.attackers[i] & !attacked == 0)
            .fold(0u64, |acc, i| acc | 1 << i);
        if next == current {
            return Extension {
                members: members_of_mask(current, graph.n),
                semantics: Semantics::Grounded,
            };
        }
        current = next;
    }
}

/// All complete extensions: admissible sets containing every argument
/// they defend. Enumerates conflict-free sets depth-first; `cap` bounds
/// the number of arguments.
pub fn complete_extensions(
    graph: &AttackGraph,
    cap: usize,
) -> Result<Vec<Extension>, SemanticsError> {
    let cap = cap.min(64);
    if graph.n > cap {
        return Err(SemanticsError::TooManyArguments {
            count: graph.n,
            cap,
        });
    }
    // Visit heavily attacked arguments first so conflicting branches die
    // early; results are mapped back to the original indices.
    let mut order: Vec<usize> = (0..graph.n).collect();
    order.sort_by_key(|&i| {
        std::cmp::Reverse((graph.attackers[i] | graph.targets[i]).count_ones())
    });
    let mut position = vec![0usize; graph.n];
    for (new_index, &old_index) in order.iter().enumerate() {
        position[old_index] = new_index;
    }
    let remap = |mask: u64| -> u64 {
        (0..graph.n)
            .filter(|i| mask >> i & 1 == 1)
            .fold(0u64, |acc, i| acc | 1 << position[i])
    };
    let permuted = AttackGraph {
        n: graph.n,
        attackers: order.iter().map(|&i| remap(graph.attackers[i])).collect(),
        targets: order.iter().map(|&i| remap(graph.targets[i])).collect(),
    };

    let mut found: Vec<u64> = Vec::new();
    walk_conflict_free(&permuted, 0, 0, 0, 0, &mut found);
    let mut extensions: Vec<Extension> = found
        .into_iter()
        .map(|mask| Extension {
            members: (0..graph.n)
                .filter(|&k| mask >> position[k] & 1 == 1)
                .collect(),
            semantics: Semantics::Complete,
        })
        .collect();
    sort_extensions(&mut extensions);
    Ok(extensions)
}

/// Depth-first over conflict-free sets, keeping the attacked- and
/// attacker-unions incrementally; records the member masks of complete
/// sets.
fn walk_conflict_free(
    graph: &AttackGraph,
    index: usize,
    members: u64,
    attacked: u64,
    attackers: u64,
    found: &mut Vec<u64>,
) {
    if index == graph.n {
        // Admissible: every attacker of a member is counter-attacked.
        if attackers & !attacked != 0 {
            return;
        }
        // Complete: no outside argument is defended.
        for i in 0..graph.n {
            if members >> i & 1 == 0 && graph.attackers[i] & !attacked == 0 {
                return;
            }
        }
        found.push(members);
        return;
    }
    walk_conflict_free(graph, index + 1, members, attacked, attackers, found);
    let bit = 1u64 << index;
    let with_attacked = attacked | graph.targets[index];
    let with_members = members | bit;
    if with_attacked & with_members == 0 {
        walk_conflict_free(
            graph,
            index + 1,
            with_members,
            with_attacked,
            attackers | graph.attackers[index],
            found,
        );
    }
}

/// The subset-maximal members of an already computed complete list.
pub fn preferred_from_complete(complete: &[Extension]) -> Vec<Extension> {
    let mut preferred: Vec<Extension> = complete
        .iter()
        .filter(|e| {
            !complete.iter().any(|other| {
                other.members.len() > e.members.len() && e.members.is_subset(&other.members)
            })
        })
        .map(|e| Extension {
            members: e.members.clone(),
            semantics: Semantics::Preferred,
        })
        .collect();
    sort_extensions(&mut preferred);
    preferred
}

/// The members of an already computed complete list that attack every
/// outside argument.
pub fn stable_from_complete(graph: &AttackGraph, complete: &[Extension]) -> Vec<Extension> {
    let full = graph.full_mask();
    let mut stable: Vec<Extension> = complete
        .iter()
        .filter(|e| {
            let mask = graph.mask_of(&e.members);
            mask | graph.targets_of_mask(mask) == full
        })
        .map(|e| Extension {
            members: e.members.clone(),
            semantics: Semantics::Stable,
        })
        .collect();
    sort_extensions(&mut stable);
    stable
}

/// Subset-maximal complete extensions.
pub fn preferred_extensions(
    graph: &AttackGraph,
    cap: usize,
) -> Result<Vec<Extension>, SemanticsError> {
    Ok(preferred_from_complete(&complete_extensions(graph, cap)?))
}

/// Complete extensions attacking every argument outside themselves.
pub fn stable_extensions(
    graph: &AttackGraph,
    cap: usize,
) -> Result<Vec<Extension>, SemanticsError> {
    Ok(stable_from_complete(graph, &complete_extensions(graph, cap)?))
}

/// Extensions under the requested semantics; grounded always yields
/// exactly one.
pub fn extensions(
    graph: &AttackGraph,
    semantics: Semantics,
    cap: usize,
) -> Result<Vec<Extension>, SemanticsError> {
    match semantics {
        Semantics::Grounded => Ok(vec![grounded_extension(graph)]),
        Semantics::Complete => complete_extensions(graph, cap),
        Semantics::Preferred => preferred_extensions(graph, cap),
        Semantics::Stable => stable_extensions(graph, cap),
    }
}

/// Computes the complete list once and answers every semantics from it.
#[derive(Debug, Clone)]
pub struct ExtensionCache {
    graph: AttackGraph,
    cap: usize,
    complete: Option<Vec<Extension>>,
}

impl ExtensionCache {
    pub fn new(graph: AttackGraph, cap: usize) -> Self {
        ExtensionCache {
            graph,
            cap,
            complete: None,
        }
    }

    pub fn graph(&self) -> &AttackGraph {
        &self.graph
    }

    fn complete(&mut self) -> Result<&[Extension], SemanticsError> {
        if self.complete.is_none() {
            self.complete = Some(complete_extensions(&self.graph, self.cap)?);
        }
        Ok(self.complete.as_deref().unwrap())
    }

    pub fn extensions(&mut self, semantics: Semantics) -> Result<Vec<Extension>, SemanticsError> {
        match semantics {
            Semantics::Grounded => Ok(vec![grounded_extension(&self.graph)]),
            Semantics::Complete => Ok(self.complete()?.to_vec()),
            Semantics::Preferred => {
                self.complete()?;
                Ok(preferred_from_complete(self.complete.as_deref().unwrap()))
            }
            Semantics::Stable => {
                self.complete()?;
                Ok(stable_from_complete(
                    &self.graph,
                    self.complete.as_deref().unwrap(),
                ))
            }
        }
    }
}

/// Canonical output order: by size, then by member lists.
fn sort_extensions(extensions: &mut [Extension]) {
    extensions.sort_by(|a, b| {
        a.members
            .len()
            .cmp(&b.members.len())
            .then_with(|| a.members.cmp(&b.members))
    });
}
