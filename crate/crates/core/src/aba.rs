//! Assumption-based argumentation: deductive systems, deductions,
//! frameworks with a contrariness mapping, framework validation, the
//! native argument/attack construction, and the translation into an
//! assumptive sequent-based framework.
//!
//! Two deduction backends are supported. The core-logic backend
//! identifies derivability with classical entailment. The rule-system
//! backend saturates a finite rule set by forward chaining, treating the
//! formulas in rules as opaque tokens matched structurally.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::attack::{build_framework, AttackRule, Framework};
use crate::entailment::{answer_with_extensions, EntailmentMode, QueryAnswer};
use crate::formula::{atoms_of, Formula};
use crate::logic;
use crate::semantics::{extensions, AttackGraph, Semantics, SemanticsError};
use crate::universe::{build_universe_with, UniverseError, UniverseOptions};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AbaError {
    #[error("an ABA framework needs at least one assumption")]
    EmptyAssumptions,
    #[error("strict premises and assumptions overlap: {0}")]
    OverlappingZones(String),
    #[error("assumption {0} has no contrary in the mapping")]
    UnmappedAssumption(String),
    #[error("the strict set is trivializing")]
    Trivializing,
    #[error(transparent)]
    Universe(#[from] UniverseError),
    #[error(transparent)]
    Semantics(#[from] SemanticsError),
}

/// A deduction rule `body -> head`; the body may be empty.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct InferenceRule {
    pub body: Vec<Formula>,
    pub head: Formula,
}

impl fmt::Display for InferenceRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, b) in self.body.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{b}")?;
        }
        if self.body.is_empty() {
            write!(f, "-> {}", self.head)
        } else {
            write!(f, " -> {}", self.head)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DeductionSystem {
    /// Derivability is classical entailment.
    CoreLogic,
    /// Derivability is forward chaining over the given rules.
    RuleSystem(Vec<InferenceRule>),
}

/// An ABA framework: a deduction system, a strict set, a nonempty
/// assumption set disjoint from it, and a total contrariness mapping on
/// the assumptions.
#[derive(Debug, Clone)]
pub struct AbaFramework {
    system: DeductionSystem,
    strict: BTreeSet<Formula>,
    assumptions: BTreeSet<Formula>,
    contrary: BTreeMap<Formula, Formula>,
}

impl AbaFramework {
    /// Validates the structural invariants. Non-triviality of the strict
    /// set is checked separately (see [`AbaFramework::is_non_trivializing`])
    /// so that defective strict sets can still be examined.
    pub fn new(
        system: DeductionSystem,
        strict: BTreeSet<Formula>,
        assumptions: BTreeSet<Formula>,
        contrary: BTreeMap<Formula, Formula>,
    ) -> Result<Self, AbaError> {
        if assumptions.is_empty() {
            return Err(AbaError::EmptyAssumptions);
        }
        if let Some(shared) = strict.intersection(&assumptions).next() {
            return Err(AbaError::OverlappingZones(shared.to_string()));
        }
        for assumption in &assumptions {
            if !contrary.contains_key(assumption) {
                return Err(AbaError::UnmappedAssumption(assumption.to_string()));
            }
        }
        Ok(AbaFramework {
            system,
            strict,
            assumptions,
            contrary,
        })
    }

    /// Convenience constructor with `contrary(a) = ~a` for every
    /// assumption.
    pub fn with_negation_contrary(
        system: DeductionSystem,
        strict: BTreeSet<Formula>,
        assumptions: BTreeSet<Formula>,
    ) -> Result<Self, AbaError> {
        let contrary = assumptions
            .iter()
            .map(|a| (a.clone(), Formula::neg(a.clone())))
            .collect();
        Self::new(system, strict, assumptions, contrary)
    }

    pub fn system(&self) -> &DeductionSystem {
        &self.system
    }

    pub fn strict(&self) -> &BTreeSet<Formula> {
        &self.strict
    }

    pub fn assumptions(&self) -> &BTreeSet<Formula> {
        &self.assumptions
    }

    pub fn contrary_map(&self) -> &BTreeMap<Formula, Formula> {
        &self.contrary
    }

    pub fn contrary_of(&self, assumption: &Formula) -> Option<&Formula> {
        self.contrary.get(assumption)
    }

    /// Derivability of `goal` from `premises` in this framework's
    /// deduction system (monotone: padding premises never hurts).
    pub fn derives<'a, I>(&self, premises: I, goal: &Formula) -> bool
    where
        I: IntoIterator<Item = &'a Formula>,
    {
        match &self.system {
            DeductionSystem::CoreLogic => logic::entails(premises, goal),
            DeductionSystem::RuleSystem(rules) => {
                saturate(rules, premises.into_iter().cloned().collect()).contains(goal)
            }
        }
    }

    /// Default conclusion pool: strict premises, assumptions, their
    /// contraries. Attacks only ever need contrary conclusions, so this
    /// pool preserves the whole attack structure; queries are added on
    /// top by callers.
    pub fn default_goal_pool(&self) -> BTreeSet<Formula> {
        let mut pool: BTreeSet<Formula> =
            self.strict.union(&self.assumptions).cloned().collect();
        pool.extend(self.contrary.values().cloned());
        pool
    }

    /// Non-triviality of the strict set. In core-logic mode this is
    /// consistency (explosion derives foreign formulas from an
    /// inconsistent set). In rule-system mode the saturation of the
    /// strict set must not contain a formula sharing no atom with it.
    pub fn is_non_trivializing(&self) -> bool {
        match &self.system {
            DeductionSystem::CoreLogic => logic::is_consistent(&self.strict),
            DeductionSystem::RuleSystem(rules) => {
                let strict_atoms = atoms_of(self.strict.iter());
                let derived = saturate(rules, self.strict.clone());
                derived.iter().all(|f| {
                    self.strict.contains(f)
                        || f.atoms().iter().any(|a| strict_atoms.contains(a))
                })
            }
        }
    }

    /// A set of assumptions is consistent when no contrary of one of its
    /// members is derivable from the set together with the strict
    /// premises.
    pub fn is_consistent_assumption_set(&self, subset: &BTreeSet<Formula>) -> bool {
        subset.iter().all(|phi| {
            let contrary = self
                .contrary
                .get(phi)
                .expect("assumption subsets are drawn from the mapped assumptions");
            !self.derives(subset.iter().chain(self.strict.iter()), contrary)
        })
    }

    /// The maximal consistent assumption sets in the framework's own
    /// consistency sense.
    pub fn maximal_consistent_assumption_sets(&self) -> Vec<BTreeSet<Formula>> {
        let elems: Vec<&Formula> = self.assumptions.iter().collect();
        let n = elems.len();
        let mut masks: Vec<u32> = (0..(1u32 << n)).collect();
        masks.sort_by_key(|m| std::cmp::Reverse(m.count_ones()));
        let mut kept: Vec<u32> = Vec::new();
        for mask in masks {
            if kept.iter().any(|&k| k & mask == mask) {
                continue;
            }
            let subset: BTreeSet<Formula> = elems
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, f)| (*f).clone())
                .collect();
            if self.is_consistent_assumption_set(&subset) {
                kept.push(mask);
            }
        }
        let mut sets: Vec<BTreeSet<Formula>> = kept
            .into_iter()
            .map(|mask| {
                elems
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, f)| (*f).clone())
                    .collect()
            })
            .collect();
        sets.sort();
        sets
    }

    /// MCS-style entailment with this framework's deduction relation and
    /// consistency notion.
    pub fn mcs_entails(&self, mode: EntailmentMode, goal: &Formula) -> bool {
        let family = self.maximal_consistent_assumption_sets();
        let derives_with_strict = |t: &BTreeSet<Formula>| -> bool {
            self.derives(t.iter().chain(self.strict.iter()), goal)
        };
        match mode {
            EntailmentMode::Cap => {
                let mut iter = family.iter();
                let intersection = match iter.next() {
                    Some(first) => iter.fold(first.clone(), |acc, t| {
                        acc.intersection(t).cloned().collect()
                    }),
                    None => BTreeSet::new(),
                };
                derives_with_strict(&intersection)
            }
            EntailmentMode::Cup => family.iter().any(derives_with_strict),
            EntailmentMode::WCap => family.iter().all(derives_with_strict),
        }
    }
}

/// Forward-chaining closure of `premises` under `rules`.
fn saturate(rules: &[InferenceRule], premises: BTreeSet<Formula>) -> BTreeSet<Formula> {
    let mut derived = premises;
    loop {
        let mut grew = false;
        for rule in rules {
            if !derived.contains(&rule.head) && rule.body.iter().all(|b| derived.contains(b)) {
                derived.insert(rule.head.clone());
                grew = true;
            }
        }
        if !grew {
            return derived;
        }
    }
}

/// A deduction of `goal` from `premises`, if one exists: a sequence in
/// which every element is a premise or the head of a rule whose body
/// appears earlier, ending in the goal. In core-logic mode the witness
/// is the premises followed by the goal (a single entailment step).
pub fn deduces(
    system: &DeductionSystem,
    premises: &BTreeSet<Formula>,
    goal: &Formula,
) -> Option<Vec<Formula>> {
    if premises.contains(goal) {
        return Some(vec![goal.clone()]);
    }
    match system {
        DeductionSystem::CoreLogic => {
            if logic::entails(premises, goal) {
                let mut seq: Vec<Formula> = premises.iter().cloned().collect();
                seq.push(goal.clone());
                Some(seq)
            } else {
                None
            }
        }
        DeductionSystem::RuleSystem(rules) => {
            // Saturate, remembering which rule first produced each head.
            let mut derived: Vec<Formula> = premises.iter().cloned().collect();
            let mut producer: BTreeMap<Formula, &InferenceRule> = BTreeMap::new();
            let mut known: BTreeSet<Formula> = premises.clone();
            loop {
                let mut grew = false;
                for rule in rules {
                    if !known.contains(&rule.head)
                        && rule.body.iter().all(|b| known.contains(b))
                    {
                        known.insert(rule.head.clone());
                        derived.push(rule.head.clone());
                        producer.insert(rule.head.clone(), rule);
                        grew = true;
                    }
                }
                if !grew {
                    break;
                }
            }
            if !known.contains(goal) {
                return None;
            }
            // Backtrack through producers for a lean witness.
            let mut sequence = Vec::new();
            let mut placed: BTreeSet<Formula> = BTreeSet::new();
            collect_witness(goal, premises, &producer, &mut sequence, &mut placed);
            Some(sequence)
        }
    }
}

fn collect_witness(
    formula: &Formula,
    premises: &BTreeSet<Formula>,
    producer: &BTreeMap<Formula, &InferenceRule>,
    sequence: &mut Vec<Formula>,
    placed: &mut BTreeSet<Formula>,
) {
    if placed.contains(formula) {
        return;
    }
    if !premises.contains(formula) {
        let rule = producer
            .get(formula)
            .expect("derived formulas have a producing rule");
        for b in &rule.body {
            collect_witness(b, premises, producer, sequence, placed);
        }
    }
    placed.insert(formula.clone());
    sequence.push(formula.clone());
}

/// Check that a sequence is a deduction of its last element from
/// `premises`: every element is a premise or follows from earlier
/// elements by a rule (in core-logic mode, by entailment).
pub fn is_valid_deduction(
    system: &DeductionSystem,
    premises: &BTreeSet<Formula>,
    sequence: &[Formula],
) -> bool {
    if sequence.is_empty() {
        return false;
    }
    for (i, step) in sequence.iter().enumerate() {
        let earlier = &sequence[..i];
        let justified = premises.contains(step)
            || match system {
                DeductionSystem::CoreLogic => logic::entails(earlier, step),
                DeductionSystem::RuleSystem(rules) => rules.iter().any(|rule| {
                    rule.head == *step && rule.body.iter().all(|b| earlier.contains(b))
                }),
            };
        if !justified {
            return false;
        }
    }
    true
}

/// A native ABA argument: a deduction of the conclusion from some
/// assumptions and strict premises, with no junk premises.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct AbaArgument {
    pub assumptions: BTreeSet<Formula>,
    pub strict_part: BTreeSet<Formula>,
    pub conclusion: Formula,
    pub witness: Vec<Formula>,
}

impl fmt::Display for AbaArgument {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.assumptions.iter().chain(self.strict_part.iter()).enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{p}")?;
        }
        if self.assumptions.is_empty() && self.strict_part.is_empty() {
            write!(f, "|- {}", self.conclusion)
        } else {
            write!(f, " |- {}", self.conclusion)
        }
    }
}

/// Enumerate the ABA arguments with conclusions in `pool`: every pair of
/// an assumption subset and strict subset admitting a deduction, kept
/// when each premise participates in some minimal deriving subset.
pub fn build_aba_arguments(
    aba: &AbaFramework,
    pool: &BTreeSet<Formula>,
    options: &UniverseOptions,
) -> Result<Vec<AbaArgument>, AbaError> {
    let derives = |premises: &[&Formula], goal: &Formula| {
        aba.derives(premises.iter().copied(), goal)
    };
    let opts = UniverseOptions {
        minimal_support: true,
        ..options.clone()
    };
    let universe = build_universe_with(&derives, &aba.strict, &aba.assumptions, pool, &opts)?;
    Ok(universe
        .arguments()
        .iter()
        .map(|arg| {
            let premises: BTreeSet<Formula> = arg.premises().cloned().collect();
            let witness = deduces(&aba.system, &premises, arg.conclusion())
                .expect("enumerated arguments are derivable");
            AbaArgument {
                assumptions: arg.assumptions().clone(),
                strict_part: arg.support().clone(),
                conclusion: arg.conclusion().clone(),
                witness,
            }
        })
        .collect())
}

/// Native ABA attack: the attacker's conclusion is the contrary of one of
/// the attacked argument's assumptions (structural match).
pub fn aba_attacks(
    attacker: &AbaArgument,
    attacked: &AbaArgument,
    contrary: &BTreeMap<Formula, Formula>,
) -> Result<Option<Formula>, AbaError> {
    for assumption in &attacked.assumptions {
        let image = contrary
            .get(assumption)
            .ok_or_else(|| AbaError::UnmappedAssumption(assumption.to_string()))?;
        if *image == attacker.conclusion {
            return Ok(Some(assumption.clone()));
        }
    }
    Ok(None)
}

/// A witness that contraposition for assumptions fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContrapositionCounterexample {
    pub assumption_set: BTreeSet<Formula>,
    pub strict_part: BTreeSet<Formula>,
    pub removed: Formula,
    pub derived_contrary_of: Formula,
}

impl fmt::Display for ContrapositionCounterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |set: &BTreeSet<Formula>| {
            set.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(", ")
        };
        write!(
            f,
            "A = {{{}}}, G = {{{}}}, phi = {}, psi = {}",
            list(&self.assumption_set),
            list(&self.strict_part),
            self.removed,
            self.derived_contrary_of
        )
    }
}

/// Search for a violation of contraposition for assumptions: for
/// assumptions `phi, psi` in a set `A` and strict part `G`, deriving the
/// contrary of `psi` from `A ∪ G` must be equivalent to deriving the
/// contrary of `phi` from `(A \ {phi}) ∪ {psi} ∪ G`. Subset sizes are
/// limited by `bound`.
pub fn contraposition_counterexample(
    aba: &AbaFramework,
    bound: usize,
) -> Option<ContrapositionCounterexample> {
    let assumption_elems: Vec<&Formula> = aba.assumptions.iter().collect();
    let strict_elems: Vec<&Formula> = aba.strict.iter().collect();
    for a_mask in 0u32..(1 << assumption_elems.len()) {
        if a_mask.count_ones() as usize > bound {
            continue;
        }
        let a_set: BTreeSet<Formula> = assumption_elems
            .iter()
            .enumerate()
            .filter(|(i, _)| a_mask >> i & 1 == 1)
            .map(|(_, f)| (*f).clone())
            .collect();
        for g_mask in 0u32..(1 << strict_elems.len()) {
            if g_mask.count_ones() as usize > bound {
                continue;
            }
            let g_set: BTreeSet<Formula> = strict_elems
                .iter()
                .enumerate()
                .filter(|(i, _)| g_mask >> i & 1 == 1)
                .map(|(_, f)| (*f).clone())
                .collect();
            for phi in &a_set {
                for psi in &a_set {
                    let contrary_psi = aba.contrary_of(psi).expect("total mapping");
                    let contrary_phi = aba.contrary_of(phi).expect("total mapping");
                    let forward =
                        aba.derives(a_set.iter().chain(g_set.iter()), contrary_psi);
                    let mut swapped: BTreeSet<Formula> = a_set.clone();
                    swapped.remove(phi);
                    swapped.insert(psi.clone());
                    let backward =
                        aba.derives(swapped.iter().chain(g_set.iter()), contrary_phi);
                    if forward != backward {
                        return Some(ContrapositionCounterexample {
                            assumption_set: a_set.clone(),
                            strict_part: g_set.clone(),
                            removed: phi.clone(),
                            derived_contrary_of: psi.clone(),
                        });
                    }
                }
            }
        }
    }
    None
}

pub fn check_contraposition(aba: &AbaFramework, bound: usize) -> bool {
    contraposition_counterexample(aba, bound).is_none()
}

/// Translate an ABA framework into an assumptive sequent-based framework:
/// the universe holds `A |~ G => phi` exactly when `A ∪ G` derives `phi`
/// in the framework's deduction system (minimal-support enabled), and
/// attacks are contrary attacks on assumptions.
pub fn translate_to_sequent(
    aba: &AbaFramework,
    pool: &BTreeSet<Formula>,
    options: &UniverseOptions,
) -> Result<Framework, AbaError> {
    if !aba.is_non_trivializing() {
        return Err(AbaError::Trivializing);
    }
    let derives = |premises: &[&Formula], goal: &Formula| {
        aba.derives(premises.iter().copied(), goal)
    };
    let opts = UniverseOptions {
        minimal_support: true,
        ..options.clone()
    };
    let universe = build_universe_with(&derives, &aba.strict, &aba.assumptions, pool, &opts)?;
    let framework = build_framework(
        universe,
        [AttackRule::AtAba].into(),
        Some(aba.contrary.clone()),
    )
    .map_err(|e| match e {
        crate::attack::AttackError::UnmappedAssumption(s) => AbaError::UnmappedAssumption(s),
        crate::attack::AttackError::ContraryRequired => unreachable!("contrary supplied"),
    })?;
    Ok(framework)
}

/// The native ABA framework: arguments, attacks and the induced graph.
#[derive(Debug, Clone)]
pub struct NativeAbaFramework {
    arguments: Vec<AbaArgument>,
    attacks: Vec<(usize, usize, Formula)>,
    graph: AttackGraph,
}

impl NativeAbaFramework {
    pub fn build(
        aba: &AbaFramework,
        pool: &BTreeSet<Formula>,
        argument_cap: usize,
    ) -> Result<Self, AbaError> {
        if !aba.is_non_trivializing() {
            return Err(AbaError::Trivializing);
        }
        let arguments = build_aba_arguments(aba, pool, &UniverseOptions::default())?;
        if arguments.len() > argument_cap.min(64) {
            return Err(AbaError::Semantics(SemanticsError::TooManyArguments {
                count: arguments.len(),
                cap: argument_cap.min(64),
            }));
        }
        let mut attacks = Vec::new();
        for (i, attacker) in arguments.iter().enumerate() {
            for (j, attacked) in arguments.iter().enumerate() {
                if let Some(witness) = aba_attacks(attacker, attacked, &aba.contrary)? {
                    attacks.push((i, j, witness));
                }
            }
        }
        let graph = AttackGraph::new(arguments.len(), attacks.iter().map(|&(i, j, _)| (i, j)));
        Ok(NativeAbaFramework {
            arguments,
            attacks,
            graph,
        })
    }

    pub fn arguments(&self) -> &[AbaArgument] {
        &self.arguments
    }

    pub fn attacks(&self) -> &[(usize, usize, Formula)] {
        &self.attacks
    }

    pub fn graph(&self) -> &AttackGraph {
        &self.graph
    }

    pub fn answer(
        &self,
        semantics: Semantics,
        mode: EntailmentMode,
        goal: &Formula,
        argument_cap: usize,
    ) -> Result<QueryAnswer, SemanticsError> {
        let extension_list = extensions(&self.graph, semantics, argument_cap)?;
        let conclusions: Vec<&Formula> =
            self.arguments.iter().map(|a| &a.conclusion).collect();
        Ok(answer_with_extensions(
            &extension_list,
            &conclusions,
            mode,
            goal,
        ))
    }
}
