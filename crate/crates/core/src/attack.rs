//! Sequent elimination rules and the attack relation they induce.
//!
//! Three rules are provided: undercut and direct undercut for plain
//! arguments, which fire when the attacker's conclusion is logically
//! equivalent to the negated conjunction of part of the attacked
//! support, and the assumption-contrary rule used by ABA-style
//! frameworks, which matches the attacker's conclusion structurally
//! against the contrary of an attacked assumption.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::argument::AssumptiveArgument;
use crate::formula::{conjoin, Formula};
use crate::logic;
use crate::semantics::AttackGraph;
use crate::universe::ArgumentUniverse;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AttackRule {
    Ucut,
    Ducut,
    AtAba,
}

impl fmt::Display for AttackRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AttackRule::Ucut => write!(f, "ucut"),
            AttackRule::Ducut => write!(f, "ducut"),
            AttackRule::AtAba => write!(f, "at-aba"),
        }
    }
}

impl FromStr for AttackRule {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "ucut" => Ok(AttackRule::Ucut),
            "ducut" => Ok(AttackRule::Ducut),
            "at-aba" => Ok(AttackRule::AtAba),
            other => Err(format!("unknown attack rule: {other}")),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AttackError {
    #[error("assumption {0} has no contrary in the mapping")]
    UnmappedAssumption(String),
    #[error("the at-aba rule requires a contrariness mapping")]
    ContraryRequired,
}

/// One attack, with the rule that produced it and the premise subset of
/// the attacked argument that it targets.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Attack {
    pub attacker: usize,
    pub attacked: usize,
    pub rule: AttackRule,
    pub witness: BTreeSet<Formula>,
}

/// An argument universe plus the attack relation its rules license.
#[derive(Debug, Clone)]
pub struct Framework {
    universe: ArgumentUniverse,
    attacks: Vec<Attack>,
    rules: BTreeSet<AttackRule>,
    contrary: Option<BTreeMap<Formula, Formula>>,
}

impl Framework {
    pub fn universe(&self) -> &ArgumentUniverse {
        &self.universe
    }

    pub fn attacks(&self) -> &[Attack] {
        &self.attacks
    }

    pub fn rules(&self) -> &BTreeSet<AttackRule> {
        &self.rules
    }

    pub fn contrary(&self) -> Option<&BTreeMap<Formula, Formula>> {
        self.contrary.as_ref()
    }

    pub fn attack_pairs(&self) -> BTreeSet<(usize, usize)> {
        self.attacks
            .iter()
            .map(|a| (a.attacker, a.attacked))
            .collect()
    }

    pub fn attack_graph(&self) -> AttackGraph {
        AttackGraph::new(self.universe.len(), self.attack_pairs())
    }

    /// Render one attack in the CLI serialization.
    pub fn display_attack(&self, attack: &Attack) -> String {
        let witness = attack
            .witness
            .iter()
            .map(|f| f.to_string())
            .collect::<Vec<_>>()
            .join(", ");
        format!(
            "{} --[{}:{{{}}}]--> {}",
            self.universe.arguments()[attack.attacker],
            attack.rule,
            witness,
            self.universe.arguments()[attack.attacked],
        )
    }
}

/// Undercut: both arguments must be plain; returns the first nonempty
/// support subset (smallest first, then canonical order) whose negated
/// conjunction is equivalent to the attacker's conclusion.
pub fn ucut_witness(
    attacker: &AssumptiveArgument,
    attacked: &AssumptiveArgument,
) -> Option<BTreeSet<Formula>> {
    if !attacker.is_plain() || !attacked.is_plain() {
        return None;
    }
    let elems: Vec<&Formula> = attacked.support().iter().collect();
    let mut masks: Vec<u32> = (1..(1u32 << elems.len())).collect();
    masks.sort_by_key(|m| (m.count_ones(), *m));
    for mask in masks {
        let subset: BTreeSet<Formula> = elems
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, f)| (*f).clone())
            .collect();
        let conj = conjoin(&subset).expect("nonempty subset");
        let condition = Formula::iff(attacker.conclusion().clone(), Formula::neg(conj));
        if logic::is_valid(&condition) {
            return Some(subset);
        }
    }
    None
}

/// Direct undercut: like [`ucut_witness`] but the witness is a single
/// support formula.
pub fn ducut_witness(
    attacker: &AssumptiveArgument,
    attacked: &AssumptiveArgument,
) -> Option<Formula> {
    if !attacker.is_plain() || !attacked.is_plain() {
        return None;
    }
    attacked
        .support()
        .iter()
        .find(|gamma| {
            let condition = Formula::iff(
                attacker.conclusion().clone(),
                Formula::neg((*gamma).clone()),
            );
            logic::is_valid(&condition)
        })
        .cloned()
}

/// ABA contrary attack: the attacker's conclusion equals (structurally)
/// the contrary of some assumption of the attacked argument.
pub fn at_aba_witness(
    attacker: &AssumptiveArgument,
    attacked: &AssumptiveArgument,
    contrary: &BTreeMap<Formula, Formula>,
) -> Result<Option<Formula>, AttackError> {
    for assumption in attacked.assumptions() {
        let image = contrary
            .get(assumption)
            .ok_or_else(|| AttackError::UnmappedAssumption(assumption.to_string()))?;
        if image == attacker.conclusion() {
            return Ok(Some(assumption.clone()));
        }
    }
    Ok(None)
}

/// Compute every attack licensed by the active rules over all ordered
/// pairs of the universe (self-attacks included).
pub fn build_framework(
    universe: ArgumentUniverse,
    rules: BTreeSet<AttackRule>,
    contrary: Option<BTreeMap<Formula, Formula>>,
) -> Result<Framework, AttackError> {
    if rules.contains(&AttackRule::AtAba) && contrary.is_none() {
        return Err(AttackError::ContraryRequired);
    }
    let mut attacks = Vec::new();
    for (i, attacker) in universe.arguments().iter().enumerate() {
        for (j, attacked) in universe.arguments().iter().enumerate() {
            for rule in &rules {
                match rule {
                    AttackRule::Ucut => {
                        if let Some(witness) = ucut_witness(attacker, attacked) {
                            attacks.push(Attack {
                                attacker: i,
                                attacked: j,
                                rule: AttackRule::Ucut,
                                witness,
                            });
                        }
                    }
                    AttackRule::Ducut => {
                        if let Some(gamma) = ducut_witness(attacker, attacked) {
                            attacks.push(Attack {
                                attacker: i,
                                attacked: j,
                                rule: AttackRule::Ducut,
                                witness: [gamma].into(),
                            });
                        }
                    }
                    AttackRule::AtAba => {
                        let map = contrary.as_ref().expect("checked above");
                        if let Some(assumption) = at_aba_witness(attacker, attacked, map)? {
                            attacks.push(Attack {
                                attacker: i,
                                attacked: j,
                                rule: AttackRule::AtAba,
                                witness: [assumption].into(),
                            });
                        }
                    }
                }
            }
        }
    }
    attacks.sort();
    Ok(Framework {
        universe,
        attacks,
        rules,
        contrary,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse;
    use crate::universe::{build_universe, UniverseOptions};

    fn set(texts: &[&str]) -> BTreeSet<Formula> {
        texts.iter().map(|t| parse(t).unwrap()).collect()
    }

    fn plain(support: &[&str], conclusion: &str) -> AssumptiveArgument {
        AssumptiveArgument::plain(set(support), parse(conclusion).unwrap()).unwrap()
    }

    fn assumptive(ass: &[&str], supp: &[&str], conclusion: &str) -> AssumptiveArgument {
        AssumptiveArgument::new(set(ass), set(supp), parse(conclusion).unwrap()).unwrap()
    }

    fn negation_contrary(assumptions: &BTreeSet<Formula>) -> BTreeMap<Formula, Formula> {
        assumptions
            .iter()
            .map(|a| (a.clone(), Formula::neg(a.clone())))
            .collect()
    }

    #[test]
    fn undercut_on_negated_support() {
        let a = plain(&["p", "p -> q"], "q");
        let b = plain(&["~q"], "~q");
        assert_eq!(ucut_witness(&a, &b), Some(set(&["~q"])));

        let e = plain(&["p -> q", "~q"], "~p");
        let c = plain(&["p"], "p");
        assert_eq!(ucut_witness(&e, &c), Some(set(&["p"])));

        // An empty support cannot be undercut.
        let d = plain(&[], "q | ~q");
        assert_eq!(ucut_witness(&a, &d), None);
        assert_eq!(ucut_witness(&e, &d), None);
    }

    #[test]
    fn direct_undercut_matches_single_formulas() {
        let e = plain(&["p -> q", "~q"], "~p");
        let c = plain(&["p"], "p");
        let witness = ducut_witness(&e, &c).unwrap();
        assert_eq!(witness, parse("p").unwrap());
        assert!(logic::is_valid(&Formula::iff(
            e.conclusion().clone(),
            Formula::neg(witness)
        )));

        let a = plain(&["p", "p -> q"], "q");
        let b = plain(&["~q"], "~q");
        let witness = ducut_witness(&a, &b).unwrap();
        assert_eq!(witness, parse("~q").unwrap());
        assert!(logic::is_valid(&Formula::iff(
            a.conclusion().clone(),
            Formula::neg(witness)
        )));

        let d = plain(&[], "q | ~q");
        assert_eq!(ducut_witness(&a, &d), None);
    }

    #[test]
    fn at_aba_matches_contraries_of_assumptions() {
        let b = assumptive(&["p", "~p | ~q"], &[], "~q");
        let c = assumptive(&["q", "~p | ~q"], &[], "~p");
        let contrary = negation_contrary(&set(&["p", "q", "~p | ~q"]));
        assert_eq!(
            at_aba_witness(&b, &c, &contrary).unwrap(),
            Some(parse("q").unwrap())
        );
        assert_eq!(
            at_aba_witness(&c, &b, &contrary).unwrap(),
            Some(parse("p").unwrap())
        );

        // No assumptions, no at-aba attack.
        let a = plain(&["s"], "s");
        assert_eq!(at_aba_witness(&b, &a, &contrary).unwrap(), None);
    }

    #[test]
    fn at_aba_requires_mapped_assumptions() {
        let b = assumptive(&["p"], &[], "p");
        let contrary = BTreeMap::new();
        assert!(matches!(
            at_aba_witness(&b, &b, &contrary),
            Err(AttackError::UnmappedAssumption(_))
        ));
    }

    #[test]
    fn at_aba_matching_is_structural_not_semantic() {
        // ~~~p is equivalent to ~p but does not match it structurally.
        let target = assumptive(&["p"], &[], "p");
        let contrary = negation_contrary(&set(&["p"]));
        let semantic = plain(&["~~~p"], "~~~p");
        assert_eq!(at_aba_witness(&semantic, &target, &contrary).unwrap(), None);
        let structural = plain(&["~p"], "~p");
        assert_eq!(
            at_aba_witness(&structural, &target, &contrary).unwrap(),
            Some(parse("p").unwrap())
        );
    }

    #[test]
    fn framework_over_flat_example() {
        let strict = set(&["p", "p -> q", "~q"]);
        let pool: BTreeSet<Formula> = strict
            .union(&set(&["q", "~p", "q | ~q"]))
            .cloned()
            .collect();
        let universe = build_universe(
            &strict,
            &BTreeSet::new(),
            &pool,
            &UniverseOptions::default(),
        )
        .unwrap();
        let a = universe
            .find(&set(&[]), &set(&["p", "p -> q"]), &parse("q").unwrap())
            .unwrap();
        let b = universe
            .find(&set(&[]), &set(&["~q"]), &parse("~q").unwrap())
            .unwrap();
        let c = universe
            .find(&set(&[]), &set(&["p"]), &parse("p").unwrap())
            .unwrap();
        let d = universe
            .find(&set(&[]), &set(&[]), &parse("q | ~q").unwrap())
            .unwrap();
        let e = universe
            .find(&set(&[]), &set(&["p -> q", "~q"]), &parse("~p").unwrap())
            .unwrap();

        let framework =
            build_framework(universe, [AttackRule::Ucut].into(), None).unwrap();
        let pairs = framework.attack_pairs();
        assert!(pairs.contains(&(a, e)));
        assert!(pairs.contains(&(e, a)));
        assert!(pairs.contains(&(a, b)));
        assert!(pairs.contains(&(e, c)));
        // d has an empty support and is never attacked.
        assert!(!pairs.iter().any(|(_, attacked)| *attacked == d));
    }

    #[test]
    fn framework_over_translated_example() {
        let strict = set(&["s"]);
        let assumptions = set(&["p", "q", "~p | ~q", "~p | r", "~q | r"]);
        let pool = set(&["s", "~p", "~q", "r", "~(~p | ~q)", "~(~p | r)", "~(~q | r)"]);
        let options = UniverseOptions {
            minimal_support: true,
            ..UniverseOptions::default()
        };
        let universe = build_universe(&strict, &assumptions, &pool, &options).unwrap();
        let a = universe
            .find(&set(&[]), &set(&["s"]), &parse("s").unwrap())
            .unwrap();
        let b = universe
            .find(&set(&["p", "~p | ~q"]), &set(&[]), &parse("~q").unwrap())
            .unwrap();
        let c = universe
            .find(&set(&["q", "~p | ~q"]), &set(&[]), &parse("~p").unwrap())
            .unwrap();
        let d = universe
            .find(
                &set(&["p", "q", "~p | r", "~q | r"]),
                &set(&[]),
                &parse("r").unwrap(),
            )
            .unwrap();

        let contrary = negation_contrary(&assumptions);
        let framework =
            build_framework(universe, [AttackRule::AtAba].into(), Some(contrary)).unwrap();
        let pairs = framework.attack_pairs();
        assert!(pairs.contains(&(b, c)));
        assert!(pairs.contains(&(c, b)));
        assert!(pairs.contains(&(b, d)));
        assert!(pairs.contains(&(c, d)));
        assert!(!pairs.iter().any(|(_, attacked)| *attacked == a));
    }

    #[test]
    fn empty_universe_has_no_attacks() {
        let universe = build_universe(
            &BTreeSet::new(),
            &BTreeSet::new(),
            &BTreeSet::new(),
            &UniverseOptions::default(),
        )
        .unwrap();
        let framework =
            build_framework(universe, [AttackRule::Ucut, AttackRule::Ducut].into(), None)
                .unwrap();
        assert!(framework.attacks().is_empty());
    }

    #[test]
    fn attack_serialization_matches_format() {
        let strict = set(&["p", "p -> q", "~q"]);
        let pool: BTreeSet<Formula> = strict.union(&set(&["q"])).cloned().collect();
        let universe = build_universe(
            &strict,
            &BTreeSet::new(),
            &pool,
            &UniverseOptions::default(),
        )
        .unwrap();
        let framework = build_framework(universe, [AttackRule::Ucut].into(), None).unwrap();
        let rendered: Vec<String> = framework
            .attacks()
            .iter()
            .map(|at| framework.display_attack(at))
            .collect();
        assert!(rendered
            .iter()
            .any(|line| line == "p, p -> q => q --[ucut:{~q}]--> ~q => ~q"));
    }
}
