//! Assumptive arguments: a set of defeasible assumptions, a strict
//! support and a single conclusion, written `A |~ G => c`. Plain
//! arguments are the special case with no assumptions.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::formula::Formula;
use crate::logic;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArgumentError {
    #[error("premises do not entail the conclusion: {0}")]
    NotDerivable(String),
    #[error("cut formula {cut} is not the conclusion of the first argument ({conclusion})")]
    CutConclusionMismatch { cut: String, conclusion: String },
    #[error("cut formula {0} occurs in neither the support nor the assumptions of the second argument")]
    CutFormulaAbsent(String),
}

/// An argument `A |~ G => c` whose combined premises classically entail
/// the conclusion. Assumptions and support are kept in canonical formula
/// order; equality is field-wise.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AssumptiveArgument {
    assumptions: BTreeSet<Formula>,
    support: BTreeSet<Formula>,
    conclusion: Formula,
}

impl AssumptiveArgument {
    /// Build an argument, checking that `assumptions ∪ support` entails
    /// the conclusion in the classical core logic.
    pub fn new(
        assumptions: BTreeSet<Formula>,
        support: BTreeSet<Formula>,
        conclusion: Formula,
    ) -> Result<Self, ArgumentError> {
        if !logic::entails(assumptions.iter().chain(support.iter()), &conclusion) {
            return Err(ArgumentError::NotDerivable(format!(
                "{}",
                Unchecked(&assumptions, &support, &conclusion)
            )));
        }
        Ok(AssumptiveArgument {
            assumptions,
            support,
            conclusion,
        })
    }

    /// A plain argument: no assumptions.
    pub fn plain(support: BTreeSet<Formula>, conclusion: Formula) -> Result<Self, ArgumentError> {
        Self::new(BTreeSet::new(), support, conclusion)
    }

    /// For universes generated under a non-classical derivability
    /// relation; the builder has already verified the derivation.
    pub(crate) fn new_unchecked(
        assumptions: BTreeSet<Formula>,
        support: BTreeSet<Formula>,
        conclusion: Formula,
    ) -> Self {
        AssumptiveArgument {
            assumptions,
            support,
            conclusion,
        }
    }

    pub fn assumptions(&self) -> &BTreeSet<Formula> {
        &self.assumptions
    }

    pub fn support(&self) -> &BTreeSet<Formula> {
        &self.support
    }

    pub fn conclusion(&self) -> &Formula {
        &self.conclusion
    }

    /// Assumptions and support together.
    pub fn premises(&self) -> impl Iterator<Item = &Formula> {
        self.assumptions.iter().chain(self.support.iter())
    }

    pub fn is_plain(&self) -> bool {
        self.assumptions.is_empty()
    }

    /// Sub-argument test: assumptions and support are both included in
    /// the other argument's.
    pub fn is_subargument_of(&self, other: &AssumptiveArgument) -> bool {
        self.assumptions.is_subset(&other.assumptions) && self.support.is_subset(&other.support)
    }
}

struct Unchecked<'a>(&'a BTreeSet<Formula>, &'a BTreeSet<Formula>, &'a Formula);

impl fmt::Display for Unchecked<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_argument(f, self.0, self.1, self.2)
    }
}

fn fmt_argument(
    f: &mut fmt::Formatter<'_>,
    assumptions: &BTreeSet<Formula>,
    support: &BTreeSet<Formula>,
    conclusion: &Formula,
) -> fmt::Result {
    fn write_set(f: &mut fmt::Formatter<'_>, set: &BTreeSet<Formula>) -> fmt::Result {
        for (i, formula) in set.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{formula}")?;
        }
        Ok(())
    }
    if !assumptions.is_empty() {
        write_set(f, assumptions)?;
        write!(f, " |~ ")?;
    }
    if !support.is_empty() {
        write_set(f, support)?;
        write!(f, " ")?;
    }
    write!(f, "=> {conclusion}")
}

impl fmt::Display for AssumptiveArgument {
    /// Canonical serialization: `A1, A2 |~ G1, G2 => c`, with empty
    /// segments omitted.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_argument(f, &self.assumptions, &self.support, &self.conclusion)
    }
}

/// Conclusions of a set of arguments.
pub fn conclusions_of<'a, I>(arguments: I) -> BTreeSet<Formula>
where
    I: IntoIterator<Item = &'a AssumptiveArgument>,
{
    arguments
        .into_iter()
        .map(|a| a.conclusion().clone())
        .collect()
}

/// Union of the supports of a set of arguments.
pub fn supports_of<'a, I>(arguments: I) -> BTreeSet<Formula>
where
    I: IntoIterator<Item = &'a AssumptiveArgument>,
{
    arguments
        .into_iter()
        .flat_map(|a| a.support().iter().cloned())
        .collect()
}

/// Union of the assumptions of a set of arguments.
pub fn assumptions_of<'a, I>(arguments: I) -> BTreeSet<Formula>
where
    I: IntoIterator<Item = &'a AssumptiveArgument>,
{
    arguments
        .into_iter()
        .flat_map(|a| a.assumptions().iter().cloned())
        .collect()
}

/// Cut the conclusion of `left` against an occurrence of the same
/// formula among the premises of `right`. When the cut formula sits in
/// `right`'s support it is removed there; otherwise it is removed from
/// `right`'s assumptions. The combined argument keeps `right`'s
/// conclusion and is re-checked for derivability.
pub fn cut(
    left: &AssumptiveArgument,
    right: &AssumptiveArgument,
    cut_formula: &Formula,
) -> Result<AssumptiveArgument, ArgumentError> {
    if left.conclusion() != cut_formula {
        return Err(ArgumentError::CutConclusionMismatch {
            cut: cut_formula.to_string(),
            conclusion: left.conclusion().to_string(),
        });
    }
    let in_support = right.support().contains(cut_formula);
    let in_assumptions = right.assumptions().contains(cut_formula);
    if !in_support && !in_assumptions {
        return Err(ArgumentError::CutFormulaAbsent(cut_formula.to_string()));
    }

    let mut right_assumptions = right.assumptions().clone();
    let mut right_support = right.support().clone();
    if in_support {
        right_support.remove(cut_formula);
    } else {
        right_assumptions.remove(cut_formula);
    }
    let assumptions = left
        .assumptions()
        .union(&right_assumptions)
        .cloned()
        .collect();
    let support = left.support().union(&right_support).cloned().collect();
    AssumptiveArgument::new(assumptions, support, right.conclusion().clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse;

    fn set(texts: &[&str]) -> BTreeSet<Formula> {
        texts.iter().map(|t| parse(t).unwrap()).collect()
    }

    fn plain(support: &[&str], conclusion: &str) -> AssumptiveArgument {
        AssumptiveArgument::plain(set(support), parse(conclusion).unwrap()).unwrap()
    }

    fn assumptive(ass: &[&str], supp: &[&str], conclusion: &str) -> AssumptiveArgument {
        AssumptiveArgument::new(set(ass), set(supp), parse(conclusion).unwrap()).unwrap()
    }

    #[test]
    fn construction_checks_derivability() {
        assert!(AssumptiveArgument::plain(set(&["p"]), parse("q").unwrap()).is_err());
        assert!(AssumptiveArgument::plain(set(&["p", "p -> q"]), parse("q").unwrap()).is_ok());
    }

    #[test]
    fn serialization_matches_notation() {
        assert_eq!(plain(&["p", "p -> q"], "q").to_string(), "p, p -> q => q");
        assert_eq!(plain(&[], "q | ~q").to_string(), "=> q | ~q");
        assert_eq!(
            assumptive(&["p", "~p | ~q"], &[], "~q").to_string(),
            "p, ~p | ~q |~ => ~q"
        );
        assert_eq!(
            assumptive(&["p"], &["p -> q"], "q").to_string(),
            "p |~ p -> q => q"
        );
    }

    #[test]
    fn subargument_is_premise_inclusion() {
        let c = plain(&["p"], "p");
        let a = plain(&["p", "p -> q"], "q");
        assert!(c.is_subargument_of(&a));
        let b = plain(&["~q"], "~q");
        assert!(!b.is_subargument_of(&c));
        assert!(a.is_subargument_of(&a));
    }

    #[test]
    fn accessors_and_lifted_sets() {
        let b = assumptive(&["p", "~p | ~q"], &[], "~q");
        assert_eq!(*b.assumptions(), set(&["p", "~p | ~q"]));
        let a = plain(&["s"], "s");
        assert_eq!(*a.support(), set(&["s"]));
        assert_eq!(assumptions_of([&a, &b]), set(&["p", "~p | ~q"]));
        assert_eq!(conclusions_of([&a, &b]), set(&["s", "~q"]));
        assert_eq!(supports_of([&a, &b]), set(&["s"]));
    }

    #[test]
    fn cut_on_support_with_axiom_is_idempotent() {
        let a1 = plain(&["p"], "p");
        let a2 = plain(&["p", "p -> q"], "q");
        let result = cut(&a1, &a2, &parse("p").unwrap()).unwrap();
        assert_eq!(result, a2);
    }

    #[test]
    fn cut_on_assumptions_moves_premises() {
        let a1 = assumptive(&["p", "~p | ~q"], &[], "~q");
        let a2 = assumptive(&["~q"], &["s"], "~q & s");
        let result = cut(&a1, &a2, &parse("~q").unwrap()).unwrap();
        assert_eq!(*result.assumptions(), set(&["p", "~p | ~q"]));
        assert_eq!(*result.support(), set(&["s"]));
        assert_eq!(*result.conclusion(), parse("~q & s").unwrap());
        // The result still satisfies the derivability invariant.
        assert!(crate::logic::entails(result.premises(), result.conclusion()));
    }

    #[test]
    fn cut_with_wrong_formula_is_rejected() {
        let a1 = plain(&["p"], "p");
        let a2 = plain(&["~q"], "~q");
        assert!(matches!(
            cut(&a1, &a2, &parse("q").unwrap()),
            Err(ArgumentError::CutConclusionMismatch { .. })
        ));
        assert!(matches!(
            cut(&a1, &a2, &parse("p").unwrap()),
            Err(ArgumentError::CutFormulaAbsent(_))
        ));
    }
}
