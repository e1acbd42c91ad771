//! The classical core logic: truth-table evaluation over the joint atom
//! set decides entailment, validity and consistency. Desk-scale inputs
//! keep this exhaustive procedure cheap, and it doubles as the oracle the
//! rest of the crate is checked against.

use std::collections::{BTreeMap, BTreeSet};

use crate::formula::{atoms_of, conjoin, Formula};

/// A total assignment of truth values to a finite set of atoms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Valuation {
    assignment: BTreeMap<String, bool>,
}

impl Valuation {
    pub fn new(assignment: BTreeMap<String, bool>) -> Self {
        Valuation { assignment }
    }

    pub fn value_of(&self, atom: &str) -> Option<bool> {
        self.assignment.get(atom).copied()
    }

    /// Evaluate a formula; atoms outside the domain default to false.
    pub fn satisfies(&self, formula: &Formula) -> bool {
        match formula {
            Formula::Atom(name) => self.value_of(name).unwrap_or(false),
            Formula::Neg(inner) => !self.satisfies(inner),
            Formula::And(l, r) => self.satisfies(l) && self.satisfies(r),
            Formula::Or(l, r) => self.satisfies(l) || self.satisfies(r),
            Formula::Impl(l, r) => !self.satisfies(l) || self.satisfies(r),
            Formula::Iff(l, r) => self.satisfies(l) == self.satisfies(r),
        }
    }
}

/// Iterate over every valuation of `atoms`, applying `visit` until it
/// returns false. Returns true iff `visit` accepted every valuation.
fn for_all_valuations<F>(atoms: &BTreeSet<String>, mut visit: F) -> bool
where
    F: FnMut(&Valuation) -> bool,
{
    let names: Vec<&String> = atoms.iter().collect();
    let rows: u64 = 1 << names.len();
    for row in 0..rows {
        let assignment = names
            .iter()
            .enumerate()
            .map(|(i, name)| ((*name).clone(), row >> i & 1 == 1))
            .collect();
        if !visit(&Valuation::new(assignment)) {
            return false;
        }
    }
    true
}

/// Classical entailment: every valuation satisfying all premises
/// satisfies the goal.
pub fn entails<'a, I>(premises: I, goal: &Formula) -> bool
where
    I: IntoIterator<Item = &'a Formula>,
{
    let premises: Vec<&Formula> = premises.into_iter().collect();
    let atoms = atoms_of(premises.iter().copied().chain(std::iter::once(goal)));
    for_all_valuations(&atoms, |v| {
        !premises.iter().all(|p| v.satisfies(p)) || v.satisfies(goal)
    })
}

pub fn is_valid(formula: &Formula) -> bool {
    entails(std::iter::empty(), formula)
}

/// Satisfiability route: some valuation makes every member true.
pub fn is_consistent<'a, I>(formulas: I) -> bool
where
    I: IntoIterator<Item = &'a Formula>,
{
    let formulas: Vec<&Formula> = formulas.into_iter().collect();
    if formulas.is_empty() {
        return true;
    }
    let atoms = atoms_of(formulas.iter().copied());
    !for_all_valuations(&atoms, |v| !formulas.iter().all(|f| v.satisfies(f)))
}

/// Refutation route: no finite subset has a valid negated conjunction.
/// Exponential in the input size; kept as the independent cross-check of
/// [`is_consistent`].
pub fn is_consistent_by_refutation(formulas: &BTreeSet<Formula>) -> bool {
    let elems: Vec<&Formula> = formulas.iter().collect();
    for mask in 1u64..(1 << elems.len()) {
        let subset: BTreeSet<Formula> = elems
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, f)| (*f).clone())
            .collect();
        let conj = conjoin(&subset).expect("subset is nonempty");
        if is_valid(&Formula::neg(conj)) {
            return false;
        }
    }
    true
}

/// An atom name not used by any formula in `taken`.
pub fn fresh_atom(taken: &BTreeSet<String>) -> String {
    for i in 0.. {
        let candidate = format!("x{i}");
        if !taken.contains(&candidate) {
            return candidate;
        }
    }
    unreachable!()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse;

    fn formulas(texts: &[&str]) -> BTreeSet<Formula> {
        texts.iter().map(|t| parse(t).unwrap()).collect()
    }

    #[test]
    fn modus_ponens_entails() {
        let set = formulas(&["p", "p -> q"]);
        assert!(entails(&set, &parse("q").unwrap()));
    }

    #[test]
    fn excluded_middle_from_nothing() {
        assert!(entails(std::iter::empty(), &parse("q | ~q").unwrap()));
    }

    #[test]
    fn independent_atoms_do_not_entail() {
        let set = formulas(&["p"]);
        assert!(!entails(&set, &parse("q").unwrap()));
    }

    #[test]
    fn validity_examples() {
        assert!(is_valid(&parse("q <-> ~~q").unwrap()));
        assert!(!is_valid(&parse("p <-> ~q").unwrap()));
        assert!(is_valid(&parse("~(p & ~p)").unwrap()));
    }

    #[test]
    fn consistency_examples() {
        assert!(!is_consistent(&formulas(&["p", "p -> q", "~q"])));
        assert!(is_consistent(&formulas(&["p", "p -> q"])));
        assert!(is_consistent(&BTreeSet::new()));
    }

    #[test]
    fn both_consistency_routes_agree() {
        let samples = [
            formulas(&["p", "p -> q", "~q"]),
            formulas(&["p", "p -> q"]),
            formulas(&["p", "~p"]),
            formulas(&["p | q", "~p", "~q"]),
            formulas(&["p & ~p"]),
            BTreeSet::new(),
        ];
        for set in &samples {
            assert_eq!(
                is_consistent(set),
                is_consistent_by_refutation(set),
                "routes disagree on {set:?}"
            );
        }
    }

    #[test]
    fn inconsistency_matches_entailing_fresh_contradiction() {
        let samples = [
            formulas(&["p", "p -> q", "~q"]),
            formulas(&["p", "p -> q"]),
            formulas(&["q | r", "~q"]),
        ];
        for set in &samples {
            let taken = crate::formula::atoms_of(set.iter());
            let fresh = fresh_atom(&taken);
            let contradiction = Formula::and(
                Formula::atom(&fresh),
                Formula::neg(Formula::atom(&fresh)),
            );
            assert_eq!(!is_consistent(set), entails(set, &contradiction));
        }
    }

    #[test]
    fn fresh_atom_avoids_taken_names() {
        let taken: BTreeSet<String> = ["x0".to_owned(), "x1".to_owned()].into();
        assert_eq!(fresh_atom(&taken), "x2");
    }
}
