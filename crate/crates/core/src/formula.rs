//! The propositional language: formulas over named atoms with negation,
//! conjunction, disjunction, implication and biconditional.
//!
//! Formulas are compared structurally. The canonical ordering used for
//! sets, conjunctions and all listings is lexicographic on the canonical
//! serialization, so every collection of formulas prints the same way on
//! every run.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    Atom(String),
    Neg(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Impl(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FormulaError {
    #[error("cannot conjoin an empty set of formulas")]
    EmptyConjunction,
}

impl Formula {
    pub fn atom(name: &str) -> Formula {
        debug_assert!(is_valid_atom_name(name), "invalid atom name: {name:?}");
        Formula::Atom(name.to_owned())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(inner: Formula) -> Formula {
        Formula::Neg(Box::new(inner))
    }

    pub fn and(left: Formula, right: Formula) -> Formula {
        Formula::And(Box::new(left), Box::new(right))
    }

    pub fn or(left: Formula, right: Formula) -> Formula {
        Formula::Or(Box::new(left), Box::new(right))
    }

    pub fn implies(left: Formula, right: Formula) -> Formula {
        Formula::Impl(Box::new(left), Box::new(right))
    }

    pub fn iff(left: Formula, right: Formula) -> Formula {
        Formula::Iff(Box::new(left), Box::new(right))
    }

    /// All atom names occurring in the formula.
    pub fn atoms(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::Atom(name) => {
                out.insert(name.clone());
            }
            Formula::Neg(inner) => inner.collect_atoms(out),
            Formula::And(l, r)
            | Formula::Or(l, r)
            | Formula::Impl(l, r)
            | Formula::Iff(l, r) => {
                l.collect_atoms(out);
                r.collect_atoms(out);
            }
        }
    }

    /// Binding strength, used by the printer to insert minimal parentheses.
    fn precedence(&self) -> u8 {
        match self {
            Formula::Iff(..) => 1,
            Formula::Impl(..) => 2,
            Formula::Or(..) => 3,
            Formula::And(..) => 4,
            Formula::Neg(..) => 5,
            Formula::Atom(..) => 6,
        }
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, required: u8) -> fmt::Result {
        if self.precedence() < required {
            write!(f, "(")?;
            self.fmt_prec(f, 1)?;
            return write!(f, ")");
        }
        match self {
            Formula::Atom(name) => write!(f, "{name}"),
            Formula::Neg(inner) => {
                write!(f, "~")?;
                inner.fmt_prec(f, 5)
            }
            // & and | associate to the left, -> and <-> to the right.
            Formula::And(l, r) => {
                l.fmt_prec(f, 4)?;
                write!(f, " & ")?;
                r.fmt_prec(f, 5)
            }
            Formula::Or(l, r) => {
                l.fmt_prec(f, 3)?;
                write!(f, " | ")?;
                r.fmt_prec(f, 4)
            }
            Formula::Impl(l, r) => {
                l.fmt_prec(f, 3)?;
                write!(f, " -> ")?;
                r.fmt_prec(f, 2)
            }
            Formula::Iff(l, r) => {
                l.fmt_prec(f, 2)?;
                write!(f, " <-> ")?;
                r.fmt_prec(f, 1)
            }
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 1)
    }
}

impl PartialOrd for Formula {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Formula {
    /// Lexicographic on the canonical serialization. Serialization is
    /// injective (it round-trips through the parser), so this is
    /// consistent with structural equality.
    fn cmp(&self, other: &Self) -> Ordering {
        if self == other {
            return Ordering::Equal;
        }
        self.to_string().cmp(&other.to_string())
    }
}

pub fn is_valid_atom_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_lowercase() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_lowercase() || c.is_ascii_digit() || c == '_')
}

/// Atoms of a whole collection of formulas.
pub fn atoms_of<'a, I>(formulas: I) -> BTreeSet<String>
where
    I: IntoIterator<Item = &'a Formula>,
{
    let mut out = BTreeSet::new();
    for f in formulas {
        f.collect_atoms(&mut out);
    }
    out
}

/// Right-nested conjunction of a non-empty set, in canonical order.
pub fn conjoin(formulas: &BTreeSet<Formula>) -> Result<Formula, FormulaError> {
    let mut iter = formulas.iter().rev().cloned();
    let mut acc = iter.next().ok_or(FormulaError::EmptyConjunction)?;
    for f in iter {
        acc = Formula::and(f, acc);
    }
    Ok(acc)
}
