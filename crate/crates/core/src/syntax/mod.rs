//! Formulas, antecedent structures, positions and sequents.

mod formula;
mod parse;
mod structure;

use std::fmt;

pub use formula::Formula;
pub use parse::{parse_formula, parse_sequent, parse_structure, ParseError};
pub use structure::{f_translate, occurrences, plug, Context, ContextError, MultiContext, Path, Step, Structure};

/// `antecedent => succedent`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sequent {
    pub antecedent: Structure,
    pub succedent: Formula,
}

impl Sequent {
    pub fn new(antecedent: Structure, succedent: Formula) -> Sequent {
        Sequent { antecedent, succedent }
    }

    pub fn size(&self) -> usize {
        self.antecedent.size() + self.succedent.size()
    }

    /// Largest formula complexity occurring in the sequent.
    pub fn max_complexity(&self) -> usize {
        self.antecedent
            .formulas()
            .into_iter()
            .chain(std::iter::once(&self.succedent))
            .map(Formula::complexity)
            .max()
            .unwrap_or(0)
    }
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.antecedent.is_empty() {
            write!(f, "=> {}", self.succedent)
        } else {
            write!(f, "{} => {}", self.antecedent, self.succedent)
        }
    }
}

impl fmt::Debug for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Shorthand for tests and examples; panics on malformed input.
pub fn seq(text: &str) -> Sequent {
    parse_sequent(text).unwrap_or_else(|e| panic!("{text:?}: {e}"))
}

/// Shorthand for tests and examples; panics on malformed input.
pub fn fml(text: &str) -> Formula {
    parse_formula(text).unwrap_or_else(|e| panic!("{text:?}: {e}"))
}
