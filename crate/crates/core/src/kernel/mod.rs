//! Rule schemas, derivation trees and the checker.

mod check;
mod derivation;
mod format;
mod rules;
mod track;

pub use check::{
    check, check_node, check_node_with, check_with, expected_premises, star_formula, Admission, NodeError, Reason,
    Violation,
};
pub use derivation::{Derivation, NodeAddr};
pub use format::{read_derivation, write_derivation, FormatError};
pub use rules::{CalculusVariant, Inst, RuleId};
pub use track::{track, track_rule, Track};

/// Axioms have height zero; otherwise one more than the highest premise.
pub fn height(d: &Derivation) -> usize {
    d.height()
}

/// No cut or cut-like rule anywhere in the tree.
pub fn is_cut_free(d: &Derivation) -> bool {
    d.is_cut_free()
}
