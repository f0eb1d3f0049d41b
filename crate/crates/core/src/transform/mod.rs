//! Admissible rules and invertibility as derivation transformers.
//!
//! Every transformer consumes a derivation and returns a new one whose nodes
//! were all built through [`Derivation::infer_inst`], so outputs are locally
//! valid by construction; tests re-check them with [`crate::kernel::check`].

mod adjoint;
mod contract;
mod identity;
mod invert;
mod subst;
mod translate;

use crate::kernel::{Derivation, NodeError};
use crate::syntax::Sequent;

pub use adjoint::{adjoin, unadjoin, Adjunction};
pub use contract::{contract_formula, contract_structure, contract_structure_with, ContractOptions};
pub(crate) use identity::fold as fold_structure;
pub use identity::{
    admissible, and_macro, assoc1, assoc2, con_macro, derive_identity, impl_macro, mon, or_macro, structure_identity,
    Admissible, Modality,
};
pub use invert::{invert_left, invert_right, LeftKind, RightKind};
pub use subst::substitute;
pub use translate::{from_dagger, from_ddagger, to_dagger};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TransformError {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("input is not cut-free")]
    NotCutFree,
    #[error("contraction above a cut; run the elimination pipeline: {0}")]
    NeedsPipeline(String),
    /// No constructive step applies and the fallback search found nothing.
    #[error("contraction stuck on {0}")]
    Stuck(Sequent),
    #[error("internal invariant breach: {0}")]
    Internal(String),
}

impl From<NodeError> for TransformError {
    fn from(e: NodeError) -> Self {
        TransformError::Internal(format!("{}: {}", e.reason, e.detail))
    }
}

pub type Result<T> = std::result::Result<T, TransformError>;

/// Re-applies `d`'s rule and instantiation under a new conclusion and premises.
pub(crate) fn rebuild(d: &Derivation, conclusion: Sequent, premises: Vec<Derivation>) -> Result<Derivation> {
    let mut inst = d.inst.clone();
    if d.rule.needs_delta() {
        let at = inst.at.as_ref().expect("rule with :delta has :at");
        inst.delta = conclusion.antecedent.get(at).cloned();
    }
    Ok(Derivation::infer_inst(d.rule, inst, conclusion, premises)?)
}

pub(crate) fn require_cut_free(d: &Derivation) -> Result<()> {
    if d.is_cut_free() {
        Ok(())
    } else {
        Err(TransformError::NotCutFree)
    }
}
