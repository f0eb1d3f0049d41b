//! The adjunction rules ◇α→β / α→■β and ◆α→β / α→□β, in both directions,
//! as transformers on cut-free derivations.
//!
//! Inputs are either `=> a -> b` or `a => b`; the output has the same form.

use super::{invert_left, invert_right, LeftKind, Result, RightKind, TransformError};
use crate::kernel::{Derivation, RuleId};
use crate::syntax::{Formula, Path, Sequent, Structure};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Adjunction {
    /// ◇ on the left, ■ on the right.
    DiaBBox,
    /// ◆ on the left, □ on the right.
    BDiaBox,
}

impl Adjunction {
    fn left(self) -> LeftKind {
        match self {
            Adjunction::DiaBBox => LeftKind::Dia,
            Adjunction::BDiaBox => LeftKind::BDia,
        }
    }

    fn right(self) -> RightKind {
        match self {
            Adjunction::DiaBBox => RightKind::BBox,
            Adjunction::BDiaBox => RightKind::Box,
        }
    }
}

/// Splits off an outer `=> a -> b` into `a => b`; reports whether it did.
fn open(d: &Derivation) -> Result<(Derivation, bool)> {
    if d.conclusion.antecedent.is_empty() {
        if !matches!(d.conclusion.succedent, Formula::Impl(..)) {
            return Err(TransformError::ShapeMismatch(format!("expected `=> a -> b`, got {}", d.conclusion)));
        }
        return Ok((invert_right(d, RightKind::Impl)?, true));
    }
    Ok((d.clone(), false))
}

fn close(d: Derivation, wrap: bool) -> Result<Derivation> {
    if !wrap {
        return Ok(d);
    }
    let Structure::Leaf(a) = &d.conclusion.antecedent else {
        return Err(TransformError::Internal(format!("cannot close {}", d.conclusion)));
    };
    let concl = Sequent::new(Structure::Empty, Formula::impl_(a.clone(), d.conclusion.succedent.clone()));
    Ok(Derivation::infer(RuleId::ImplR, None, concl, vec![d])?)
}

/// `◇α => β` ⊢ `α => ■β` (resp. `◆α => β` ⊢ `α => □β`).
pub fn adjoin(d: &Derivation, adj: Adjunction) -> Result<Derivation> {
    let (d, wrap) = open(d)?;
    let a = match (&d.conclusion.antecedent, adj) {
        (Structure::Leaf(Formula::Dia(a)), Adjunction::DiaBBox)
        | (Structure::Leaf(Formula::BDia(a)), Adjunction::BDiaBox) => (**a).clone(),
        _ => return Err(TransformError::ShapeMismatch(format!("{adj:?} does not apply to {}", d.conclusion))),
    };
    let opened = invert_left(&d, &Path::root(), adj.left())?;
    let (rule, boxed) = match adj {
        Adjunction::DiaBBox => (RuleId::BBoxR, Formula::bbox(d.conclusion.succedent.clone())),
        Adjunction::BDiaBox => (RuleId::BoxR, Formula::boxed(d.conclusion.succedent.clone())),
    };
    let out = Derivation::infer(rule, None, Sequent::new(Structure::leaf(a), boxed), vec![opened])?;
    close(out, wrap)
}

/// `α => ■β` ⊢ `◇α => β` (resp. `α => □β` ⊢ `◆α => β`).
pub fn unadjoin(d: &Derivation, adj: Adjunction) -> Result<Derivation> {
    let (d, wrap) = open(d)?;
    let (a, b) = match (&d.conclusion.antecedent, &d.conclusion.succedent, adj) {
        (Structure::Leaf(a), Formula::BBox(b), Adjunction::DiaBBox)
        | (Structure::Leaf(a), Formula::Box(b), Adjunction::BDiaBox) => (a.clone(), (**b).clone()),
        _ => return Err(TransformError::ShapeMismatch(format!("{adj:?} does not apply to {}", d.conclusion))),
    };
    let opened = invert_right(&d, adj.right())?;
    let (rule, ante) = match adj {
        Adjunction::DiaBBox => (RuleId::DiaL, Formula::dia(a)),
        Adjunction::BDiaBox => (RuleId::BDiaL, Formula::bdia(a)),
    };
    let out = Derivation::infer(rule, Some(Path::root()), Sequent::new(Structure::leaf(ante), b), vec![opened])?;
    close(out, wrap)
}
