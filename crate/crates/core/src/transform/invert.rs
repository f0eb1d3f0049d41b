//! Height-preserving inversion of the left rules for ∧, ∨, ◇, ◆ and of the
//! right rules for →, □, ■ on cut-free derivations.

use super::{rebuild, require_cut_free, substitute, Result, TransformError};
use crate::kernel::{Derivation, RuleId};
use crate::syntax::{Formula, Path, Sequent, Step, Structure};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum LeftKind {
    And,
    /// Keep the left (`false`) or right (`true`) disjunct.
    Or(bool),
    Dia,
    BDia,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RightKind {
    Impl,
    Box,
    BBox,
}

impl LeftKind {
    fn rule(self) -> RuleId {
        match self {
            LeftKind::And => RuleId::AndL,
            LeftKind::Or(_) => RuleId::OrL,
            LeftKind::Dia => RuleId::DiaL,
            LeftKind::BDia => RuleId::BDiaL,
        }
    }

    /// The structure replacing the principal formula, if it has the right shape.
    pub fn unfold(self, f: &Formula) -> Option<Structure> {
        let leaf = |a: &Formula| Structure::leaf(a.clone());
        match (self, f) {
            (LeftKind::And, Formula::And(a, b)) => Some(Structure::comma(leaf(a), leaf(b))),
            (LeftKind::Or(false), Formula::Or(a, _)) => Some(leaf(a)),
            (LeftKind::Or(true), Formula::Or(_, b)) => Some(leaf(b)),
            (LeftKind::Dia, Formula::Dia(a)) => Some(Structure::circ(leaf(a))),
            (LeftKind::BDia, Formula::BDia(a)) => Some(Structure::bullet(leaf(a))),
            _ => None,
        }
    }

    /// The kind whose rule has `f` as principal formula, if invertible.
    pub fn of(f: &Formula) -> Option<LeftKind> {
        match f {
            Formula::And(..) => Some(LeftKind::And),
            Formula::Or(..) => Some(LeftKind::Or(false)),
            Formula::Dia(_) => Some(LeftKind::Dia),
            Formula::BDia(_) => Some(LeftKind::BDia),
            _ => None,
        }
    }
}

/// From `Γ[α] => β` derives the premise-shaped sequent of α's left rule, with
/// no increase in height.
pub fn invert_left(d: &Derivation, at: &Path, kind: LeftKind) -> Result<Derivation> {
    require_cut_free(d)?;
    let f = match d.conclusion.antecedent.get(at) {
        Some(Structure::Leaf(f)) => f,
        _ => return Err(TransformError::ShapeMismatch(format!("no formula at {at} in {}", d.conclusion))),
    };
    let with = kind.unfold(f).ok_or_else(|| TransformError::ShapeMismatch(format!("{f} does not match {kind:?}")))?;
    invert_left_unchecked(d, at, kind, &with)
}

pub(crate) fn invert_left_unchecked(d: &Derivation, at: &Path, kind: LeftKind, with: &Structure) -> Result<Derivation> {
    let rule = kind.rule();
    let mut principal = |node: &Derivation, holes: &[Path]| -> Result<Derivation> {
        let hole = &holes[0];
        if holes.len() == 1 && node.rule == rule && node.inst.at.as_ref() == Some(hole) {
            let i = usize::from(kind == LeftKind::Or(true));
            return Ok(node.premises[i].clone());
        }
        Err(TransformError::Internal(format!(
            "{} at {hole} is principal in {} ({}), expected {rule}",
            node.conclusion.antecedent.get(hole).map(|s| s.to_string()).unwrap_or_default(),
            node.rule,
            node.conclusion
        )))
    };
    substitute(d, std::slice::from_ref(at), with, &mut principal)
}

fn right_target(concl: &Sequent, kind: RightKind) -> Result<(Sequent, Vec<Step>)> {
    let gamma = &concl.antecedent;
    match (kind, &concl.succedent) {
        (RightKind::Impl, Formula::Impl(a, b)) => {
            let lead = Structure::leaf((**a).clone());
            if gamma.is_empty() {
                Ok((Sequent::new(lead, (**b).clone()), vec![]))
            } else {
                Ok((Sequent::new(Structure::comma(lead, gamma.clone()), (**b).clone()), vec![Step::R]))
            }
        }
        (RightKind::Box, Formula::Box(b)) if !gamma.is_empty() => {
            Ok((Sequent::new(Structure::bullet(gamma.clone()), (**b).clone()), vec![Step::U]))
        }
        (RightKind::BBox, Formula::BBox(b)) if !gamma.is_empty() => {
            Ok((Sequent::new(Structure::circ(gamma.clone()), (**b).clone()), vec![Step::U]))
        }
        _ => Err(TransformError::ShapeMismatch(format!("{concl} does not match {kind:?}"))),
    }
}

/// From `Γ => α1 -> α2`, `Γ => □α`, `Γ => ■α` derives `α1, Γ => α2`, `•Γ => α`,
/// `∘Γ => α` respectively, with no increase in height.
pub fn invert_right(d: &Derivation, kind: RightKind) -> Result<Derivation> {
    require_cut_free(d)?;
    right_target(&d.conclusion, kind)?;
    invert_right_rec(d, kind)
}

fn invert_right_rec(d: &Derivation, kind: RightKind) -> Result<Derivation> {
    use RuleId::*;
    let (target, prefix) = right_target(&d.conclusion, kind)?;
    let own = match kind {
        RightKind::Impl => ImplR,
        RightKind::Box => BoxR,
        RightKind::BBox => BBoxR,
    };
    if d.rule == own {
        return Ok(d.premises[0].clone());
    }
    if d.rule.is_right_rule() || d.rule.is_axiom() {
        return Err(TransformError::Internal(format!("{} cannot conclude {}", d.rule, d.conclusion)));
    }
    let at = d.inst.at.as_ref().expect("left and structural rules carry :at");
    let mut inst = d.inst.clone();
    inst.at = Some(at.prefixed(&prefix));
    if d.rule.discards_succedent() {
        return rebuild_with(d.rule, inst, target, d.premises.clone());
    }
    let keeps = |i: usize| !(i == 0 && matches!(d.rule, ImplL | Cut | CutStar));
    let premises = d
        .premises
        .iter()
        .enumerate()
        .map(|(i, p)| if keeps(i) { invert_right_rec(p, kind) } else { Ok(p.clone()) })
        .collect::<Result<Vec<_>>>()?;
    rebuild_with(d.rule, inst, target, premises)
}

fn rebuild_with(
    rule: RuleId,
    inst: crate::kernel::Inst,
    conclusion: Sequent,
    premises: Vec<Derivation>,
) -> Result<Derivation> {
    let shell = Derivation::node(rule, inst, conclusion.clone(), vec![]);
    rebuild(&shell, conclusion, premises)
}
