//! Identity expansion and the admissible macro rules (∧), (∨), (→), (Mon),
//! (As1), (As2) and (Con), each built from primitive rules only.

use super::{contract_structure, Result, TransformError};
use crate::kernel::{CalculusVariant, Derivation, Inst, RuleId};
use crate::syntax::{f_translate, Formula, Path, Sequent, Step, Structure};

fn infer(rule: RuleId, at: Option<Path>, concl: Sequent, premises: Vec<Derivation>) -> Result<Derivation> {
    Ok(Derivation::infer(rule, at, concl, premises)?)
}

fn formula_sides(d: &Derivation, what: &str) -> Result<(Formula, Formula)> {
    match &d.conclusion.antecedent {
        Structure::Leaf(a) => Ok((a.clone(), d.conclusion.succedent.clone())),
        _ => Err(TransformError::ShapeMismatch(format!("{what} needs `a => b`, got {}", d.conclusion))),
    }
}

/// `α => α` with atomic identities only, by recursion on α.
pub fn derive_identity(f: &Formula) -> Derivation {
    let id = |g: &Formula| derive_identity(g);
    let out = match f {
        Formula::Var(_) | Formula::Top | Formula::Bot => Ok(Derivation::id_atom(f.clone())),
        Formula::And(a, b) => and_macro(&id(a), &id(b)),
        Formula::Or(a, b) => or_macro(&id(a), &id(b)),
        Formula::Impl(a, b) => impl_macro(&id(a), &id(b)),
        Formula::Dia(a) => mon(Modality::Dia, &id(a)),
        Formula::BDia(a) => mon(Modality::BDia, &id(a)),
        Formula::Box(a) => mon(Modality::Box, &id(a)),
        Formula::BBox(a) => mon(Modality::BBox, &id(a)),
    };
    out.expect("identity macros apply to identities")
}

/// `α => α` in the given calculus: a single (Id) in the base calculus.
pub fn identity_in(f: &Formula, variant: CalculusVariant) -> Derivation {
    match variant {
        CalculusVariant::Base => Derivation::axiom(RuleId::Id, f.clone()),
        _ => derive_identity(f),
    }
}

/// `Δ => f(Δ)` for a non-empty structure, by right rules and weakening.
pub fn structure_identity(s: &Structure, variant: CalculusVariant) -> Result<Derivation> {
    let concl = Sequent::new(s.clone(), f_translate(s));
    match s {
        Structure::Empty => Err(TransformError::ShapeMismatch("empty structure".into())),
        Structure::Leaf(a) => Ok(identity_in(a, variant)),
        Structure::Comma(a, b) => {
            let left = structure_identity(a, variant)?;
            let right = structure_identity(b, variant)?;
            let wl = infer(
                RuleId::Wk1,
                Some(Path::root()),
                Sequent::new(s.clone(), left.conclusion.succedent.clone()),
                vec![left],
            )?;
            let wr = infer(
                RuleId::Wk2,
                Some(Path::root()),
                Sequent::new(s.clone(), right.conclusion.succedent.clone()),
                vec![right],
            )?;
            infer(RuleId::AndR, None, concl, vec![wl, wr])
        }
        Structure::Circ(a) => infer(RuleId::DiaR, None, concl, vec![structure_identity(a, variant)?]),
        Structure::Bullet(a) => infer(RuleId::BDiaR, None, concl, vec![structure_identity(a, variant)?]),
    }
}

/// `α1 => β1`, `α2 => β2` ⊢ `α1 & α2 => β1 & β2`.
pub fn and_macro(d1: &Derivation, d2: &Derivation) -> Result<Derivation> {
    let (a1, b1) = formula_sides(d1, "(∧)")?;
    let (a2, b2) = formula_sides(d2, "(∧)")?;
    let pair = Structure::comma(Structure::leaf(a1.clone()), Structure::leaf(a2.clone()));
    let root = Some(Path::root());
    let l = infer(RuleId::Wk1, root.clone(), Sequent::new(pair.clone(), b1.clone()), vec![d1.clone()])?;
    let r = infer(RuleId::Wk2, root.clone(), Sequent::new(pair.clone(), b2.clone()), vec![d2.clone()])?;
    let both = infer(RuleId::AndR, None, Sequent::new(pair, Formula::and(b1.clone(), b2.clone())), vec![l, r])?;
    infer(RuleId::AndL, root, Sequent::new(Structure::leaf(Formula::and(a1, a2)), Formula::and(b1, b2)), vec![both])
}

/// `α1 => β1`, `α2 => β2` ⊢ `α1 | α2 => β1 | β2`.
pub fn or_macro(d1: &Derivation, d2: &Derivation) -> Result<Derivation> {
    let (a1, b1) = formula_sides(d1, "(∨)")?;
    let (a2, b2) = formula_sides(d2, "(∨)")?;
    let goal = Formula::or(b1, b2);
    let l = infer(RuleId::OrR1, None, Sequent::new(Structure::leaf(a1.clone()), goal.clone()), vec![d1.clone()])?;
    let r = infer(RuleId::OrR2, None, Sequent::new(Structure::leaf(a2.clone()), goal.clone()), vec![d2.clone()])?;
    infer(RuleId::OrL, Some(Path::root()), Sequent::new(Structure::leaf(Formula::or(a1, a2)), goal), vec![l, r])
}

/// `α2 => α1`, `β1 => β2` ⊢ `α1 -> β1 => α2 -> β2`; on identities this is (→).
pub fn impl_macro(d1: &Derivation, d2: &Derivation) -> Result<Derivation> {
    let (a2, a1) = formula_sides(d1, "(→)")?;
    let (b1, b2) = formula_sides(d2, "(→)")?;
    let imp = Formula::impl_(a1, b1);
    let inner = infer(
        RuleId::ImplL,
        Some(Path::root()),
        Sequent::new(Structure::comma(Structure::leaf(a2.clone()), Structure::leaf(imp.clone())), b2.clone()),
        vec![d1.clone(), d2.clone()],
    )?;
    infer(RuleId::ImplR, None, Sequent::new(Structure::leaf(imp), Formula::impl_(a2, b2)), vec![inner])
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Modality {
    Dia,
    Box,
    BDia,
    BBox,
}

impl Modality {
    pub fn apply(self, f: Formula) -> Formula {
        match self {
            Modality::Dia => Formula::dia(f),
            Modality::Box => Formula::boxed(f),
            Modality::BDia => Formula::bdia(f),
            Modality::BBox => Formula::bbox(f),
        }
    }
}

/// `α => β` ⊢ `♭α => ♭β`.
pub fn mon(m: Modality, d: &Derivation) -> Result<Derivation> {
    let (a, b) = formula_sides(d, "(Mon)")?;
    let (ma, mb) = (m.apply(a.clone()), m.apply(b.clone()));
    let root = Some(Path::root());
    let goal = Sequent::new(Structure::leaf(ma.clone()), mb.clone());
    match m {
        Modality::Dia | Modality::BDia => {
            let (wrap, right, left): (fn(Structure) -> Structure, _, _) = if m == Modality::Dia {
                (Structure::circ, RuleId::DiaR, RuleId::DiaL)
            } else {
                (Structure::bullet, RuleId::BDiaR, RuleId::BDiaL)
            };
            let r = infer(right, None, Sequent::new(wrap(Structure::leaf(a)), mb), vec![d.clone()])?;
            infer(left, root, goal, vec![r])
        }
        Modality::Box | Modality::BBox => {
            let (wrap, right, left): (fn(Structure) -> Structure, _, _) = if m == Modality::Box {
                (Structure::bullet, RuleId::BoxR, RuleId::BoxL)
            } else {
                (Structure::circ, RuleId::BBoxR, RuleId::BBoxL)
            };
            let l = infer(left, root, Sequent::new(wrap(Structure::leaf(ma)), b), vec![d.clone()])?;
            infer(right, None, goal, vec![l])
        }
    }
}

/// Turns the structure at `at` into its formula translation with left rules.
pub(crate) fn fold(d: &Derivation, at: &Path) -> Result<Derivation> {
    let ante = &d.conclusion.antecedent;
    let s = ante
        .get(at)
        .ok_or_else(|| TransformError::ShapeMismatch(format!("no position {at} in {}", d.conclusion)))?
        .clone();
    let (rule, inner) = match &s {
        Structure::Empty | Structure::Leaf(_) => return Ok(d.clone()),
        Structure::Comma(..) => {
            let d1 = fold(d, &at.child(Step::L))?;
            (RuleId::AndL, fold(&d1, &at.child(Step::R))?)
        }
        Structure::Circ(_) => (RuleId::DiaL, fold(d, &at.child(Step::U))?),
        Structure::Bullet(_) => (RuleId::BDiaL, fold(d, &at.child(Step::U))?),
    };
    let concl = Sequent::new(
        ante.replace(at, Structure::leaf(f_translate(&s))).expect("valid"),
        d.conclusion.succedent.clone(),
    );
    infer(rule, Some(at.clone()), concl, vec![inner])
}

/// Structural contraction `Γ[Δ,Δ] => β` ⊢ `Γ[Δ] => β` with the comma at `at`.
///
/// In the base calculus this folds both copies into `f(Δ)`, applies (Con_F)
/// and cuts against `Δ => f(Δ)`. In the other calculi it is the cut-free
/// [`contract_structure`].
pub fn con_macro(d: &Derivation, at: &Path, variant: CalculusVariant) -> Result<Derivation> {
    match variant {
        CalculusVariant::Base => {
            let (delta, _) = equal_copies(d, at)?;
            let folded = fold(&fold(d, &at.child(Step::L))?, &at.child(Step::R))?;
            let f = f_translate(&delta);
            let ante = &d.conclusion.antecedent;
            let beta = d.conclusion.succedent.clone();
            let merged = infer(
                RuleId::ConF,
                Some(at.clone()),
                Sequent::new(ante.replace(at, Structure::leaf(f.clone())).expect("valid"), beta.clone()),
                vec![folded],
            )?;
            if delta.as_leaf().is_some() {
                return Ok(merged);
            }
            let left = structure_identity(&delta, variant)?;
            let concl = Sequent::new(ante.replace(at, delta).expect("valid"), beta);
            Ok(Derivation::infer_inst(RuleId::Cut, Inst::cut(at.clone(), f), concl, vec![left, merged])?)
        }
        _ => contract_structure(d, at),
    }
}

pub(crate) fn equal_copies(d: &Derivation, at: &Path) -> Result<(Structure, Structure)> {
    match d.conclusion.antecedent.get(at) {
        Some(Structure::Comma(a, b)) if a == b => Ok(((**a).clone(), (**b).clone())),
        _ => Err(TransformError::ShapeMismatch(format!("no pair of equal structures at {at} in {}", d.conclusion))),
    }
}

fn weaken(d: &Derivation, rule: RuleId, at: &Path, sub: Structure) -> Result<Derivation> {
    let concl = Sequent::new(d.conclusion.antecedent.replace(at, sub).expect("valid"), d.conclusion.succedent.clone());
    infer(rule, Some(at.clone()), concl, vec![d.clone()])
}

fn triple(d: &Derivation, at: &Path, left_nested: bool) -> Result<(Structure, Structure, Structure)> {
    let s = d.conclusion.antecedent.get(at);
    let parts = match (left_nested, s) {
        (false, Some(Structure::Comma(d1, rest))) => match &**rest {
            Structure::Comma(d2, d3) => Some(((**d1).clone(), (**d2).clone(), (**d3).clone())),
            _ => None,
        },
        (true, Some(Structure::Comma(first, d3))) => match &**first {
            Structure::Comma(d1, d2) => Some(((**d1).clone(), (**d2).clone(), (**d3).clone())),
            _ => None,
        },
        _ => None,
    };
    parts.ok_or_else(|| TransformError::ShapeMismatch(format!("no three-part comma at {at} in {}", d.conclusion)))
}

/// (As1): `Γ[Δ1,(Δ2,Δ3)] => β` ⊢ `Γ[(Δ1,Δ2),Δ3] => β`, by weakening both sides
/// up to `(Δ1,Δ2),Δ3` and contracting.
pub fn assoc1(d: &Derivation, at: &Path, variant: CalculusVariant) -> Result<Derivation> {
    use Step::*;
    let (d1, d2, d3) = triple(d, at, false)?;
    let d12 = Structure::comma(d1.clone(), d2.clone());
    let e = weaken(d, RuleId::Wk1, &at.child(L), d12.clone())?;
    let e = weaken(&e, RuleId::Wk1, &at.child(L), Structure::comma(d12.clone(), d3.clone()))?;
    let e = weaken(&e, RuleId::Wk2, &at.child(R).child(L), d12)?;
    con_macro(&e, at, variant)
}

/// (As2): `Γ[(Δ1,Δ2),Δ3] => β` ⊢ `Γ[Δ1,(Δ2,Δ3)] => β`.
pub fn assoc2(d: &Derivation, at: &Path, variant: CalculusVariant) -> Result<Derivation> {
    use Step::*;
    let (d1, d2, d3) = triple(d, at, true)?;
    let d23 = Structure::comma(d2.clone(), d3.clone());
    let e = weaken(d, RuleId::Wk1, &at.child(L).child(R), d23.clone())?;
    let e = weaken(&e, RuleId::Wk2, &at.child(R), d23.clone())?;
    let e = weaken(&e, RuleId::Wk2, &at.child(R), Structure::comma(d1, d23))?;
    con_macro(&e, at, variant)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Admissible {
    And,
    Or,
    Impl,
    Mon(Modality),
    As1,
    As2,
    Con,
}

/// Dispatches to the macro rules; `at` is used by (As1), (As2) and (Con).
pub fn admissible(
    rule: Admissible,
    inputs: &[Derivation],
    at: Option<&Path>,
    variant: CalculusVariant,
) -> Result<Derivation> {
    let arity = match rule {
        Admissible::And | Admissible::Or | Admissible::Impl => 2,
        _ => 1,
    };
    if inputs.len() != arity {
        return Err(TransformError::ShapeMismatch(format!("{rule:?} takes {arity} derivations")));
    }
    let at = || at.ok_or_else(|| TransformError::ShapeMismatch(format!("{rule:?} needs a position")));
    match rule {
        Admissible::And => and_macro(&inputs[0], &inputs[1]),
        Admissible::Or => or_macro(&inputs[0], &inputs[1]),
        Admissible::Impl => impl_macro(&inputs[0], &inputs[1]),
        Admissible::Mon(m) => mon(m, &inputs[0]),
        Admissible::As1 => assoc1(&inputs[0], at()?, variant),
        Admissible::As2 => assoc2(&inputs[0], at()?, variant),
        Admissible::Con => con_macro(&inputs[0], at()?, variant),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::check;
    use crate::syntax::{fml, seq};

    #[test]
    fn identity_on_atoms_is_a_leaf() {
        let d = derive_identity(&fml("p0"));
        assert_eq!(d.rule, RuleId::IdA);
        assert_eq!(d.height(), 0);
    }

    #[test]
    fn identity_checks_for_every_connective() {
        for text in
            ["p0 & p1", "p0 | p1", "p0 -> p1", "dia p0", "bdia p0", "box p0", "bbox p0", "~(p0 & dia T) | bbox F"]
        {
            let f = fml(text);
            let d = derive_identity(&f);
            assert_eq!(d.conclusion, Sequent::new(Structure::leaf(f.clone()), f));
            check(&d, CalculusVariant::Dagger).unwrap_or_else(|v| panic!("{text}: {v:?}"));
            assert!(d.is_cut_free());
        }
    }

    #[test]
    fn identity_on_dia_uses_mon() {
        let d = derive_identity(&fml("dia p0"));
        assert_eq!(d.rule, RuleId::DiaL);
        assert_eq!(d.premises[0].rule, RuleId::DiaR);
    }

    #[test]
    fn mon_box_on_atom() {
        let d = mon(Modality::Box, &derive_identity(&fml("p0"))).unwrap();
        assert_eq!(d.conclusion, seq("box p0 => box p0"));
        assert_eq!(d.premises[0].conclusion, seq("b(box p0) => p0"));
        check(&d, CalculusVariant::Dagger).unwrap();
    }

    #[test]
    fn structure_identity_translates() {
        let s = crate::syntax::parse_structure("o(p0), b(p1, p2)").unwrap();
        let d = structure_identity(&s, CalculusVariant::Base).unwrap();
        assert_eq!(d.conclusion.succedent, fml("dia p0 & bdia (p1 & p2)"));
        check(&d, CalculusVariant::Base).unwrap();
    }

    #[test]
    fn associativity_in_base_uses_a_cut() {
        let d = derive_identity(&fml("p0"));
        let d = Derivation::infer(RuleId::Wk1, Some(Path::root()), seq("p0, (p1, p2) => p0"), vec![d]).unwrap();
        let d = crate::transform::from_dagger(&d);
        let out = assoc1(&d, &Path::root(), CalculusVariant::Base).unwrap();
        assert_eq!(out.conclusion, seq("(p0, p1), p2 => p0"));
        check(&out, CalculusVariant::Base).unwrap();
    }

    #[test]
    fn associativity_in_dagger_is_cut_free() {
        let d = derive_identity(&fml("p0"));
        let d = Derivation::infer(RuleId::Wk1, Some(Path::root()), seq("p0, (p1, p2) => p0"), vec![d]).unwrap();
        let out = assoc1(&d, &Path::root(), CalculusVariant::Dagger).unwrap();
        assert_eq!(out.conclusion, seq("(p0, p1), p2 => p0"));
        check(&out, CalculusVariant::Dagger).unwrap();
        assert!(out.is_cut_free());
        let back = assoc2(&out, &Path::root(), CalculusVariant::Dagger).unwrap();
        assert_eq!(back.conclusion, seq("p0, (p1, p2) => p0"));
        check(&back, CalculusVariant::Dagger).unwrap();
    }
}
