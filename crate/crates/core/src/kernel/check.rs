use std::fmt;

use super::derivation::{Derivation, NodeAddr};
use super::rules::{CalculusVariant, Inst, RuleId};
use crate::syntax::{Formula, MultiContext, Path, Sequent, Structure};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Reason {
    WrongShape,
    VariantForbidden,
    BadPath,
    EmbeddedEmpty,
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Reason::WrongShape => "wrong-shape",
            Reason::VariantForbidden => "variant-forbidden",
            Reason::BadPath => "bad-path",
            Reason::EmbeddedEmpty => "embedded-empty",
        })
    }
}

#[derive(Clone, PartialEq, Eq, Debug, thiserror::Error)]
#[error("{address} {rule}: {reason}: {detail}")]
pub struct Violation {
    pub address: NodeAddr,
    pub rule: RuleId,
    pub reason: Reason,
    pub detail: String,
}

/// A local failure before it is placed in a tree.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NodeError {
    pub reason: Reason,
    pub detail: String,
}

fn shape<T>(detail: impl Into<String>) -> Result<T, NodeError> {
    Err(NodeError { reason: Reason::WrongShape, detail: detail.into() })
}

fn bad_path<T>(detail: impl Into<String>) -> Result<T, NodeError> {
    Err(NodeError { reason: Reason::BadPath, detail: detail.into() })
}

fn required_at(inst: &Inst, concl: &Sequent) -> Result<Path, NodeError> {
    let Some(at) = &inst.at else {
        return bad_path("missing :at");
    };
    if !concl.antecedent.is_valid_path(at) {
        return bad_path(format!("{at} is not a position of {}", concl.antecedent));
    }
    Ok(at.clone())
}

fn leaf_at<'a>(s: &'a Structure, at: &Path) -> Result<&'a Formula, NodeError> {
    match s.get(at) {
        Some(Structure::Leaf(f)) => Ok(f),
        _ => shape(format!("expected a formula at {at}")),
    }
}

fn with(s: &Structure, at: &Path, sub: Structure) -> Structure {
    s.replace(at, sub).expect("path validated")
}

fn non_empty(s: &Structure, what: &str) -> Result<(), NodeError> {
    if s.is_empty() {
        shape(format!("{what} needs a non-empty antecedent"))
    } else {
        Ok(())
    }
}

/// Computes the premises of a rule application from its conclusion and
/// instantiation. The result is unique; checking never searches.
pub fn expected_premises(rule: RuleId, inst: &Inst, concl: &Sequent) -> Result<Vec<Sequent>, NodeError> {
    use RuleId::*;
    let gamma = &concl.antecedent;
    let beta = &concl.succedent;
    let keep = |s: Structure| Sequent::new(s, beta.clone());

    if gamma.has_embedded_empty() {
        return Err(NodeError { reason: Reason::EmbeddedEmpty, detail: format!("{concl}") });
    }
    if rule.needs_at() && inst.at.is_none() {
        return bad_path("missing :at");
    }
    if rule.needs_delta() && inst.delta.is_none() {
        return shape("missing :delta");
    }
    if rule.needs_cut_formula() && inst.cut_formula.is_none() {
        return shape("missing :cutf");
    }

    let premises = match rule {
        Id | IdA => {
            match gamma {
                Structure::Leaf(a) if a == beta => {}
                _ => return shape(format!("{concl} is not an identity")),
            }
            if rule == IdA && !beta.is_atomic() {
                return Err(NodeError {
                    reason: Reason::VariantForbidden,
                    detail: format!("identity on non-atomic {beta} (restricted to atoms)"),
                });
            }
            vec![]
        }
        TopRule => {
            let at = required_at(inst, concl)?;
            let delta = inst.delta.as_ref().expect("checked");
            if gamma.get(&at) != Some(delta) {
                return shape(format!(":delta {delta} is not the structure at {at}"));
            }
            vec![keep(with(gamma, &at, Structure::leaf(Formula::Top)))]
        }
        BotRule => {
            let at = required_at(inst, concl)?;
            let delta = inst.delta.as_ref().expect("checked");
            if gamma.get(&at) != Some(delta) {
                return shape(format!(":delta {delta} is not the structure at {at}"));
            }
            vec![Sequent::new(delta.clone(), Formula::Bot)]
        }
        AndL => {
            let at = required_at(inst, concl)?;
            match leaf_at(gamma, &at)? {
                Formula::And(a, b) => vec![keep(with(
                    gamma,
                    &at,
                    Structure::comma(Structure::leaf((**a).clone()), Structure::leaf((**b).clone())),
                ))],
                f => return shape(format!("{f} is not a conjunction")),
            }
        }
        AndR => match beta {
            Formula::And(a, b) => {
                vec![Sequent::new(gamma.clone(), (**a).clone()), Sequent::new(gamma.clone(), (**b).clone())]
            }
            f => return shape(format!("{f} is not a conjunction")),
        },
        OrL => {
            let at = required_at(inst, concl)?;
            match leaf_at(gamma, &at)? {
                Formula::Or(a, b) => vec![
                    keep(with(gamma, &at, Structure::leaf((**a).clone()))),
                    keep(with(gamma, &at, Structure::leaf((**b).clone()))),
                ],
                f => return shape(format!("{f} is not a disjunction")),
            }
        }
        OrR1 | OrR2 => match beta {
            Formula::Or(a, b) => {
                let side = if rule == OrR1 { a } else { b };
                vec![Sequent::new(gamma.clone(), (**side).clone())]
            }
            f => return shape(format!("{f} is not a disjunction")),
        },
        ImplL => {
            let at = required_at(inst, concl)?;
            match gamma.get(&at) {
                Some(Structure::Comma(sigma, imp)) => match &**imp {
                    Structure::Leaf(Formula::Impl(a1, a2)) => vec![
                        Sequent::new((**sigma).clone(), (**a1).clone()),
                        keep(with(gamma, &at, Structure::leaf((**a2).clone()))),
                    ],
                    other => return shape(format!("{other} is not an implication")),
                },
                _ => return shape(format!("expected `S, a -> b` at {at}")),
            }
        }
        ImplR => match beta {
            Formula::Impl(a, b) => {
                let lead = Structure::leaf((**a).clone());
                let ante = if gamma.is_empty() { lead } else { Structure::comma(lead, gamma.clone()) };
                vec![Sequent::new(ante, (**b).clone())]
            }
            f => return shape(format!("{f} is not an implication")),
        },
        DiaL | BDiaL => {
            let at = required_at(inst, concl)?;
            match (rule, leaf_at(gamma, &at)?) {
                (DiaL, Formula::Dia(a)) => {
                    vec![keep(with(gamma, &at, Structure::circ(Structure::leaf((**a).clone()))))]
                }
                (BDiaL, Formula::BDia(a)) => {
                    vec![keep(with(gamma, &at, Structure::bullet(Structure::leaf((**a).clone()))))]
                }
                (_, f) => return shape(format!("{f} has the wrong main connective")),
            }
        }
        DiaR | BDiaR => match (rule, gamma, beta) {
            (DiaR, Structure::Circ(g), Formula::Dia(b)) | (BDiaR, Structure::Bullet(g), Formula::BDia(b)) => {
                vec![Sequent::new((**g).clone(), (**b).clone())]
            }
            _ => return shape(format!("{concl} does not match the rule")),
        },
        BBoxL | BoxL => {
            let at = required_at(inst, concl)?;
            match (rule, gamma.get(&at)) {
                (BBoxL, Some(Structure::Circ(inner))) | (BoxL, Some(Structure::Bullet(inner))) => {
                    match (rule, &**inner) {
                        (BBoxL, Structure::Leaf(Formula::BBox(a))) | (BoxL, Structure::Leaf(Formula::Box(a))) => {
                            vec![keep(with(gamma, &at, Structure::leaf((**a).clone())))]
                        }
                        _ => return shape(format!("wrong modal formula under {at}")),
                    }
                }
                _ => return shape(format!("wrong structural operator at {at}")),
            }
        }
        BBoxR | BoxR => {
            non_empty(gamma, rule.name())?;
            match (rule, beta) {
                (BBoxR, Formula::BBox(b)) => vec![Sequent::new(Structure::circ(gamma.clone()), (**b).clone())],
                (BoxR, Formula::Box(b)) => vec![Sequent::new(Structure::bullet(gamma.clone()), (**b).clone())],
                _ => return shape(format!("{beta} has the wrong main connective")),
            }
        }
        ConCirc | ConBullet => {
            let at = required_at(inst, concl)?;
            match (rule, gamma.get(&at)) {
                (ConCirc, Some(Structure::Circ(inner))) | (ConBullet, Some(Structure::Bullet(inner))) => match &**inner
                {
                    Structure::Comma(d1, d2) => {
                        let wrap = |d: &Structure| {
                            if rule == ConCirc {
                                Structure::circ(d.clone())
                            } else {
                                Structure::bullet(d.clone())
                            }
                        };
                        vec![keep(with(gamma, &at, Structure::comma(wrap(d1), wrap(d2))))]
                    }
                    _ => return shape(format!("expected a comma under {at}")),
                },
                _ => return shape(format!("wrong structural operator at {at}")),
            }
        }
        ConF | ConA | ConBox | ConBBox | ConImpl => {
            let at = required_at(inst, concl)?;
            let a = leaf_at(gamma, &at)?;
            let ok = match rule {
                ConF => true,
                ConA => a.is_atomic(),
                ConBox => matches!(a, Formula::Box(_)),
                ConBBox => matches!(a, Formula::BBox(_)),
                _ => matches!(a, Formula::Impl(..)),
            };
            if !ok {
                return shape(format!("{rule} cannot contract {a}"));
            }
            vec![keep(with(gamma, &at, Structure::comma(Structure::leaf(a.clone()), Structure::leaf(a.clone()))))]
        }
        ConStruct => {
            let at = required_at(inst, concl)?;
            let d = gamma.get(&at).expect("validated").clone();
            vec![keep(with(gamma, &at, Structure::comma(d.clone(), d)))]
        }
        Wk1 | Wk2 | Ex => {
            let at = required_at(inst, concl)?;
            match gamma.get(&at) {
                Some(Structure::Comma(d1, d2)) => {
                    let sub = match rule {
                        Wk1 => (**d1).clone(),
                        Wk2 => (**d2).clone(),
                        _ => Structure::Comma(d2.clone(), d1.clone()),
                    };
                    vec![keep(with(gamma, &at, sub))]
                }
                _ => return shape(format!("expected a comma at {at}")),
            }
        }
        DualCircBullet | DualBulletCirc => {
            let at = required_at(inst, concl)?;
            match gamma.get(&at) {
                Some(Structure::Comma(d1, d2)) => match (rule, &**d2) {
                    (DualCircBullet, Structure::Bullet(inner)) => vec![Sequent::new(
                        Structure::comma(Structure::circ((**d1).clone()), (**inner).clone()),
                        Formula::Bot,
                    )],
                    (DualBulletCirc, Structure::Circ(inner)) => vec![Sequent::new(
                        Structure::comma(Structure::bullet((**d1).clone()), (**inner).clone()),
                        Formula::Bot,
                    )],
                    _ => return shape(format!("wrong structural operator at {at}.R")),
                },
                _ => return shape(format!("expected a comma at {at}")),
            }
        }
        Cut | CutStar => {
            let at = required_at(inst, concl)?;
            let cf = inst.cut_formula.as_ref().expect("checked");
            if rule == CutStar && !star_formula(cf) {
                return Err(NodeError {
                    reason: Reason::VariantForbidden,
                    detail: format!("{cf} is an atom, box formula or implication; it belongs to a mix rule"),
                });
            }
            let delta = gamma.get(&at).expect("validated").clone();
            vec![Sequent::new(delta, cf.clone()), keep(with(gamma, &at, Structure::leaf(cf.clone())))]
        }
        MixA | MixBox | MixBBox | MixImpl => {
            let cf = inst.cut_formula.as_ref().expect("checked");
            let fits = match rule {
                MixA => cf.is_atomic(),
                MixBox => matches!(cf, Formula::Box(_)),
                MixBBox => matches!(cf, Formula::BBox(_)),
                _ => matches!(cf, Formula::Impl(..)),
            };
            if !fits {
                return shape(format!("{rule} cannot cut on {cf}"));
            }
            if inst.holes.is_empty() {
                return shape("a mix needs at least one hole");
            }
            let ctx = MultiContext::new(gamma.clone(), inst.holes.clone())
                .map_err(|e| NodeError { reason: Reason::BadPath, detail: e.to_string() })?;
            if ctx.holes().len() != inst.holes.len() {
                return bad_path("repeated hole");
            }
            let delta = gamma.get(&inst.holes[0]).expect("validated").clone();
            if inst.holes.iter().any(|h| gamma.get(h) != Some(&delta)) {
                return shape("holes carry different structures");
            }
            let right = MultiContext::new(gamma.clone(), inst.holes.clone())
                .expect("validated")
                .plug(&Structure::leaf(cf.clone()));
            vec![Sequent::new(delta, cf.clone()), keep(right)]
        }
    };
    for p in &premises {
        if p.antecedent.has_embedded_empty() {
            return Err(NodeError { reason: Reason::EmbeddedEmpty, detail: format!("premise {p}") });
        }
    }
    Ok(premises)
}

/// The formulas a cut-star may cut on: anything but atoms, box formulas and implications.
pub fn star_formula(f: &Formula) -> bool {
    !(f.is_atomic() || matches!(f, Formula::Box(_) | Formula::BBox(_) | Formula::Impl(..)))
}

/// Local validity of one node.
pub fn check_node(
    variant: CalculusVariant,
    rule: RuleId,
    inst: &Inst,
    conclusion: &Sequent,
    premise_sequents: &[&Sequent],
) -> Result<(), NodeError> {
    check_node_with(Admission::Strict(variant), rule, inst, conclusion, premise_sequents)
}

/// Which rules a check admits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Admission {
    /// Exactly the rules of the variant.
    Strict(CalculusVariant),
    /// The variant plus deferred structural contractions (`ConStruct`).
    WithDeferred(CalculusVariant),
}

impl Admission {
    fn admits(self, rule: RuleId) -> bool {
        match self {
            Admission::Strict(v) => rule.admitted_in(v),
            Admission::WithDeferred(v) => rule == RuleId::ConStruct || rule.admitted_in(v),
        }
    }
}

pub fn check_node_with(
    admission: Admission,
    rule: RuleId,
    inst: &Inst,
    conclusion: &Sequent,
    premise_sequents: &[&Sequent],
) -> Result<(), NodeError> {
    if !admission.admits(rule) {
        return Err(NodeError {
            reason: Reason::VariantForbidden,
            detail: format!("{rule} is not a rule of this calculus"),
        });
    }
    let expected = expected_premises(rule, inst, conclusion)?;
    if expected.len() != premise_sequents.len() {
        return shape(format!("{rule} takes {} premises, got {}", expected.len(), premise_sequents.len()));
    }
    for (i, (want, got)) in expected.iter().zip(premise_sequents).enumerate() {
        if want != *got {
            return shape(format!("premise {i}: expected {want}, found {got}"));
        }
    }
    Ok(())
}

/// Checks every node; violations carry tree addresses.
pub fn check(d: &Derivation, variant: CalculusVariant) -> Result<(), Vec<Violation>> {
    check_with(d, Admission::Strict(variant))
}

pub fn check_with(d: &Derivation, admission: Admission) -> Result<(), Vec<Violation>> {
    let mut out = Vec::new();
    let mut addr = Vec::new();
    walk(d, admission, &mut addr, &mut out);
    if out.is_empty() {
        Ok(())
    } else {
        Err(out)
    }
}

fn walk(d: &Derivation, admission: Admission, addr: &mut Vec<usize>, out: &mut Vec<Violation>) {
    let prem: Vec<&Sequent> = d.premises.iter().map(|p| &p.conclusion).collect();
    if let Err(e) = check_node_with(admission, d.rule, &d.inst, &d.conclusion, &prem) {
        out.push(Violation { address: NodeAddr(addr.clone()), rule: d.rule, reason: e.reason, detail: e.detail });
    }
    for (i, p) in d.premises.iter().enumerate() {
        addr.push(i);
        walk(p, admission, addr, out);
        addr.pop();
    }
}
