//! One rewrite step on an uppermost cut-like node.

use super::{classify_cut, CutElimError, CutKind, Measure, Result, Scenario, TraceStep};
use crate::kernel::{track, Derivation, Inst, NodeAddr, RuleId, Track};
use crate::syntax::{plug, Formula, Path, Sequent, Step};
use crate::transform::{invert_left, invert_right, rebuild, LeftKind, RightKind};

fn internal(msg: impl Into<String>) -> CutElimError {
    CutElimError::CheckFailure(msg.into())
}

fn measure(node: &Derivation) -> Measure {
    let c = node.inst.cut_formula.as_ref().map_or(0, Formula::complexity);
    let h = if node.rule == RuleId::CutStar { node.premises[0].height() } else { node.premises[1].height() };
    (c, h)
}

fn has_deferred(d: &Derivation) -> bool {
    d.count(&|n| n.rule == RuleId::ConStruct) > 0
}

/// Rewrites the uppermost cut-like node at `at` once.
pub fn reduce_at(d: &Derivation, at: &NodeAddr) -> Result<(Derivation, TraceStep)> {
    let node = d.get(at).ok_or_else(|| CutElimError::Precondition(format!("no node at {at}")))?;
    if !node.rule.is_cut_like() || node.rule == RuleId::Cut {
        return Err(CutElimError::Precondition(format!("{} at {at} is not a split cut-like rule", node.rule)));
    }
    if node.premises.iter().any(|p| !p.is_cut_free() || has_deferred(p)) {
        return Err(CutElimError::Precondition(format!("cut at {at} is not uppermost")));
    }
    let (out, scenario, case) = if node.rule == RuleId::CutStar { reduce_star(node)? } else { reduce_mix(node)? };
    if out.conclusion != node.conclusion {
        return Err(internal(format!("rewrite at {at} changed {} into {}", node.conclusion, out.conclusion)));
    }
    let after = out.nodes().into_iter().filter(|(_, n)| n.rule.is_cut_like()).map(|(_, n)| measure(n)).max();
    let step = TraceStep { addr: at.clone(), scenario, case, before: measure(node), after };
    Ok((d.replace(at, out), step))
}

/// A cut-like node on `cf` plugging `left`'s antecedent into `holes` of `right`.
/// No holes means no cut.
fn new_cut(cf: &Formula, holes: Vec<Path>, left: Derivation, right: Derivation) -> Result<Derivation> {
    if holes.is_empty() {
        return Ok(right);
    }
    let ante =
        plug(&right.conclusion.antecedent, &holes, &left.conclusion.antecedent).map_err(|e| internal(e.to_string()))?;
    let concl = Sequent::new(ante, right.conclusion.succedent.clone());
    let kind = classify_cut(cf);
    let inst = match kind {
        CutKind::Star(_) if holes.len() == 1 => Inst::cut(holes[0].clone(), cf.clone()),
        CutKind::Star(_) => return Err(internal(format!("(Cut_*) on {cf} with {} holes", holes.len()))),
        _ => Inst::mix(holes, cf.clone()),
    };
    Ok(Derivation::infer_inst(kind.rule(), inst, concl, vec![left, right])?)
}

/// `rule` with `inst` below `premises`, concluding `concl`.
fn apply(rule: RuleId, inst: Inst, concl: Sequent, premises: Vec<Derivation>) -> Result<Derivation> {
    let shell = Derivation::node(rule, inst, concl.clone(), vec![]);
    Ok(rebuild(&shell, concl, premises)?)
}

pub(super) fn mix_const(node: &Derivation) -> Result<Derivation> {
    let cf = node.inst.cut_formula.as_ref();
    if node.rule != RuleId::MixA || !matches!(cf, Some(Formula::Top | Formula::Bot)) {
        return Err(CutElimError::WrongNode(format!("{} on {:?}", node.rule, cf)));
    }
    let [left, right] = [&node.premises[0], &node.premises[1]];
    let holes = &node.inst.holes;
    if cf == Some(&Formula::Bot) {
        return Ok(Derivation::infer(
            RuleId::BotRule,
            Some(holes[0].clone()),
            node.conclusion.clone(),
            vec![left.clone()],
        )?);
    }
    let delta = &left.conclusion.antecedent;
    let mut e = right.clone();
    for h in holes {
        let ante = e.conclusion.antecedent.replace(h, delta.clone()).ok_or_else(|| internal("bad hole"))?;
        let concl = Sequent::new(ante, e.conclusion.succedent.clone());
        e = Derivation::infer(RuleId::TopRule, Some(h.clone()), concl, vec![e])?;
    }
    Ok(e)
}

/// Scenarios I–III: induction on the right premise.
fn reduce_mix(node: &Derivation) -> Result<(Derivation, Scenario, &'static str)> {
    use RuleId::*;
    let scenario = match node.rule {
        MixA => Scenario::I,
        MixImpl => Scenario::III,
        _ => Scenario::II,
    };
    let cf = node.inst.cut_formula.clone().expect("mix carries :cutf");
    if matches!(cf, Formula::Top | Formula::Bot) {
        return Ok((mix_const(node)?, scenario, "const"));
    }
    let (left, right) = (&node.premises[0], &node.premises[1]);
    if right.rule.is_axiom() {
        return Ok((left.clone(), scenario, "0"));
    }

    let mut per: Vec<Vec<Path>> = vec![Vec::new(); right.premises.len()];
    let mut active: Option<Path> = None;
    for h in &node.inst.holes {
        match track(right, h) {
            Track::Active if active.is_none() => active = Some(h.clone()),
            Track::Active => return Err(internal(format!("two principal holes in {}", right.rule))),
            Track::Moves(ms) => {
                for (i, p) in ms {
                    per[i].push(p);
                }
            }
        }
    }

    let Some(a) = active else {
        // Not principal: push the mix into the premises that keep occurrences.
        let premises = right
            .premises
            .iter()
            .zip(per)
            .map(|(p, hs)| new_cut(&cf, hs, left.clone(), p.clone()))
            .collect::<Result<Vec<_>>>()?;
        let out = rebuild(right, node.conclusion.clone(), premises)?;
        let touched = right.inst.at.as_ref().is_some_and(|f| node.inst.holes.iter().any(|h| f.is_prefix_of(h)));
        let case = match (touched, right.rule, scenario) {
            (true, TopRule, Scenario::I) => "2.1",
            (true, BotRule, Scenario::I) => "2.2",
            (true, Wk1 | Wk2, Scenario::I) => "2.4",
            (true, TopRule | BotRule | Wk1 | Wk2, _) => "2.1",
            _ => "1",
        };
        return Ok((out, scenario, case));
    };

    let f = right.inst.at.clone().ok_or_else(|| internal("principal hole under a rule without :at"))?;
    let mut per = per.into_iter();
    match right.rule {
        ConA | ConBox | ConBBox | ConImpl if f == a => {
            let mut holes = per.next().unwrap_or_default();
            holes.push(a.child(Step::L));
            holes.push(a.child(Step::R));
            let inner = new_cut(&cf, holes, left.clone(), right.premises[0].clone())?;
            let out = Derivation::infer(ConStruct, Some(a), node.conclusion.clone(), vec![inner])?;
            Ok((out, scenario, if scenario == Scenario::I { "2.3" } else { "2.1" }))
        }
        BoxL | BBoxL if a == f.child(Step::U) => {
            let (kind, body) = match &cf {
                Formula::Box(b) if right.rule == BoxL => (RightKind::Box, (**b).clone()),
                Formula::BBox(b) if right.rule == BBoxL => (RightKind::BBox, (**b).clone()),
                _ => return Err(internal(format!("{} principal on {cf}", right.rule))),
            };
            let inv = invert_right(left, kind)?;
            let inner = new_cut(&cf, per.next().unwrap_or_default(), left.clone(), right.premises[0].clone())?;
            Ok((new_cut(&body, vec![f], inv, inner)?, scenario, "2.2"))
        }
        ImplL if a == f.child(Step::R) => {
            let Formula::Impl(a1, a2) = &cf else {
                return Err(internal(format!("->L principal on {cf}")));
            };
            let upper = new_cut(&cf, per.next().unwrap_or_default(), left.clone(), right.premises[0].clone())?;
            let inv = invert_right(left, RightKind::Impl)?;
            let joined = new_cut(a1, vec![Path(vec![Step::L])], upper, inv)?;
            let lower = new_cut(&cf, per.next().unwrap_or_default(), left.clone(), right.premises[1].clone())?;
            Ok((new_cut(a2, vec![f], joined, lower)?, scenario, "2.2"))
        }
        r => Err(internal(format!("{r} at {f} with principal hole {a}"))),
    }
}

/// Scenario IV: induction on the left premise.
fn reduce_star(node: &Derivation) -> Result<(Derivation, Scenario, &'static str)> {
    use RuleId::*;
    let cf = node.inst.cut_formula.clone().expect("cut carries :cutf");
    let h = node.inst.at.clone().expect("cut carries :at");
    let (left, right) = (&node.premises[0], &node.premises[1]);
    let iv = |d: Derivation, case| Ok((d, Scenario::IV, case));
    match (left.rule, &cf) {
        (BotRule | DualCircBullet | DualBulletCirc, _) => {
            let f = left.inst.at.as_ref().expect("rule carries :at");
            let inst = Inst { at: Some(h.join(f)), ..left.inst.clone() };
            iv(apply(left.rule, inst, node.conclusion.clone(), left.premises.clone())?, "2.1")
        }
        (AndR, Formula::And(a1, a2)) => {
            let opened = invert_left(right, &h, LeftKind::And)?;
            let second = new_cut(a2, vec![h.child(Step::R)], left.premises[1].clone(), opened)?;
            let both = new_cut(a1, vec![h.child(Step::L)], left.premises[0].clone(), second)?;
            iv(Derivation::infer(ConStruct, Some(h), node.conclusion.clone(), vec![both])?, "2.2")
        }
        (OrR1 | OrR2, Formula::Or(a1, a2)) => {
            let (side, body) = if left.rule == OrR1 { (false, a1) } else { (true, a2) };
            let opened = invert_left(right, &h, LeftKind::Or(side))?;
            iv(new_cut(body, vec![h], left.premises[0].clone(), opened)?, "2.3")
        }
        (DiaR, Formula::Dia(body)) | (BDiaR, Formula::BDia(body)) => {
            let kind = if left.rule == DiaR { LeftKind::Dia } else { LeftKind::BDia };
            let opened = invert_left(right, &h, kind)?;
            iv(new_cut(body, vec![h.child(Step::U)], left.premises[0].clone(), opened)?, "2.3")
        }
        (r, _) if r.is_right_rule() || r.is_axiom() => {
            Err(internal(format!("{r} cannot conclude {}", left.conclusion)))
        }
        (r, _) => {
            // Not principal: cut each premise that keeps the succedent.
            let f = left.inst.at.as_ref().expect("left and structural rules carry :at");
            let premises = left
                .premises
                .iter()
                .enumerate()
                .map(|(i, p)| {
                    if r == ImplL && i == 0 {
                        Ok(p.clone())
                    } else {
                        new_cut(&cf, vec![h.clone()], p.clone(), right.clone())
                    }
                })
                .collect::<Result<Vec<_>>>()?;
            let inst = Inst { at: Some(h.join(f)), ..left.inst.clone() };
            iv(apply(r, inst, node.conclusion.clone(), premises)?, "1")
        }
    }
}
