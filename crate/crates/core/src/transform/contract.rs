//! Contraction on cut-free Dagger derivations.
//!
//! Formula contraction follows the complexity induction: atoms, ♯-formulas
//! and implications have primitive contraction rules; ∨, ◇, ◆ and ∧ are
//! inverted on both copies and the resulting structures contracted.
//!
//! Structure contraction `Γ[Δ,Δ] => β` runs a height induction that keeps a
//! *witness*: the node being contracted is `(A, B)` where `B` is kept and a
//! list of top-down rule steps turns `A` into `B`. Rules acting inside the
//! absorbed copy are pushed onto the witness instead of being undone, and the
//! witness is replayed when the absorbed copy is weakened away.
//!
//! Commas are not associative, so contraction of comma structures is not
//! admissible in general. When no constructive step applies the transformer
//! tries deleting one copy outright and then a bounded cut-free search for
//! the contracted sequent; failing those it reports [`TransformError::Stuck`].

use super::invert::invert_left_unchecked;
use super::{rebuild, require_cut_free, LeftKind, Result, TransformError};
use crate::kernel::{track, track_rule, Derivation, Inst, RuleId, Track};
use crate::search::{prove, SearchBudget};
use crate::syntax::{Formula, Path, Sequent, Step, Structure};

#[derive(Clone, Debug)]
pub struct ContractOptions {
    /// Budget for the fallback search; `None` disables it.
    pub search: Option<SearchBudget>,
}

impl Default for ContractOptions {
    fn default() -> Self {
        ContractOptions { search: Some(SearchBudget::fallback()) }
    }
}

/// `Γ[α,α] => β` ⊢ `Γ[α] => β`, where `at` is the comma of the two copies.
pub fn contract_formula(d: &Derivation, at: &Path) -> Result<Derivation> {
    require_cut_free(d)?;
    match d.conclusion.antecedent.get(at) {
        Some(Structure::Comma(a, b)) if a == b && a.as_leaf().is_some() => {}
        _ => {
            return Err(TransformError::ShapeMismatch(format!("no pair of equal formulas at {at} in {}", d.conclusion)))
        }
    }
    contract_structure_with(d, at, &ContractOptions::default())
}

/// `Γ[Δ,Δ] => β` ⊢ `Γ[Δ] => β`, where `at` is the comma of the two copies.
pub fn contract_structure(d: &Derivation, at: &Path) -> Result<Derivation> {
    contract_structure_with(d, at, &ContractOptions::default())
}

pub fn contract_structure_with(d: &Derivation, at: &Path, opts: &ContractOptions) -> Result<Derivation> {
    require_cut_free(d)?;
    super::identity::equal_copies(d, at)?;
    let ctx = Ctx { opts };
    match absorb(d, at, Step::L, &[], &ctx) {
        Err(TransformError::Stuck(_)) => {
            let target = replace_at(&d.conclusion, at, kept(d, at, Step::L));
            ctx.search(&target).ok_or(TransformError::Stuck(target))
        }
        other => other,
    }
}

struct Ctx<'a> {
    opts: &'a ContractOptions,
}

impl Ctx<'_> {
    fn search(&self, goal: &Sequent) -> Option<Derivation> {
        let budget = self.opts.search.as_ref()?;
        prove(goal, crate::kernel::CalculusVariant::Dagger, budget).ok()
    }
}

/// One top-down rule step applied inside a copy; `at` is relative to the copy.
#[derive(Clone, PartialEq, Eq, Debug)]
struct WStep {
    rule: RuleId,
    at: Path,
    extra: Option<Structure>,
}

impl WStep {
    fn prefixed(&self, step: Step) -> WStep {
        WStep { at: self.at.prefixed(&[step]), ..self.clone() }
    }
}

fn flip(s: Step) -> Step {
    if s == Step::L {
        Step::R
    } else {
        Step::L
    }
}

fn kept(d: &Derivation, at: &Path, keep: Step) -> Structure {
    d.conclusion.antecedent.get(&at.child(keep)).expect("copy exists").clone()
}

fn replace_at(s: &Sequent, at: &Path, with: Structure) -> Sequent {
    Sequent::new(s.antecedent.replace(at, with).expect("valid path"), s.succedent.clone())
}

fn stuck(d: &Derivation, at: &Path, keep: Step) -> TransformError {
    TransformError::Stuck(replace_at(&d.conclusion, at, kept(d, at, keep)))
}

fn infer_at(rule: RuleId, at: Path, concl: Sequent, premises: Vec<Derivation>) -> Result<Derivation> {
    Ok(Derivation::infer(rule, Some(at), concl, premises)?)
}

/// Premise structure to conclusion structure under a single-premise rule.
fn forward(step: &WStep, s: &Structure) -> Option<Structure> {
    use RuleId::*;
    let sub = s.get(&step.at)?;
    let leaf = |f: Formula| Structure::leaf(f);
    let new = match (step.rule, sub) {
        (Wk1, x) => Structure::comma(x.clone(), step.extra.clone()?),
        (Wk2, x) => Structure::comma(step.extra.clone()?, x.clone()),
        (Ex, Structure::Comma(a, b)) => Structure::comma((**b).clone(), (**a).clone()),
        (ConCirc, Structure::Comma(a, b)) => match (&**a, &**b) {
            (Structure::Circ(x), Structure::Circ(y)) => Structure::circ(Structure::comma((**x).clone(), (**y).clone())),
            _ => return None,
        },
        (ConBullet, Structure::Comma(a, b)) => match (&**a, &**b) {
            (Structure::Bullet(x), Structure::Bullet(y)) => {
                Structure::bullet(Structure::comma((**x).clone(), (**y).clone()))
            }
            _ => return None,
        },
        (ConA | ConBox | ConBBox | ConImpl | ConF, Structure::Comma(a, b)) if a == b && a.as_leaf().is_some() => {
            (**a).clone()
        }
        (TopRule, Structure::Leaf(Formula::Top)) => step.extra.clone()?,
        (AndL, Structure::Comma(a, b)) => leaf(Formula::and(a.as_leaf()?.clone(), b.as_leaf()?.clone())),
        (DiaL, Structure::Circ(a)) => leaf(Formula::dia(a.as_leaf()?.clone())),
        (BDiaL, Structure::Bullet(a)) => leaf(Formula::bdia(a.as_leaf()?.clone())),
        (BoxL, Structure::Leaf(a)) => Structure::bullet(leaf(Formula::boxed(a.clone()))),
        (BBoxL, Structure::Leaf(a)) => Structure::circ(leaf(Formula::bbox(a.clone()))),
        _ => return None,
    };
    s.replace(&step.at, new)
}

/// The structures `A = S0, S1, ..., Sn = B` along the witness.
fn chain(a: &Structure, w: &[WStep]) -> Option<Vec<Structure>> {
    let mut out = vec![a.clone()];
    for step in w {
        let next = forward(step, out.last().expect("non-empty"))?;
        out.push(next);
    }
    Some(out)
}

fn step_inst(step: &WStep) -> Inst {
    Inst::at(step.at.clone())
}

/// Position in `A` that the position `p` of `B` comes from, if it is not
/// created by the witness.
fn back_track(w: &[WStep], p: &Path) -> Option<Path> {
    let mut p = p.clone();
    for step in w.iter().rev() {
        match track_rule(step.rule, &step_inst(step), &p) {
            Track::Moves(ms) if ms.len() == 1 => p = ms[0].1.clone(),
            _ => return None,
        }
    }
    Some(p)
}

/// Position in `B` that the position `r` of `A` ends up at.
fn forward_track(chain: &[Structure], w: &[WStep], r: &Path) -> Option<Path> {
    let mut r = r.clone();
    for (i, step) in w.iter().enumerate() {
        let next = &chain[i + 1];
        r = next.node_paths().into_iter().find(
            |q| matches!(track_rule(step.rule, &step_inst(step), q), Track::Moves(ms) if ms.len() == 1 && ms[0].1 == r),
        )?;
    }
    Some(r)
}

/// Replays the witness below `e`, whose antecedent holds the copy at `base`.
fn apply_steps(mut e: Derivation, base: &Path, w: &[WStep]) -> Result<Derivation> {
    for step in w {
        let ante = &e.conclusion.antecedent;
        let s = ante.get(base).ok_or_else(|| TransformError::Internal(format!("no copy at {base}")))?;
        let next = forward(step, s)
            .ok_or_else(|| TransformError::Internal(format!("witness step {step:?} does not apply to {s}")))?;
        let concl = Sequent::new(ante.replace(base, next).expect("valid"), e.conclusion.succedent.clone());
        e = infer_at(step.rule, base.join(&step.at), concl, vec![e])?;
    }
    Ok(e)
}

/// Rules that act inside one structure position, keep the context and the
/// succedent, and have a single premise.
fn local_unary(rule: RuleId) -> bool {
    use RuleId::*;
    matches!(
        rule,
        Wk1 | Wk2
            | Ex
            | ConCirc
            | ConBullet
            | ConA
            | ConBox
            | ConBBox
            | ConImpl
            | TopRule
            | AndL
            | DiaL
            | BDiaL
            | BoxL
            | BBoxL
    )
}

/// The witness step recording `rule` applied at `rel` of the copy `s`.
fn record(rule: RuleId, rel: &Path, s: &Structure) -> WStep {
    let extra = match rule {
        RuleId::Wk1 => s.get(&rel.child(Step::R)).cloned(),
        RuleId::Wk2 => s.get(&rel.child(Step::L)).cloned(),
        RuleId::TopRule => s.get(rel).cloned(),
        _ => None,
    };
    WStep { rule, at: rel.clone(), extra }
}

fn contract_leaf(d: &Derivation, at: &Path, ctx: &Ctx) -> Result<Derivation> {
    let copies = d.conclusion.antecedent.get(at);
    let Some(Structure::Comma(a, _)) = copies else {
        return Err(TransformError::Internal(format!("no copies at {at}")));
    };
    let f = a.as_leaf().expect("leaf copies").clone();
    let target = replace_at(&d.conclusion, at, (**a).clone());
    let primitive = match &f {
        _ if f.is_atomic() => Some(RuleId::ConA),
        Formula::Box(_) => Some(RuleId::ConBox),
        Formula::BBox(_) => Some(RuleId::ConBBox),
        Formula::Impl(..) => Some(RuleId::ConImpl),
        _ => None,
    };
    if let Some(rule) = primitive {
        return infer_at(rule, at.clone(), target, vec![d.clone()]);
    }
    let kind = LeftKind::of(&f).expect("remaining formulas have invertible left rules");
    let sides: &[LeftKind] =
        if kind == LeftKind::Or(false) { &[LeftKind::Or(false), LeftKind::Or(true)] } else { &[kind] };
    let mut premises = Vec::new();
    for &k in sides {
        let with = k.unfold(&f).expect("shape");
        let e = invert_left_unchecked(d, &at.child(Step::L), k, &with)?;
        let e = invert_left_unchecked(&e, &at.child(Step::R), k, &with)?;
        premises.push(absorb(&e, at, Step::L, &[], ctx)?);
    }
    let rule = match kind {
        LeftKind::And => RuleId::AndL,
        LeftKind::Or(_) => RuleId::OrL,
        LeftKind::Dia => RuleId::DiaL,
        LeftKind::BDia => RuleId::BDiaL,
    };
    infer_at(rule, at.clone(), target, premises)
}

/// Contracts the node `(A, B)` at `at` of `d` to `B`, where `w` turns `A` into `B`.
fn absorb(d: &Derivation, at: &Path, keep: Step, w: &[WStep], ctx: &Ctx) -> Result<Derivation> {
    let other = flip(keep);
    let ante = &d.conclusion.antecedent;
    let (a, b) = match (ante.get(&at.child(other)), ante.get(&at.child(keep))) {
        (Some(a), Some(b)) => (a.clone(), b.clone()),
        _ => return Err(TransformError::Internal(format!("no comma at {at} in {}", d.conclusion))),
    };
    let chain = chain(&a, w)
        .filter(|c| c.last() == Some(&b))
        .ok_or_else(|| TransformError::Internal(format!("witness does not turn {a} into {b}")))?;
    if w.is_empty() && b.as_leaf().is_some() {
        return contract_leaf(d, at, ctx);
    }
    match constructive(d, at, keep, w, &a, &b, &chain, ctx)? {
        Some(out) => Ok(out),
        None => fallback(d, at, keep, w, ctx),
    }
}

#[allow(clippy::too_many_arguments)]
fn constructive(
    d: &Derivation,
    at: &Path,
    keep: Step,
    w: &[WStep],
    a: &Structure,
    b: &Structure,
    chain: &[Structure],
    ctx: &Ctx,
) -> Result<Option<Derivation>> {
    use RuleId::*;
    let other = flip(keep);
    let target = replace_at(&d.conclusion, at, b.clone());

    if let Track::Moves(ms) = track(d, at) {
        let mut premises = d.premises.clone();
        for (i, p) in ms {
            premises[i] = absorb(&premises[i], &p, keep, w, ctx)?;
        }
        return rebuild(d, target, premises).map(Some);
    }
    let Some(f) = d.inst.at.clone() else {
        return Ok(None);
    };
    let premise = d.premises.first();

    if &f == at {
        return Ok(match d.rule {
            Wk1 | Wk2 => {
                let kept_side = if d.rule == Wk1 { Step::L } else { Step::R };
                let p = premise.expect("unary").clone();
                Some(if kept_side == keep { p } else { apply_steps(p, at, w)? })
            }
            Ex => Some(absorb(premise.expect("unary"), at, other, w, ctx)?),
            TopRule => Some(rebuild(d, target, d.premises.clone())?),
            BotRule => {
                let e = absorb(premise.expect("unary"), &Path::root(), keep, w, ctx)?;
                Some(infer_at(BotRule, at.clone(), target, vec![e])?)
            }
            _ => None,
        });
    }
    if f.is_prefix_of(at) {
        if matches!(d.rule, ConCirc | ConBullet) && at == &f.child(Step::U) {
            let lifted: Vec<WStep> = w.iter().map(|s| s.prefixed(Step::U)).collect();
            return absorb(premise.expect("unary"), &f, keep, &lifted, ctx).map(Some);
        }
        return Ok(None);
    }
    let Some(q) = at.strip_from(&f) else {
        return Ok(None);
    };
    let side = q.0[0];
    let rel = Path(q.0[1..].to_vec());

    if side == other {
        // The rule acts inside the absorbed copy.
        if matches!(d.rule, BotRule | DualCircBullet | DualBulletCirc) {
            let own = Derivation::infer(d.rule, Some(rel), Sequent::new(a.clone(), Formula::Bot), d.premises.clone())?;
            let e = apply_steps(own, &Path::root(), w)?;
            return infer_at(BotRule, at.clone(), target, vec![e]).map(Some);
        }
        if local_unary(d.rule) {
            let mut w2 = vec![record(d.rule, &rel, a)];
            w2.extend_from_slice(w);
            return absorb(premise.expect("unary"), at, keep, &w2, ctx).map(Some);
        }
        if d.rule == OrL {
            let Some(phi) = forward_track(chain, w, &rel) else {
                return Ok(None);
            };
            if b.get(&phi) != a.get(&rel) {
                return Ok(None);
            }
            let mut premises = Vec::new();
            for (i, p) in d.premises.iter().enumerate() {
                let k = LeftKind::Or(i == 1);
                let f = a.get(&rel).and_then(Structure::as_leaf).expect("principal leaf");
                let with = k.unfold(f).expect("disjunction");
                let e = invert_left_unchecked(p, &at.child(keep).join(&phi), k, &with)?;
                premises.push(absorb(&e, at, keep, w, ctx)?);
            }
            return infer_at(OrL, at.join(&phi), target, premises).map(Some);
        }
        return Ok(None);
    }

    // The rule acts inside the kept copy.
    if matches!(d.rule, BotRule | DualCircBullet | DualBulletCirc) {
        return infer_at(d.rule, at.join(&rel), target, d.premises.clone()).map(Some);
    }
    if matches!(d.rule, AndL | OrL | DiaL | BDiaL) {
        if let Some(r) = back_track(w, &rel) {
            if a.get(&r) == b.get(&rel) {
                let f = b.get(&rel).and_then(Structure::as_leaf).expect("principal leaf").clone();
                let mut premises = Vec::new();
                for (i, p) in d.premises.iter().enumerate() {
                    let k = match d.rule {
                        AndL => LeftKind::And,
                        OrL => LeftKind::Or(i == 1),
                        DiaL => LeftKind::Dia,
                        _ => LeftKind::BDia,
                    };
                    let with = k.unfold(&f).expect("shape");
                    let e = invert_left_unchecked(p, &at.child(other).join(&r), k, &with)?;
                    premises.push(absorb(&e, at, keep, w, ctx)?);
                }
                return infer_at(d.rule, at.join(&rel), target, premises).map(Some);
            }
        }
    }
    if local_unary(d.rule) {
        let step = record(d.rule, &rel, b);
        if w.is_empty() {
            // Both copies were equal: the premise's version is absorbed into
            // the untouched copy instead.
            return absorb(premise.expect("unary"), at, other, &[step], ctx).map(Some);
        }
        if w.last() == Some(&step) {
            let e = absorb(premise.expect("unary"), at, keep, &w[..w.len() - 1], ctx)?;
            return infer_at(d.rule, at.join(&rel), target, vec![e]).map(Some);
        }
    }
    Ok(None)
}

fn fallback(d: &Derivation, at: &Path, keep: Step, w: &[WStep], ctx: &Ctx) -> Result<Derivation> {
    if let Some(out) = strengthen(d, at, keep) {
        return Ok(out);
    }
    if let Some(out) = strengthen(d, at, flip(keep)) {
        if let Ok(out) = apply_steps(out, at, w) {
            return Ok(out);
        }
    }
    let target = replace_at(&d.conclusion, at, kept(d, at, keep));
    ctx.search(&target).ok_or_else(|| stuck(d, at, keep))
}

/// Deletes the copy at `at.flip(keep)` when the derivation never needs it.
fn strengthen(d: &Derivation, at: &Path, keep: Step) -> Option<Derivation> {
    use RuleId::*;
    let other = flip(keep);
    let target = replace_at(&d.conclusion, at, kept(d, at, keep));
    if let Track::Moves(ms) = track(d, at) {
        let mut premises = d.premises.clone();
        for (i, p) in ms {
            premises[i] = strengthen(&premises[i], &p, keep)?;
        }
        return rebuild(d, target, premises).ok();
    }
    let f = d.inst.at.clone()?;
    let premise = d.premises.first();
    if &f == at {
        return match d.rule {
            Wk1 if keep == Step::L => premise.cloned(),
            Wk2 if keep == Step::R => premise.cloned(),
            Ex => strengthen(premise?, at, other),
            TopRule => rebuild(d, target, d.premises.clone()).ok(),
            BotRule => {
                let e = strengthen(premise?, &Path::root(), keep)?;
                infer_at(BotRule, at.clone(), target, vec![e]).ok()
            }
            _ => None,
        };
    }
    if f.is_prefix_of(at) {
        if matches!(d.rule, ConCirc | ConBullet) && at == &f.child(Step::U) {
            return strengthen(premise?, &f, keep);
        }
        return None;
    }
    let q = at.strip_from(&f)?;
    let side = q.0[0];
    let rel = Path(q.0[1..].to_vec());
    let discards = matches!(d.rule, BotRule | DualCircBullet | DualBulletCirc);
    // Premises that still contain the node (the left premise of →L does not).
    let with_node = |i: usize| !(d.rule == ImplL && i == 0);
    if side == keep {
        if discards {
            return infer_at(d.rule, at.join(&rel), target, d.premises.clone()).ok();
        }
        let premises = d
            .premises
            .iter()
            .enumerate()
            .map(|(i, p)| if with_node(i) { strengthen(p, at, keep) } else { Some(p.clone()) })
            .collect::<Option<Vec<_>>>()?;
        let mut inst = d.inst.clone();
        inst.at = Some(at.join(&rel));
        let shell = Derivation::node(d.rule, inst, target.clone(), vec![]);
        return rebuild(&shell, target, premises).ok();
    }
    if discards {
        return None;
    }
    let i = usize::from(d.rule == ImplL);
    strengthen(&d.premises[i], at, keep)
}
