//! Cut elimination: split every cut into the four cut-like rules, then reduce
//! the leftmost-uppermost cut-like node until none remain.
//!
//! Rewrites that need structural contraction on a derivation which still has
//! cuts above leave a deferred (Con) node behind; it is discharged with
//! [`contract_structure`] as soon as its subtree is cut-free.

mod reduce;

use std::fmt;

use thiserror::Error;

use crate::kernel::{Derivation, Inst, NodeAddr, RuleId};
use crate::syntax::Formula;
use crate::transform::{contract_formula, contract_structure, derive_identity, TransformError};

pub use reduce::reduce_at;

/// Shape classes of cut formulas; each has its own cut-like rule.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum CutKind {
    MixAtom(Formula),
    MixSharp(Sharp, Formula),
    MixImpl(Formula, Formula),
    Star(Formula),
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Sharp {
    Box,
    BBox,
}

impl CutKind {
    pub fn rule(&self) -> RuleId {
        match self {
            CutKind::MixAtom(_) => RuleId::MixA,
            CutKind::MixSharp(Sharp::Box, _) => RuleId::MixBox,
            CutKind::MixSharp(Sharp::BBox, _) => RuleId::MixBBox,
            CutKind::MixImpl(..) => RuleId::MixImpl,
            CutKind::Star(_) => RuleId::CutStar,
        }
    }
}

pub fn classify_cut(f: &Formula) -> CutKind {
    match f {
        _ if f.is_atomic() => CutKind::MixAtom(f.clone()),
        Formula::Box(a) => CutKind::MixSharp(Sharp::Box, (**a).clone()),
        Formula::BBox(a) => CutKind::MixSharp(Sharp::BBox, (**a).clone()),
        Formula::Impl(a, b) => CutKind::MixImpl((**a).clone(), (**b).clone()),
        _ => CutKind::Star(f.clone()),
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Scenario {
    I,
    II,
    III,
    IV,
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scenario::I => "I",
            Scenario::II => "II",
            Scenario::III => "III",
            Scenario::IV => "IV",
        })
    }
}

/// Lexicographic measure: (cut-formula complexity, relevant premise height).
/// The relevant premise is the right one for mixes and the left one for (Cut_*).
pub type Measure = (usize, usize);

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TraceStep {
    pub addr: NodeAddr,
    pub scenario: Scenario,
    pub case: &'static str,
    pub before: Measure,
    /// Largest measure among the cut-like nodes the step created; `None` if
    /// the step closed the cut.
    pub after: Option<Measure>,
}

impl TraceStep {
    pub fn decreases(&self) -> bool {
        self.after.is_none_or(|a| a < self.before)
    }
}

impl fmt::Display for TraceStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (c, h) = self.before;
        write!(f, "{} {} {} {c},{h} -> ", self.addr, self.scenario, self.case)?;
        match self.after {
            Some((c, h)) => write!(f, "{c},{h}"),
            None => f.write_str("-"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct ReductionTrace {
    pub steps: Vec<TraceStep>,
}

impl fmt::Display for ReductionTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            writeln!(f, "{s}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Error)]
pub enum CutElimError {
    #[error("fuel exhausted after {} steps", trace.steps.len())]
    FuelExhausted { trace: ReductionTrace, partial: Box<Derivation> },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("node is not a constant atomic mix: {0}")]
    WrongNode(String),
    #[error(transparent)]
    Transform(#[from] TransformError),
    #[error("internal check failure: {0}")]
    CheckFailure(String),
}

impl From<crate::kernel::NodeError> for CutElimError {
    fn from(e: crate::kernel::NodeError) -> Self {
        CutElimError::CheckFailure(format!("{}: {}", e.reason, e.detail))
    }
}

pub type Result<T> = std::result::Result<T, CutElimError>;

/// Relabels every (Cut) as the cut-like rule its cut formula belongs to.
pub fn split_cuts(d: &Derivation) -> Derivation {
    let premises = d.premises.iter().map(split_cuts).collect();
    if d.rule != RuleId::Cut {
        return Derivation::node(d.rule, d.inst.clone(), d.conclusion.clone(), premises);
    }
    let cf = d.inst.cut_formula.clone().expect("cut carries :cutf");
    let at = d.inst.at.clone().expect("cut carries :at");
    let kind = classify_cut(&cf);
    let inst = if kind.rule() == RuleId::CutStar { Inst::cut(at, cf) } else { Inst::mix(vec![at], cf) };
    Derivation::node(kind.rule(), inst, d.conclusion.clone(), premises)
}

/// Leftmost cut-like node whose premises are cut-free.
pub fn find_uppermost(d: &Derivation) -> Option<NodeAddr> {
    fn go(d: &Derivation, addr: NodeAddr) -> Option<NodeAddr> {
        for (i, p) in d.premises.iter().enumerate() {
            if let Some(a) = go(p, addr.child(i)) {
                return Some(a);
            }
        }
        d.rule.is_cut_like().then_some(addr)
    }
    go(d, NodeAddr::root())
}

/// Replaces the constant atomic mix at `at` with (⊥) or a stack of (⊤).
pub fn eliminate_mix_const(d: &Derivation, at: &NodeAddr) -> Result<Derivation> {
    let node = d.get(at).ok_or_else(|| CutElimError::WrongNode(format!("no node at {at}")))?;
    let out = reduce::mix_const(node)?;
    Ok(d.replace(at, out))
}

/// The default fuel `10 · size · (max complexity + 1)²`.
pub fn default_fuel(d: &Derivation) -> usize {
    let c = d.max_complexity() + 1;
    10 * d.size() * c * c
}

/// Reduces uppermost cut-like nodes until none remain, spending one unit of
/// fuel per step.
pub fn eliminate_all(d: &Derivation, fuel: usize) -> Result<(Derivation, ReductionTrace)> {
    let mut d = discharge(d)?;
    let mut trace = ReductionTrace::default();
    while let Some(addr) = find_uppermost(&d) {
        if trace.steps.len() >= fuel {
            return Err(CutElimError::FuelExhausted { trace, partial: Box::new(d) });
        }
        let (next, step) = reduce_at(&d, &addr)?;
        trace.steps.push(step);
        d = discharge(&next)?;
    }
    Ok((d, trace))
}

/// Discharges every deferred (Con) node whose subtree is cut-free.
fn discharge(d: &Derivation) -> Result<Derivation> {
    if d.count(&|n| n.rule == RuleId::ConStruct) == 0 {
        return Ok(d.clone());
    }
    fn go(d: &Derivation) -> Result<(Derivation, bool)> {
        let mut clean = !d.rule.is_cut_like();
        let mut premises = Vec::with_capacity(d.premises.len());
        for p in &d.premises {
            let (p, c) = go(p)?;
            clean &= c;
            premises.push(p);
        }
        if d.rule == RuleId::ConStruct && clean {
            let at = d.inst.at.as_ref().expect("deferred con carries :at");
            return Ok((contract_structure(&premises[0], at)?, true));
        }
        clean &= d.rule != RuleId::ConStruct;
        Ok((Derivation::node(d.rule, d.inst.clone(), d.conclusion.clone(), premises), clean))
    }
    Ok(go(d)?.0)
}

/// Base derivation to cut-free Dagger derivation: identities are expanded,
/// (Con_F) nodes are resolved top-down on cut-free premises, cuts are split
/// and eliminated.
pub fn pipeline(d: &Derivation) -> Result<Derivation> {
    pipeline_with(d, None).map(|(d, _)| d)
}

/// [`pipeline`] with explicit fuel for the final elimination, returning its trace.
pub fn pipeline_with(d: &Derivation, fuel: Option<usize>) -> Result<(Derivation, ReductionTrace)> {
    let prepared = prepare(d)?;
    let split = split_cuts(&prepared);
    let fuel = fuel.unwrap_or_else(|| default_fuel(&split));
    eliminate_all(&split, fuel)
}

fn prepare(d: &Derivation) -> Result<Derivation> {
    match d.rule {
        RuleId::Id => Ok(derive_identity(&d.conclusion.succedent)),
        RuleId::ConF => {
            let premise = pipeline(&d.premises[0])?;
            let at = d.inst.at.clone().expect("ConF carries :at");
            let f = d.conclusion.antecedent.get(&at).and_then(|s| s.as_leaf()).expect("checked").clone();
            let rule = match f {
                _ if f.is_atomic() => RuleId::ConA,
                Formula::Box(_) => RuleId::ConBox,
                Formula::BBox(_) => RuleId::ConBBox,
                Formula::Impl(..) => RuleId::ConImpl,
                _ => return Ok(contract_formula(&premise, &at)?),
            };
            Ok(Derivation::infer(rule, Some(at), d.conclusion.clone(), vec![premise])?)
        }
        _ => {
            let premises = d.premises.iter().map(prepare).collect::<Result<Vec<_>>>()?;
            Ok(Derivation::infer_inst(d.rule, d.inst.clone(), d.conclusion.clone(), premises)?)
        }
    }
}

#[cfg(test)]
mod tests;
