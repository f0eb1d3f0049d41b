//! Translations between the three calculi.

use super::{contract_formula, derive_identity, rebuild, Result, TransformError};
use crate::kernel::{Derivation, Inst, RuleId};
use crate::syntax::{Formula, Sequent, Structure};

/// Base to Dagger: (Id) leaves are expanded to atomic identities and (Con_F)
/// nodes become the restricted contractions or are eliminated by
/// [`contract_formula`]. A (Con_F) on a compound formula with a cut above it
/// raises [`TransformError::NeedsPipeline`].
pub fn to_dagger(d: &Derivation) -> Result<Derivation> {
    match d.rule {
        RuleId::Id => Ok(derive_identity(&d.conclusion.succedent)),
        RuleId::ConF => {
            let premise = to_dagger(&d.premises[0])?;
            let at = d.inst.at.clone().expect("ConF carries :at");
            let f = d.conclusion.antecedent.get(&at).and_then(Structure::as_leaf).expect("checked").clone();
            let rule = match f {
                _ if f.is_atomic() => RuleId::ConA,
                Formula::Box(_) => RuleId::ConBox,
                Formula::BBox(_) => RuleId::ConBBox,
                Formula::Impl(..) => RuleId::ConImpl,
                _ => {
                    if !premise.is_cut_free() {
                        return Err(TransformError::NeedsPipeline(format!("contraction of {f} in {}", d.conclusion)));
                    }
                    return contract_formula(&premise, &at);
                }
            };
            Ok(Derivation::infer(rule, Some(at), d.conclusion.clone(), vec![premise])?)
        }
        _ => {
            let premises = d.premises.iter().map(to_dagger).collect::<Result<Vec<_>>>()?;
            rebuild(d, d.conclusion.clone(), premises)
        }
    }
}

/// Dagger to Base: restricted rules are special cases of the base ones.
pub fn from_dagger(d: &Derivation) -> Derivation {
    let rule = match d.rule {
        RuleId::IdA => RuleId::Id,
        RuleId::ConA | RuleId::ConBox | RuleId::ConBBox | RuleId::ConImpl => RuleId::ConF,
        r => r,
    };
    Derivation::node(rule, d.inst.clone(), d.conclusion.clone(), d.premises.iter().map(from_dagger).collect())
}

/// DoubleDagger to Dagger: a mix with n holes becomes n stacked cuts sharing
/// the left derivation; (Cut_*) becomes (Cut).
pub fn from_ddagger(d: &Derivation) -> Result<Derivation> {
    let premises = d.premises.iter().map(from_ddagger).collect::<Result<Vec<_>>>()?;
    match d.rule {
        RuleId::CutStar => Ok(Derivation::infer_inst(RuleId::Cut, d.inst.clone(), d.conclusion.clone(), premises)?),
        r if r.is_mix() => {
            let cf = d.inst.cut_formula.clone().expect("mix carries :cutf");
            let [left, right]: [Derivation; 2] = premises.try_into().expect("binary");
            let delta = left.conclusion.antecedent.clone();
            let mut acc = right;
            for h in &d.inst.holes {
                let ante = acc.conclusion.antecedent.replace(h, delta.clone()).expect("hole valid");
                let concl = Sequent::new(ante, acc.conclusion.succedent.clone());
                acc = Derivation::infer_inst(
                    RuleId::Cut,
                    Inst::cut(h.clone(), cf.clone()),
                    concl,
                    vec![left.clone(), acc],
                )?;
            }
            debug_assert_eq!(acc.conclusion, d.conclusion);
            Ok(acc)
        }
        _ => rebuild(d, d.conclusion.clone(), premises),
    }
}
