use std::fmt;

use super::check::{expected_premises, NodeError};
use super::rules::{Inst, RuleId};
use crate::syntax::{Formula, Path, Sequent, Structure};

/// Position of a node in a derivation: premise indices from the root.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct NodeAddr(pub Vec<usize>);

impl NodeAddr {
    pub fn root() -> NodeAddr {
        NodeAddr(Vec::new())
    }

    pub fn child(&self, i: usize) -> NodeAddr {
        let mut v = self.0.clone();
        v.push(i);
        NodeAddr(v)
    }
}

impl fmt::Display for NodeAddr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("@");
        }
        f.write_str("@")?;
        for (i, k) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(".")?;
            }
            write!(f, "{k}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for NodeAddr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Derivation {
    pub conclusion: Sequent,
    pub rule: RuleId,
    pub inst: Inst,
    pub premises: Vec<Derivation>,
}

impl Derivation {
    /// Builds a node without checking it.
    pub fn node(rule: RuleId, inst: Inst, conclusion: Sequent, premises: Vec<Derivation>) -> Derivation {
        Derivation { conclusion, rule, inst, premises }
    }

    pub fn axiom(rule: RuleId, f: Formula) -> Derivation {
        debug_assert!(rule.is_axiom());
        Derivation::node(rule, Inst::none(), Sequent::new(Structure::leaf(f.clone()), f), vec![])
    }

    /// `x => x` by the atomic identity.
    pub fn id_atom(f: Formula) -> Derivation {
        Derivation::axiom(RuleId::IdA, f)
    }

    /// Applies `rule` at `at` (if any) below `premises`, filling `:delta` from the
    /// conclusion, and verifies that the premises are exactly the expected ones.
    pub fn infer(
        rule: RuleId,
        at: Option<Path>,
        conclusion: Sequent,
        premises: Vec<Derivation>,
    ) -> Result<Derivation, NodeError> {
        let mut inst = Inst { at, ..Inst::default() };
        if rule.needs_delta() {
            if let Some(at) = &inst.at {
                inst.delta = conclusion.antecedent.get(at).cloned();
            }
        }
        Derivation::infer_inst(rule, inst, conclusion, premises)
    }

    pub fn infer_inst(
        rule: RuleId,
        inst: Inst,
        conclusion: Sequent,
        premises: Vec<Derivation>,
    ) -> Result<Derivation, NodeError> {
        let want = expected_premises(rule, &inst, &conclusion)?;
        if want.len() != premises.len() || want.iter().zip(&premises).any(|(w, p)| *w != p.conclusion) {
            return Err(NodeError {
                reason: super::check::Reason::WrongShape,
                detail: format!(
                    "{rule} at {:?} on {conclusion}: expected premises [{}], got [{}]",
                    inst.at,
                    want.iter().map(|s| s.to_string()).collect::<Vec<_>>().join("; "),
                    premises.iter().map(|p| p.conclusion.to_string()).collect::<Vec<_>>().join("; ")
                ),
            });
        }
        Ok(Derivation::node(rule, inst, conclusion, premises))
    }

    /// Axioms have height zero.
    pub fn height(&self) -> usize {
        self.premises.iter().map(|p| p.height() + 1).max().unwrap_or(0)
    }

    pub fn size(&self) -> usize {
        1 + self.premises.iter().map(Derivation::size).sum::<usize>()
    }

    pub fn is_cut_free(&self) -> bool {
        !self.rule.is_cut_like() && self.premises.iter().all(Derivation::is_cut_free)
    }

    /// True if no node uses `rule`.
    pub fn avoids(&self, rule: RuleId) -> bool {
        self.rule != rule && self.premises.iter().all(|p| p.avoids(rule))
    }

    pub fn count(&self, pred: &dyn Fn(&Derivation) -> bool) -> usize {
        usize::from(pred(self)) + self.premises.iter().map(|p| p.count(pred)).sum::<usize>()
    }

    pub fn get(&self, addr: &NodeAddr) -> Option<&Derivation> {
        let mut cur = self;
        for &i in &addr.0 {
            cur = cur.premises.get(i)?;
        }
        Some(cur)
    }

    /// Replaces the subtree at `addr`; the replacement must have the same conclusion
    /// for the result to stay valid.
    pub fn replace(&self, addr: &NodeAddr, with: Derivation) -> Derivation {
        fn go(d: &Derivation, steps: &[usize], with: Derivation) -> Derivation {
            match steps.split_first() {
                None => with,
                Some((&i, rest)) => {
                    let mut out = d.clone();
                    out.premises[i] = go(&d.premises[i], rest, with);
                    out
                }
            }
        }
        go(self, &addr.0, with)
    }

    /// Largest complexity of a cut formula in the tree.
    pub fn max_cut_complexity(&self) -> usize {
        let own = if self.rule.is_cut_like() {
            self.inst.cut_formula.as_ref().map(Formula::complexity).unwrap_or(0)
        } else {
            0
        };
        self.premises.iter().map(Derivation::max_cut_complexity).fold(own, usize::max)
    }

    /// Largest formula complexity in any sequent of the tree.
    pub fn max_complexity(&self) -> usize {
        self.premises.iter().map(Derivation::max_complexity).fold(self.conclusion.max_complexity(), usize::max)
    }

    /// Pre-order traversal with addresses.
    pub fn nodes(&self) -> Vec<(NodeAddr, &Derivation)> {
        let mut out = Vec::new();
        fn go<'a>(d: &'a Derivation, addr: &mut Vec<usize>, out: &mut Vec<(NodeAddr, &'a Derivation)>) {
            out.push((NodeAddr(addr.clone()), d));
            for (i, p) in d.premises.iter().enumerate() {
                addr.push(i);
                go(p, addr, out);
                addr.pop();
            }
        }
        go(self, &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Debug for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn go(d: &Derivation, depth: usize, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            write!(f, "{:width$}{} [{}", "", d.conclusion, d.rule, width = depth * 2)?;
            if let Some(at) = &d.inst.at {
                write!(f, " {at}")?;
            }
            if let Some(c) = &d.inst.cut_formula {
                write!(f, " cut {c}")?;
            }
            if !d.inst.holes.is_empty() {
                write!(f, " holes {:?}", d.inst.holes)?;
            }
            writeln!(f, "]")?;
            for p in &d.premises {
                go(p, depth + 1, f)?;
            }
            Ok(())
        }
        go(self, 0, f)
    }
}
