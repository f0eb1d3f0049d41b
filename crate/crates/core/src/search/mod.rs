//! Bounded backward proof search and a seeded corpus generator.
//!
//! Search is depth-first iterative deepening over the cut-free rule space of a
//! calculus variant. It is an oracle, not a decision procedure: "not found"
//! only means the budget was exhausted.

mod corpus;

use std::collections::{HashMap, HashSet};

use thiserror::Error;

use crate::kernel::{expected_premises, CalculusVariant, Derivation, Inst, RuleId};
use crate::syntax::{Formula, Path, Sequent, Structure};

pub use corpus::{gen_corpus, gen_cut_corpus, splice_cuts};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SearchBudget {
    /// Maximal height of the derivation searched for.
    pub max_depth: usize,
    /// Per branch, each of weakening, exchange, contraction and (⊤) is used
    /// backwards at most this many times.
    pub max_structure_size: usize,
    /// Prune sequents repeating on the current branch (modulo exchange).
    pub loop_check: bool,
    /// Number of goal expansions after which the search gives up.
    pub max_nodes: usize,
}

impl SearchBudget {
    pub fn new(max_depth: usize) -> SearchBudget {
        SearchBudget { max_depth, max_structure_size: 3, loop_check: true, max_nodes: 2_000_000 }
    }

    /// The small budget used when a transformer falls back to search.
    pub fn fallback() -> SearchBudget {
        SearchBudget { max_depth: 12, max_structure_size: 3, loop_check: true, max_nodes: 2_000_000 }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SearchError {
    #[error("invalid budget: {0}")]
    InvalidBudget(String),
    #[error("not found within budget")]
    NotFound,
}

/// Searches for a cut-free derivation of `goal` in `variant`.
pub fn prove(goal: &Sequent, variant: CalculusVariant, budget: &SearchBudget) -> Result<Derivation, SearchError> {
    if budget.max_depth == 0 {
        return Err(SearchError::InvalidBudget("max_depth must be at least 1".into()));
    }
    if goal.antecedent.has_embedded_empty() {
        return Err(SearchError::NotFound);
    }
    let mut s = Searcher {
        variant,
        budget,
        expanded: 0,
        aborted: false,
        failed: HashSet::new(),
        proved: HashMap::new(),
        branch: Vec::new(),
    };
    for depth in 0..=budget.max_depth {
        if let Some(d) = s.go(goal, depth, [0; 4], false) {
            debug_assert!(crate::kernel::check(&d, variant).is_ok());
            return Ok(d);
        }
        if s.aborted {
            break;
        }
    }
    Err(SearchError::NotFound)
}

/// Rate-limited rule classes.
#[derive(Clone, Copy)]
enum Class {
    Wk = 0,
    Ex = 1,
    Con = 2,
    Top = 3,
}

struct Searcher<'a> {
    variant: CalculusVariant,
    budget: &'a SearchBudget,
    expanded: usize,
    aborted: bool,
    failed: HashSet<(Sequent, usize, [u8; 4])>,
    proved: HashMap<Sequent, Derivation>,
    branch: Vec<(Sequent, Sequent)>,
}

/// Canonical representative modulo exchange.
fn ex_normal(s: &Structure) -> Structure {
    match s {
        Structure::Comma(a, b) => {
            let (a, b) = (ex_normal(a), ex_normal(b));
            if a <= b {
                Structure::comma(a, b)
            } else {
                Structure::comma(b, a)
            }
        }
        Structure::Circ(a) => Structure::circ(ex_normal(a)),
        Structure::Bullet(a) => Structure::bullet(ex_normal(a)),
        other => other.clone(),
    }
}

impl Searcher<'_> {
    fn go(&mut self, goal: &Sequent, depth: usize, counts: [u8; 4], via_ex: bool) -> Option<Derivation> {
        if let Some(d) = self.proved.get(goal) {
            if d.height() <= depth {
                return Some(d.clone());
            }
        }
        if self.aborted {
            return None;
        }
        let key = (goal.clone(), depth, counts);
        if self.failed.contains(&key) {
            return None;
        }
        self.expanded += 1;
        if self.expanded > self.budget.max_nodes {
            self.aborted = true;
            return None;
        }
        if let Structure::Leaf(a) = &goal.antecedent {
            if a == &goal.succedent {
                let rule = if self.variant == CalculusVariant::Base { RuleId::Id } else { RuleId::IdA };
                if rule == RuleId::Id || a.is_atomic() {
                    return Some(Derivation::axiom(rule, a.clone()));
                }
            }
        }
        if depth == 0 {
            return None;
        }
        // An exchange step changes nothing modulo exchange, so its premise is
        // only compared with the exact sequents on the branch.
        let norm = Sequent::new(ex_normal(&goal.antecedent), goal.succedent.clone());
        if self.budget.loop_check {
            let repeated = if via_ex {
                self.branch.iter().any(|(exact, _)| exact == goal)
            } else {
                self.branch.iter().any(|(_, n)| *n == norm)
            };
            if repeated {
                return None;
            }
        }
        self.branch.push((goal.clone(), norm));
        let found = self.expand(goal, depth, counts);
        self.branch.pop();
        match found {
            Some(d) => {
                self.proved.insert(goal.clone(), d.clone());
                Some(d)
            }
            None => {
                if !self.aborted {
                    self.failed.insert(key);
                }
                None
            }
        }
    }

    fn expand(&mut self, goal: &Sequent, depth: usize, counts: [u8; 4]) -> Option<Derivation> {
        'next: for (rule, inst, class) in self.candidates(goal, counts) {
            let Ok(premises) = expected_premises(rule, &inst, goal) else {
                continue;
            };
            if premises.iter().any(|p| p == goal) {
                continue;
            }
            let mut counts = counts;
            if let Some(c) = class {
                counts[c as usize] += 1;
            }
            let mut subs = Vec::with_capacity(premises.len());
            for p in &premises {
                match self.go(p, depth - 1, counts, rule == RuleId::Ex) {
                    Some(d) => subs.push(d),
                    None => continue 'next,
                }
            }
            return Some(Derivation::node(rule, inst, goal.clone(), subs));
        }
        None
    }

    /// Backward rule instances in the order: logical right, logical left,
    /// tense, dual, structural.
    fn candidates(&self, goal: &Sequent, counts: [u8; 4]) -> Vec<(RuleId, Inst, Option<Class>)> {
        use RuleId::*;
        let gamma = &goal.antecedent;
        let beta = &goal.succedent;
        let nodes: Vec<(Path, &Structure)> =
            gamma.node_paths().into_iter().filter_map(|p| gamma.get(&p).map(|s| (p, s))).collect();
        let mut out: Vec<(RuleId, Inst, Option<Class>)> = Vec::new();
        let mut push = |rule: RuleId, inst: Inst, class: Option<Class>| out.push((rule, inst, class));

        match beta {
            Formula::And(..) => push(AndR, Inst::none(), None),
            Formula::Or(..) => {
                push(OrR1, Inst::none(), None);
                push(OrR2, Inst::none(), None);
            }
            Formula::Impl(..) => push(ImplR, Inst::none(), None),
            _ => {}
        }
        for (p, s) in &nodes {
            match s {
                Structure::Leaf(Formula::And(..)) => push(AndL, Inst::at(p.clone()), None),
                Structure::Leaf(Formula::Or(..)) => push(OrL, Inst::at(p.clone()), None),
                Structure::Comma(_, b) if matches!(**b, Structure::Leaf(Formula::Impl(..))) => {
                    push(ImplL, Inst::at(p.clone()), None)
                }
                _ => {}
            }
        }
        for (p, s) in &nodes {
            match s {
                Structure::Leaf(Formula::Dia(_)) => push(DiaL, Inst::at(p.clone()), None),
                Structure::Leaf(Formula::BDia(_)) => push(BDiaL, Inst::at(p.clone()), None),
                _ => {}
            }
        }
        match (gamma, beta) {
            (Structure::Circ(_), Formula::Dia(_)) => push(DiaR, Inst::none(), None),
            (Structure::Bullet(_), Formula::BDia(_)) => push(BDiaR, Inst::none(), None),
            _ => {}
        }
        if !gamma.is_empty() {
            match beta {
                Formula::Box(_) => push(BoxR, Inst::none(), None),
                Formula::BBox(_) => push(BBoxR, Inst::none(), None),
                _ => {}
            }
        }
        for (p, s) in &nodes {
            match s {
                Structure::Bullet(b) if matches!(**b, Structure::Leaf(Formula::Box(_))) => {
                    push(BoxL, Inst::at(p.clone()), None)
                }
                Structure::Circ(b) if matches!(**b, Structure::Leaf(Formula::BBox(_))) => {
                    push(BBoxL, Inst::at(p.clone()), None)
                }
                _ => {}
            }
        }
        for (p, s) in &nodes {
            if s.is_empty() || (p.is_root() && *beta == Formula::Bot) {
                continue;
            }
            push(BotRule, Inst::at_delta(p.clone(), (*s).clone()), None);
        }
        for (p, s) in &nodes {
            if let Structure::Comma(_, b) = s {
                match **b {
                    Structure::Bullet(_) => push(DualCircBullet, Inst::at(p.clone()), None),
                    Structure::Circ(_) => push(DualBulletCirc, Inst::at(p.clone()), None),
                    _ => {}
                }
            }
        }
        let limit = self.budget.max_structure_size;
        let allowed = |c: Class| usize::from(counts[c as usize]) < limit;
        for (p, s) in &nodes {
            match s {
                Structure::Circ(b) if matches!(**b, Structure::Comma(..)) => push(ConCirc, Inst::at(p.clone()), None),
                Structure::Bullet(b) if matches!(**b, Structure::Comma(..)) => {
                    push(ConBullet, Inst::at(p.clone()), None)
                }
                _ => {}
            }
        }
        for (p, s) in &nodes {
            if let Structure::Comma(..) = s {
                if allowed(Class::Ex) {
                    push(Ex, Inst::at(p.clone()), Some(Class::Ex));
                }
                if allowed(Class::Wk) {
                    push(Wk1, Inst::at(p.clone()), Some(Class::Wk));
                    push(Wk2, Inst::at(p.clone()), Some(Class::Wk));
                }
            }
        }
        if allowed(Class::Con) {
            for (p, s) in &nodes {
                if let Structure::Leaf(f) = s {
                    let rule = match (self.variant, f) {
                        (CalculusVariant::Base, _) => ConF,
                        (_, f) if f.is_atomic() => ConA,
                        (_, Formula::Box(_)) => ConBox,
                        (_, Formula::BBox(_)) => ConBBox,
                        (_, Formula::Impl(..)) => ConImpl,
                        _ => continue,
                    };
                    push(rule, Inst::at(p.clone()), Some(Class::Con));
                }
            }
        }
        if allowed(Class::Top) {
            for (p, s) in &nodes {
                if !s.is_empty() && **s != Structure::leaf(Formula::Top) {
                    push(TopRule, Inst::at_delta(p.clone(), (*s).clone()), Some(Class::Top));
                }
            }
        }
        out.retain(|(r, _, _)| r.admitted_in(self.variant));
        out
    }
}
