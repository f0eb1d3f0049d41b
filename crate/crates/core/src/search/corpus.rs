//! Seeded forward generation of base-calculus derivations.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::kernel::{check, CalculusVariant, Derivation, Inst, NodeAddr, RuleId};
use crate::syntax::{Formula, Path, Sequent, Step, Structure};
use crate::transform::{derive_identity, from_dagger, structure_identity};

const MAX_SEQUENT_SIZE: usize = 24;
const MAX_HEIGHT: usize = 9;

/// `count` cut-free base derivations built by applying random rules forward
/// from identities. The same seed always yields the same corpus.
pub fn gen_corpus(seed: u64, count: usize, max_complexity: usize) -> Vec<(Sequent, Derivation)> {
    let mut g = Gen::new(seed, max_complexity);
    (0..count).map(|_| g.derivation()).map(|d| (d.conclusion.clone(), d)).collect()
}

/// Like [`gen_corpus`], with between one and `max_cuts` cuts spliced into
/// each derivation.
pub fn gen_cut_corpus(seed: u64, count: usize, max_complexity: usize, max_cuts: usize) -> Vec<(Sequent, Derivation)> {
    let mut g = Gen::new(seed, max_complexity);
    (0..count)
        .map(|_| {
            let d = g.derivation();
            let n = g.rng.gen_range(1..=max_cuts.max(1));
            let d = splice_cuts(&d, &mut g.rng, n);
            (d.conclusion.clone(), d)
        })
        .collect()
}

/// Replaces `n` randomly chosen nodes by cuts with the same conclusion: a cut
/// against an expanded identity on the succedent, on a formula of the
/// antecedent, or on the formula translation of a substructure.
pub fn splice_cuts<R: Rng>(d: &Derivation, rng: &mut R, n: usize) -> Derivation {
    let mut d = d.clone();
    for _ in 0..n {
        let addrs: Vec<NodeAddr> = d.nodes().into_iter().map(|(a, _)| a).collect();
        let addr = addrs.choose(rng).expect("non-empty").clone();
        let node = d.get(&addr).expect("valid address").clone();
        let choice = rng.gen_range(0..3);
        let spliced = match choice {
            0 => cut_on_succedent(&node),
            1 => cut_on_antecedent(&node, rng),
            _ => cut_on_structure(&node, rng).or_else(|| cut_on_succedent(&node)),
        };
        if let Some(c) = spliced {
            d = d.replace(&addr, c);
        }
    }
    debug_assert!(check(&d, CalculusVariant::Base).is_ok());
    d
}

fn base_identity(f: &Formula) -> Derivation {
    from_dagger(&derive_identity(f))
}

fn cut(at: Path, cf: Formula, concl: Sequent, left: Derivation, right: Derivation) -> Option<Derivation> {
    Derivation::infer_inst(RuleId::Cut, Inst::cut(at, cf), concl, vec![left, right]).ok()
}

fn cut_on_succedent(node: &Derivation) -> Option<Derivation> {
    if node.conclusion.antecedent.is_empty() {
        return None;
    }
    let beta = node.conclusion.succedent.clone();
    cut(Path::root(), beta.clone(), node.conclusion.clone(), node.clone(), base_identity(&beta))
}

fn cut_on_antecedent<R: Rng>(node: &Derivation, rng: &mut R) -> Option<Derivation> {
    let leaves = node.conclusion.antecedent.leaf_paths();
    let p = leaves.choose(rng)?.clone();
    let f = node.conclusion.antecedent.get(&p)?.as_leaf()?.clone();
    cut(p, f.clone(), node.conclusion.clone(), base_identity(&f), node.clone())
}

fn cut_on_structure<R: Rng>(node: &Derivation, rng: &mut R) -> Option<Derivation> {
    let gamma = &node.conclusion.antecedent;
    let paths: Vec<Path> = gamma
        .node_paths()
        .into_iter()
        .filter(|p| gamma.get(p).is_some_and(|s| s.as_leaf().is_none() && !s.is_empty()))
        .collect();
    let p = paths.choose(rng)?.clone();
    let delta = gamma.get(&p)?.clone();
    let left = structure_identity(&delta, CalculusVariant::Base).ok()?;
    let right = crate::transform::fold_structure(node, &p).ok()?;
    cut(p, left.conclusion.succedent.clone(), node.conclusion.clone(), left, right)
}

struct Gen {
    rng: ChaCha8Rng,
    maxc: usize,
}

const FORWARD: [RuleId; 26] = {
    use RuleId::*;
    [
        AndR,
        OrR1,
        OrR2,
        ImplR,
        DiaR,
        BDiaR,
        BoxR,
        BBoxR,
        AndL,
        OrL,
        ImplL,
        DiaL,
        BDiaL,
        BoxL,
        BBoxL,
        TopRule,
        BotRule,
        DualCircBullet,
        DualBulletCirc,
        Wk1,
        Wk2,
        Ex,
        ConCirc,
        ConBullet,
        ConF,
        ImplL,
    ]
};

impl Gen {
    fn new(seed: u64, maxc: usize) -> Gen {
        Gen { rng: ChaCha8Rng::seed_from_u64(seed), maxc }
    }

    fn var(&mut self) -> Formula {
        Formula::var(self.rng.gen_range(0..3))
    }

    fn formula(&mut self, c: usize) -> Formula {
        if c == 0 || self.rng.gen_bool(0.3) {
            return match self.rng.gen_range(0..10) {
                0 => Formula::Top,
                1 => Formula::Bot,
                _ => self.var(),
            };
        }
        let c = c - 1;
        match self.rng.gen_range(0..7) {
            0 => Formula::and(self.formula(c / 2), self.formula(c / 2)),
            1 => Formula::or(self.formula(c / 2), self.formula(c / 2)),
            2 => Formula::impl_(self.formula(c / 2), self.formula(c / 2)),
            3 => Formula::dia(self.formula(c)),
            4 => Formula::boxed(self.formula(c)),
            5 => Formula::bdia(self.formula(c)),
            _ => Formula::bbox(self.formula(c)),
        }
    }

    fn small_structure(&mut self) -> Structure {
        let a = Structure::leaf(self.formula(1));
        match self.rng.gen_range(0..5) {
            0 => Structure::circ(a),
            1 => Structure::bullet(a),
            2 => Structure::comma(a, Structure::leaf(self.var())),
            _ => a,
        }
    }

    fn axiom(&mut self) -> Derivation {
        let c = self.rng.gen_range(0..=self.maxc.min(2));
        let f = self.formula(c);
        Derivation::axiom(RuleId::Id, f)
    }

    fn derivation(&mut self) -> Derivation {
        loop {
            let mut pool: Vec<Derivation> = (0..3).map(|_| self.axiom()).collect();
            let steps = self.rng.gen_range(3..12);
            let mut last = None;
            for _ in 0..steps * 4 {
                let rule = *FORWARD.choose(&mut self.rng).expect("non-empty");
                if let Some(d) = self.forward(rule, &pool) {
                    if self.acceptable(&d) {
                        last = Some(pool.len());
                        pool.push(d);
                    }
                }
                if pool.len() >= steps + 3 {
                    break;
                }
            }
            if let Some(i) = last {
                let d = pool.swap_remove(i);
                if check(&d, CalculusVariant::Base).is_ok() {
                    return d;
                }
            }
        }
    }

    fn acceptable(&self, d: &Derivation) -> bool {
        d.conclusion.size() <= MAX_SEQUENT_SIZE
            && d.conclusion.max_complexity() <= self.maxc
            && d.height() <= MAX_HEIGHT
            && !d.conclusion.antecedent.has_embedded_empty()
    }

    fn pick<'p>(&mut self, pool: &'p [Derivation]) -> &'p Derivation {
        pool.choose(&mut self.rng).expect("non-empty pool")
    }

    fn random_node(&mut self, s: &Structure, pred: impl Fn(&Structure) -> bool) -> Option<Path> {
        let paths: Vec<Path> = s.node_paths().into_iter().filter(|p| s.get(p).is_some_and(&pred)).collect();
        paths.choose(&mut self.rng).cloned()
    }

    fn forward(&mut self, rule: RuleId, pool: &[Derivation]) -> Option<Derivation> {
        use RuleId::*;
        let d = self.pick(pool).clone();
        let gamma = d.conclusion.antecedent.clone();
        let beta = d.conclusion.succedent.clone();
        let at_infer = |at: Path, ante: Structure, succ: Formula, ps: Vec<Derivation>| {
            Derivation::infer(rule, Some(at), Sequent::new(ante, succ), ps).ok()
        };
        let plain = |ante: Structure, succ: Formula, ps: Vec<Derivation>| {
            Derivation::infer(rule, None, Sequent::new(ante, succ), ps).ok()
        };
        match rule {
            AndR => {
                let partners: Vec<&Derivation> = pool.iter().filter(|e| e.conclusion.antecedent == gamma).collect();
                let e = (*partners.choose(&mut self.rng)?).clone();
                plain(gamma, Formula::and(beta, e.conclusion.succedent.clone()), vec![d, e])
            }
            OrR1 | OrR2 => {
                let other = self.formula(self.maxc / 2);
                let f = if rule == OrR1 { Formula::or(beta, other) } else { Formula::or(other, beta) };
                plain(gamma, f, vec![d])
            }
            ImplR => match &gamma {
                Structure::Leaf(a) => plain(Structure::Empty, Formula::impl_(a.clone(), beta), vec![d]),
                Structure::Comma(a, rest) => {
                    let a = a.as_leaf()?.clone();
                    plain((**rest).clone(), Formula::impl_(a, beta), vec![d])
                }
                _ => None,
            },
            DiaR if !gamma.is_empty() => plain(Structure::circ(gamma), Formula::dia(beta), vec![d]),
            BDiaR if !gamma.is_empty() => plain(Structure::bullet(gamma), Formula::bdia(beta), vec![d]),
            BoxR | BBoxR => match (&gamma, rule) {
                (Structure::Bullet(g), BoxR) => plain((**g).clone(), Formula::boxed(beta), vec![d]),
                (Structure::Circ(g), BBoxR) => plain((**g).clone(), Formula::bbox(beta), vec![d]),
                _ => None,
            },
            AndL => {
                let p = self.random_node(
                    &gamma,
                    |s| matches!(s, Structure::Comma(a, b) if a.as_leaf().is_some() && b.as_leaf().is_some()),
                )?;
                let Some(Structure::Comma(a, b)) = gamma.get(&p) else { return None };
                let f = Formula::and(a.as_leaf()?.clone(), b.as_leaf()?.clone());
                at_infer(p.clone(), gamma.replace(&p, Structure::leaf(f))?, beta, vec![d])
            }
            OrL => {
                let p = self.random_node(&gamma, |s| s.as_leaf().is_some())?;
                let a = gamma.get(&p)?.as_leaf()?.clone();
                let partners: Vec<(Formula, &Derivation)> = pool
                    .iter()
                    .filter(|e| e.conclusion.succedent == beta)
                    .filter_map(|e| {
                        let b = e.conclusion.antecedent.get(&p)?.as_leaf()?.clone();
                        (e.conclusion.antecedent == gamma.replace(&p, Structure::leaf(b.clone()))?).then_some((b, e))
                    })
                    .collect();
                let (b, e) = partners.choose(&mut self.rng)?.clone();
                let f = Formula::or(a, b);
                at_infer(p.clone(), gamma.replace(&p, Structure::leaf(f))?, beta, vec![d, e.clone()])
            }
            ImplL => {
                let p = self.random_node(&gamma, |s| s.as_leaf().is_some())?;
                let a2 = gamma.get(&p)?.as_leaf()?.clone();
                let e = self.pick(pool).clone();
                if e.conclusion.antecedent.is_empty() {
                    return None;
                }
                let imp = Formula::impl_(e.conclusion.succedent.clone(), a2);
                let ante =
                    gamma.replace(&p, Structure::comma(e.conclusion.antecedent.clone(), Structure::leaf(imp)))?;
                at_infer(p, ante, beta, vec![e, d])
            }
            DiaL | BDiaL => {
                let p = self.random_node(&gamma, |s| match (rule, s) {
                    (DiaL, Structure::Circ(a)) | (BDiaL, Structure::Bullet(a)) => a.as_leaf().is_some(),
                    _ => false,
                })?;
                let inner = match gamma.get(&p)? {
                    Structure::Circ(a) | Structure::Bullet(a) => a.as_leaf()?.clone(),
                    _ => return None,
                };
                let f = if rule == DiaL { Formula::dia(inner) } else { Formula::bdia(inner) };
                at_infer(p.clone(), gamma.replace(&p, Structure::leaf(f))?, beta, vec![d])
            }
            BoxL | BBoxL => {
                let p = self.random_node(&gamma, |s| s.as_leaf().is_some())?;
                let a = gamma.get(&p)?.as_leaf()?.clone();
                let s = if rule == BoxL {
                    Structure::bullet(Structure::leaf(Formula::boxed(a)))
                } else {
                    Structure::circ(Structure::leaf(Formula::bbox(a)))
                };
                at_infer(p.clone(), gamma.replace(&p, s)?, beta, vec![d])
            }
            TopRule => {
                let p = self.random_node(&gamma, |s| *s == Structure::leaf(Formula::Top))?;
                let delta = self.small_structure();
                at_infer(p.clone(), gamma.replace(&p, delta)?, beta, vec![d])
            }
            BotRule if beta == Formula::Bot && !gamma.is_empty() => {
                let side = self.small_structure();
                let (ante, at) = match self.rng.gen_range(0..3) {
                    0 => (Structure::comma(gamma, side), Path(vec![Step::L])),
                    1 => (Structure::comma(side, gamma), Path(vec![Step::R])),
                    _ => (Structure::circ(gamma), Path(vec![Step::U])),
                };
                let succ = self.formula(self.maxc);
                at_infer(at, ante, succ, vec![d])
            }
            DualCircBullet | DualBulletCirc if beta == Formula::Bot => {
                let Structure::Comma(l, inner) = &gamma else { return None };
                let ante = match (rule, &**l) {
                    (DualCircBullet, Structure::Circ(d1)) => {
                        Structure::comma((**d1).clone(), Structure::bullet((**inner).clone()))
                    }
                    (DualBulletCirc, Structure::Bullet(d1)) => {
                        Structure::comma((**d1).clone(), Structure::circ((**inner).clone()))
                    }
                    _ => return None,
                };
                let succ = if self.rng.gen_bool(0.5) { Formula::Bot } else { self.formula(self.maxc) };
                at_infer(Path::root(), ante, succ, vec![d])
            }
            Wk1 | Wk2 => {
                let p = self.random_node(&gamma, |s| !s.is_empty())?;
                let node = gamma.get(&p)?.clone();
                let extra = self.small_structure();
                let s = if rule == Wk1 { Structure::comma(node, extra) } else { Structure::comma(extra, node) };
                at_infer(p.clone(), gamma.replace(&p, s)?, beta, vec![d])
            }
            Ex => {
                let p = self.random_node(&gamma, |s| matches!(s, Structure::Comma(..)))?;
                let Some(Structure::Comma(a, b)) = gamma.get(&p) else { return None };
                let s = Structure::comma((**b).clone(), (**a).clone());
                at_infer(p.clone(), gamma.replace(&p, s)?, beta, vec![d])
            }
            ConCirc | ConBullet => {
                let p = self.random_node(&gamma, |s| match s {
                    Structure::Comma(a, b) => matches!(
                        (rule, &**a, &**b),
                        (ConCirc, Structure::Circ(_), Structure::Circ(_))
                            | (ConBullet, Structure::Bullet(_), Structure::Bullet(_))
                    ),
                    _ => false,
                })?;
                let Some(Structure::Comma(a, b)) = gamma.get(&p) else { return None };
                let (x, y) = match (&**a, &**b) {
                    (Structure::Circ(x), Structure::Circ(y)) | (Structure::Bullet(x), Structure::Bullet(y)) => {
                        ((**x).clone(), (**y).clone())
                    }
                    _ => return None,
                };
                let merged = Structure::comma(x, y);
                let s = if rule == ConCirc { Structure::circ(merged) } else { Structure::bullet(merged) };
                at_infer(p.clone(), gamma.replace(&p, s)?, beta, vec![d])
            }
            ConF => {
                let p = self
                    .random_node(&gamma, |s| matches!(s, Structure::Comma(a, b) if a == b && a.as_leaf().is_some()))?;
                let Some(Structure::Comma(a, _)) = gamma.get(&p) else { return None };
                let leaf = (**a).clone();
                at_infer(p.clone(), gamma.replace(&p, leaf)?, beta, vec![d])
            }
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_is_deterministic_and_checks() {
        let a = gen_corpus(1, 20, 3);
        let b = gen_corpus(1, 20, 3);
        assert_eq!(a, b);
        for (s, d) in &a {
            assert_eq!(&d.conclusion, s);
            check(d, CalculusVariant::Base).unwrap();
            assert!(d.is_cut_free());
            assert!(s.max_complexity() <= 3);
        }
    }

    #[test]
    fn spliced_corpus_checks_under_base() {
        let corpus = gen_cut_corpus(7, 100, 4, 3);
        let mut with_cut = 0;
        for (_, d) in &corpus {
            check(d, CalculusVariant::Base).unwrap();
            with_cut += usize::from(!d.is_cut_free());
        }
        assert!(with_cut > 90, "{with_cut}");
    }
}
