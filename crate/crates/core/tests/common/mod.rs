//! Shared fixtures: the rule table, golden files and generators.
#![allow(dead_code)]

use std::path::PathBuf;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tenseq::kernel::{check_node, read_derivation, CalculusVariant, Derivation, Inst, RuleId};
use tenseq::syntax::{parse_formula, parse_sequent, parse_structure, Formula, Path, Sequent, Step, Structure};

pub fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

pub fn golden(name: &str) -> Derivation {
    let text = std::fs::read_to_string(golden_dir().join(name)).unwrap();
    read_derivation(&text).unwrap_or_else(|e| panic!("{name}: {e}"))
}

/// Every `.drv` file, sorted by name.
pub fn golden_files() -> Vec<(String, Derivation)> {
    let mut names: Vec<String> = std::fs::read_dir(golden_dir())
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .filter(|n| n.ends_with(".drv"))
        .collect();
    names.sort();
    names.into_iter().map(|n| (n.clone(), golden(&n))).collect()
}

pub struct RuleCase {
    pub line: usize,
    /// `None` for a valid node, otherwise the expected reason.
    pub expect: Option<String>,
    pub variant: CalculusVariant,
    pub rule: RuleId,
    pub inst: Inst,
    pub conclusion: Sequent,
    pub premises: Vec<Sequent>,
}

pub fn rule_table() -> Vec<RuleCase> {
    let text = std::fs::read_to_string(golden_dir().join("rules.txt")).unwrap();
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split(" | ").collect();
        let mut head = fields[0].split_whitespace();
        let expect = match head.next().unwrap() {
            "+" => None,
            r => Some(r.trim_start_matches('-').to_string()),
        };
        let variant = head.next().unwrap().parse().unwrap();
        let rule = head.next().unwrap().parse().unwrap();
        let mut inst = Inst::none();
        if fields[1] != "-" {
            for kv in fields[1].split("; ") {
                let (k, v) = kv.split_once('=').unwrap();
                match k {
                    "at" => inst.at = Some(Path::parse(v).unwrap()),
                    "delta" => inst.delta = Some(parse_structure(v).unwrap()),
                    "cutf" => inst.cut_formula = Some(parse_formula(v).unwrap()),
                    "holes" => inst.holes = v.split_whitespace().map(|h| Path::parse(h).unwrap()).collect(),
                    _ => panic!("line {}: unknown key {k}", i + 1),
                }
            }
        }
        out.push(RuleCase {
            line: i + 1,
            expect,
            variant,
            rule,
            inst,
            conclusion: parse_sequent(fields[2]).unwrap_or_else(|e| panic!("line {}: {e}", i + 1)),
            premises: fields[3..]
                .iter()
                .map(|p| parse_sequent(p).unwrap_or_else(|e| panic!("line {}: {e}", i + 1)))
                .collect(),
        });
    }
    out
}

/// Runs one case; `Err` describes a disagreement with the table.
pub fn run_case(c: &RuleCase) -> Result<(), String> {
    let premises: Vec<&Sequent> = c.premises.iter().collect();
    let got = check_node(c.variant, c.rule, &c.inst, &c.conclusion, &premises);
    match (&c.expect, got) {
        (None, Ok(())) => Ok(()),
        (Some(want), Err(e)) if e.reason.to_string() == *want => Ok(()),
        (want, got) => Err(format!("line {}: {} expected {:?}, got {:?}", c.line, c.rule, want, got)),
    }
}

pub fn formula(depth: u32) -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![
        6 => (0u32..4).prop_map(Formula::var),
        1 => Just(Formula::Top),
        1 => Just(Formula::Bot),
    ];
    leaf.prop_recursive(depth, 24, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::impl_(a, b)),
            inner.clone().prop_map(Formula::dia),
            inner.clone().prop_map(Formula::boxed),
            inner.clone().prop_map(Formula::bdia),
            inner.prop_map(Formula::bbox),
        ]
    })
}

/// Non-empty structures.
pub fn structure(depth: u32) -> impl Strategy<Value = Structure> {
    formula(2).prop_map(Structure::leaf).prop_recursive(depth, 12, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Structure::comma(a, b)),
            inner.clone().prop_map(Structure::circ),
            inner.prop_map(Structure::bullet),
        ]
    })
}

pub fn sequent() -> impl Strategy<Value = Sequent> {
    (prop_oneof![1 => Just(Structure::Empty), 6 => structure(3)], formula(3)).prop_map(|(a, b)| Sequent::new(a, b))
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Leaf positions of an antecedent together with their formulas.
pub fn leaves(s: &Structure) -> Vec<(Path, Formula)> {
    s.leaf_paths().into_iter().map(|p| (p.clone(), s.get(&p).unwrap().as_leaf().unwrap().clone())).collect()
}

/// Weakens `x` in next to the leaf at `p`: `Γ[A]` becomes `Γ[A, x]`.
pub fn weaken_right(d: &Derivation, p: &Path, x: &Formula) -> Derivation {
    let a = d.conclusion.antecedent.get(p).unwrap().clone();
    let ante = d.conclusion.antecedent.replace(p, Structure::comma(a, Structure::leaf(x.clone()))).unwrap();
    let concl = Sequent::new(ante, d.conclusion.succedent.clone());
    Derivation::infer(RuleId::Wk1, Some(p.clone()), concl, vec![d.clone()]).unwrap()
}

/// A random context step below `d` that keeps the antecedent position `p`
/// inside the new antecedent; returns the step and `p`'s new position.
pub fn wrap_context<R: Rng>(d: &Derivation, p: &Path, rng: &mut R) -> (Derivation, Path) {
    let concl = &d.conclusion;
    let fresh = Formula::var(rng.gen_range(0..4));
    match rng.gen_range(0..4) {
        0 => {
            let ante = Structure::comma(Structure::leaf(fresh), concl.antecedent.clone());
            let s = Sequent::new(ante, concl.succedent.clone());
            let out = Derivation::infer(RuleId::Wk2, Some(Path::root()), s, vec![d.clone()]).unwrap();
            (out, Path(vec![Step::R]).join(p))
        }
        1 => {
            let ante = Structure::circ(concl.antecedent.clone());
            let s = Sequent::new(ante, Formula::dia(concl.succedent.clone()));
            let out = Derivation::infer(RuleId::DiaR, None, s, vec![d.clone()]).unwrap();
            (out, Path(vec![Step::U]).join(p))
        }
        2 => {
            let ante = Structure::bullet(concl.antecedent.clone());
            let s = Sequent::new(ante, Formula::bdia(concl.succedent.clone()));
            let out = Derivation::infer(RuleId::BDiaR, None, s, vec![d.clone()]).unwrap();
            (out, Path(vec![Step::U]).join(p))
        }
        _ => {
            let ante = Structure::comma(concl.antecedent.clone(), Structure::leaf(fresh.clone()));
            let s = Sequent::new(ante, concl.succedent.clone());
            let out = Derivation::infer(RuleId::Wk1, Some(Path::root()), s, vec![d.clone()]).unwrap();
            (out, Path(vec![Step::L]).join(p))
        }
    }
}

/// Cut-free Dagger derivations obtained from the seeded Base corpus.
pub fn dagger_corpus(seed: u64, count: usize, max_complexity: usize) -> Vec<Derivation> {
    tenseq::search::gen_corpus(seed, count, max_complexity)
        .into_iter()
        .map(|(_, d)| tenseq::transform::to_dagger(&d).unwrap())
        .collect()
}

#[derive(Clone, Debug)]
pub enum Inversion {
    Left(Path, tenseq::transform::LeftKind),
    Right(tenseq::transform::RightKind),
}

/// Every inversion applicable to the end sequent of `d`.
pub fn inversions(d: &Derivation) -> Vec<Inversion> {
    use tenseq::transform::{LeftKind, RightKind};
    let mut out = Vec::new();
    for (p, f) in leaves(&d.conclusion.antecedent) {
        match f {
            Formula::Or(..) => {
                out.push(Inversion::Left(p.clone(), LeftKind::Or(false)));
                out.push(Inversion::Left(p, LeftKind::Or(true)));
            }
            f => {
                if let Some(k) = LeftKind::of(&f) {
                    out.push(Inversion::Left(p, k));
                }
            }
        }
    }
    let nonempty = !d.conclusion.antecedent.is_empty();
    match &d.conclusion.succedent {
        Formula::Impl(..) => out.push(Inversion::Right(RightKind::Impl)),
        Formula::Box(_) if nonempty => out.push(Inversion::Right(RightKind::Box)),
        Formula::BBox(_) if nonempty => out.push(Inversion::Right(RightKind::BBox)),
        _ => {}
    }
    out
}

pub fn apply_inversion(d: &Derivation, inv: &Inversion) -> Result<Derivation, tenseq::transform::TransformError> {
    match inv {
        Inversion::Left(p, k) => tenseq::transform::invert_left(d, p, *k),
        Inversion::Right(k) => tenseq::transform::invert_right(d, *k),
    }
}

/// The sequent an inversion must produce.
pub fn inverted(s: &Sequent, inv: &Inversion) -> Sequent {
    use tenseq::transform::RightKind;
    match inv {
        Inversion::Left(p, k) => {
            let f = s.antecedent.get(p).unwrap().as_leaf().unwrap();
            Sequent::new(s.antecedent.replace(p, k.unfold(f).unwrap()).unwrap(), s.succedent.clone())
        }
        Inversion::Right(k) => match (&s.succedent, k) {
            (Formula::Impl(a, b), RightKind::Impl) => {
                let lead = Structure::leaf((**a).clone());
                let ante = if s.antecedent.is_empty() { lead } else { Structure::comma(lead, s.antecedent.clone()) };
                Sequent::new(ante, (**b).clone())
            }
            (Formula::Box(b), RightKind::Box) => Sequent::new(Structure::bullet(s.antecedent.clone()), (**b).clone()),
            (Formula::BBox(b), RightKind::BBox) => Sequent::new(Structure::circ(s.antecedent.clone()), (**b).clone()),
            _ => panic!("inversion does not apply"),
        },
    }
}

/// Cut-free Dagger derivations of `Γ[α, α] => β` with `c(α) <= max_c`, the
/// position of the pair and where the instance came from: premises of
/// (Con_F) in the Base corpus ("conf"), bounded search on a corpus sequent
/// with one formula doubled ("search"), or both copies used in separate
/// branches of (∧R) under random context steps ("branch").
pub fn contraction_instances(seed: u64, want: usize, max_c: usize) -> Vec<(Derivation, Path, &'static str)> {
    let mut r = rng(seed);
    let mut out = Vec::new();
    let mut round = 0;
    let budget = tenseq::search::SearchBudget { max_nodes: 50_000, ..tenseq::search::SearchBudget::new(8) };
    while out.len() < want {
        round += 1;
        for (_, d) in tenseq::search::gen_corpus(seed.wrapping_mul(1000).wrapping_add(round), 20, max_c) {
            for (_, n) in d.nodes() {
                if n.rule == RuleId::ConF {
                    let at = n.inst.at.clone().unwrap();
                    let f = n.conclusion.antecedent.get(&at).unwrap().as_leaf().unwrap();
                    if f.complexity() <= max_c {
                        out.push((tenseq::transform::to_dagger(&n.premises[0]).unwrap(), at, "conf"));
                    }
                }
            }
            let d = tenseq::transform::to_dagger(&d).unwrap();
            let ls: Vec<_> =
                leaves(&d.conclusion.antecedent).into_iter().filter(|(_, f)| f.complexity() <= max_c).collect();
            if ls.is_empty() {
                continue;
            }
            let (p, a) = ls[r.gen_range(0..ls.len())].clone();
            let pair = Structure::comma(Structure::leaf(a.clone()), Structure::leaf(a.clone()));
            let ante = d.conclusion.antecedent.replace(&p, pair).unwrap();
            let s = Sequent::new(ante.clone(), d.conclusion.succedent.clone());
            if r.gen_bool(0.5) {
                if let Ok(found) = tenseq::search::prove(&s, CalculusVariant::Dagger, &budget) {
                    out.push((found, p, "search"));
                    continue;
                }
            }
            let l = Derivation::infer(RuleId::Wk1, Some(p.clone()), s.clone(), vec![d.clone()]).unwrap();
            let rr = Derivation::infer(RuleId::Wk2, Some(p.clone()), s, vec![d.clone()]).unwrap();
            let both = Formula::and(d.conclusion.succedent.clone(), d.conclusion.succedent.clone());
            let mut e = Derivation::infer(RuleId::AndR, None, Sequent::new(ante, both), vec![l, rr]).unwrap();
            let mut at = p;
            for _ in 0..r.gen_range(0..3) {
                (e, at) = wrap_context(&e, &at, &mut r);
            }
            out.push((e, at, "branch"));
        }
    }
    out.truncate(want);
    out
}
