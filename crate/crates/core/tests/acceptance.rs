//! One PASS/FAIL line per acceptance criterion; exits non-zero on any FAIL.

mod common;

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use rand::Rng;

use tenseq::cutelim::{eliminate_all, eliminate_mix_const, pipeline_with, split_cuts};
use tenseq::kernel::{check, CalculusVariant::*, Derivation, Inst, NodeAddr, RuleId};
use tenseq::search::{gen_corpus, gen_cut_corpus, prove, SearchBudget};
use tenseq::syntax::{parse_sequent, Formula, Path, Sequent, Structure};
use tenseq::transform::{adjoin, contract_formula, from_dagger, from_ddagger, to_dagger, unadjoin, Adjunction};

struct Outcome {
    pass: bool,
    summary: String,
}

fn outcome(pass: bool, summary: impl Into<String>) -> Outcome {
    Outcome { pass, summary: summary.into() }
}

fn rule_schemas() -> Outcome {
    let table = common::rule_table();
    let bad: Vec<String> = table.iter().filter_map(|c| common::run_case(c).err()).collect();
    let rules = table.iter().map(|c| c.rule).collect::<std::collections::BTreeSet<_>>().len();
    let pass = bad.is_empty() && table.len() >= 40;
    outcome(
        pass,
        format!(
            "{} single-node checks over {rules} rules, {} disagreements {}",
            table.len(),
            bad.len(),
            bad.join("; ")
        ),
    )
}

fn hilbert_axioms() -> Outcome {
    let start = Instant::now();
    let mut proved = 0;
    let mut total = 0;
    let mut missing = Vec::new();
    for a in ["p0", "p0 & p1", "dia p0"] {
        for (nec, pos) in [("box", "dia"), ("bbox", "bdia")] {
            total += 1;
            let goal = parse_sequent(&format!("=> {nec} ~({a}) -> ~{pos} ({a})")).unwrap();
            match prove(&goal, Base, &SearchBudget::new(14)) {
                Ok(d) if check(&d, Base).is_ok() => proved += 1,
                _ => missing.push(goal.to_string()),
            }
        }
    }
    let mut adjunctions = 0;
    let mut adj_total = 0;
    let budget = SearchBudget::new(10);
    for (goal, adj) in [
        ("=> dia (p0 & p1) -> dia p0", Adjunction::DiaBBox),
        ("=> dia bbox p0 -> p0", Adjunction::DiaBBox),
        ("=> dia (p0 | p1) -> dia p1 | dia p0", Adjunction::DiaBBox),
        ("=> bdia p0 -> bdia (p0 | p1)", Adjunction::BDiaBox),
        ("=> bdia box p0 -> p0", Adjunction::BDiaBox),
        ("=> bdia (p0 & p1) -> bdia p1 & bdia p0", Adjunction::BDiaBox),
    ] {
        adj_total += 1;
        let d = prove(&parse_sequent(goal).unwrap(), Dagger, &budget).unwrap();
        let ok = adjoin(&d, adj)
            .and_then(|out| {
                let back = unadjoin(&out, adj)?;
                Ok(check(&out, Dagger).is_ok() && check(&back, Dagger).is_ok() && back.conclusion == d.conclusion)
            })
            .unwrap_or(false);
        adjunctions += ok as usize;
    }
    let t = start.elapsed();
    let pass = proved == total && adjunctions == adj_total && t < Duration::from_secs(5);
    outcome(
        pass,
        format!("{proved}/{total} duality axioms within depth 14, {adjunctions}/{adj_total} adjunction round trips, {t:.2?} {}", missing.join("; ")),
    )
}

fn invertibility() -> Outcome {
    let mut by_kind: BTreeMap<String, usize> = BTreeMap::new();
    let (mut n, mut ok) = (0, 0);
    let mut seed = 0;
    let mut first_failure = String::new();
    while n < 1000 {
        seed += 1;
        for d in common::dagger_corpus(seed, 20, 4) {
            if d.height() > 8 {
                continue;
            }
            for inv in common::inversions(&d) {
                if n == 1000 {
                    break;
                }
                n += 1;
                let kind = match &inv {
                    common::Inversion::Left(_, k) => format!("{k:?}").replace("(false)", "").replace("(true)", ""),
                    common::Inversion::Right(k) => format!("{k:?}R"),
                };
                *by_kind.entry(kind).or_default() += 1;
                let good = common::apply_inversion(&d, &inv).is_ok_and(|out| {
                    check(&out, Dagger).is_ok()
                        && out.height() <= d.height()
                        && out.conclusion == common::inverted(&d.conclusion, &inv)
                });
                if good {
                    ok += 1;
                } else if first_failure.is_empty() {
                    first_failure = format!(" first failure: {inv:?} on {}", d.conclusion);
                }
            }
        }
    }
    let kinds: Vec<String> = by_kind.iter().map(|(k, v)| format!("{k} {v}")).collect();
    outcome(
        ok == n && by_kind.len() == 7,
        format!("{ok}/{n} inversions check without growing ({}){first_failure}", kinds.join(", ")),
    )
}

fn contraction() -> Outcome {
    let cases = common::contraction_instances(4, 500, 4);
    let mut ok = 0;
    let mut errors: BTreeMap<String, usize> = BTreeMap::new();
    let mut sources: BTreeMap<&str, usize> = BTreeMap::new();
    for (d, at, source) in &cases {
        *sources.entry(source).or_default() += 1;
        let Some(Structure::Comma(a, _)) = d.conclusion.antecedent.get(at).cloned() else { continue };
        let want =
            Sequent::new(d.conclusion.antecedent.replace(at, (*a).clone()).unwrap(), d.conclusion.succedent.clone());
        match contract_formula(d, at) {
            Ok(out) if out.conclusion == want && out.is_cut_free() && check(&out, Dagger).is_ok() => ok += 1,
            Ok(_) => *errors.entry("wrong output".into()).or_default() += 1,
            Err(e) => *errors.entry(e.to_string().split(':').next().unwrap().to_string()).or_default() += 1,
        }
    }
    outcome(
        ok == cases.len() && cases.len() == 500,
        format!(
            "{ok}/{} contractions check with the contracted end sequent (sources {sources:?}){}",
            cases.len(),
            failures(&errors)
        ),
    )
}

struct Eliminated {
    goal: Sequent,
    out: Derivation,
}

fn cut_elimination(done: &mut Vec<Eliminated>) -> Outcome {
    let corpus = gen_cut_corpus(2026, 300, 4, 3);
    let (mut ok, mut decreasing, mut steps) = (0, 0, 0);
    let mut errors: BTreeMap<String, usize> = BTreeMap::new();
    let start = Instant::now();
    for (goal, d) in &corpus {
        match pipeline_with(d, None) {
            Ok((out, trace)) => {
                if out.is_cut_free() && &out.conclusion == goal && check(&out, Dagger).is_ok() {
                    ok += 1;
                    done.push(Eliminated { goal: goal.clone(), out });
                }
                decreasing += trace.steps.iter().all(|s| s.decreases()) as usize;
                steps += trace.steps.len();
            }
            Err(e) => *errors.entry(e.to_string().split(':').next().unwrap().to_string()).or_default() += 1,
        }
    }
    let cuts: usize = corpus.iter().map(|(_, d)| d.count(&|n| n.rule.is_cut_like())).sum();
    outcome(
        ok == 300 && decreasing == 300,
        format!(
            "{ok}/300 cut-free with identical end sequents ({cuts} cuts, {steps} steps, every step decreasing in {decreasing}/300, {:.2?}){}",
            start.elapsed(),
            failures(&errors)
        ),
    )
}

fn equivalence() -> Outcome {
    let mut corpus: Vec<(String, Derivation)> = common::golden_files();
    corpus.extend(gen_corpus(31, 100, 4).into_iter().enumerate().map(|(i, (_, d))| (format!("corpus {i}"), d)));
    corpus
        .extend(gen_cut_corpus(32, 50, 4, 2).into_iter().enumerate().map(|(i, (_, d))| (format!("cut corpus {i}"), d)));
    let (mut n, mut ok) = (0, 0);
    let mut failed = Vec::new();
    for (name, d) in &corpus {
        let dagger = if check(d, Base).is_ok() {
            n += 1;
            let there = to_dagger(d);
            let good = there.as_ref().is_ok_and(|t| {
                let back = from_dagger(t);
                check(t, Dagger).is_ok() && check(&back, Base).is_ok() && back.conclusion == d.conclusion
            });
            ok += good as usize;
            if !good {
                failed.push(format!("{name} base"));
            }
            there.ok()
        } else if check(d, Dagger).is_ok() {
            Some(d.clone())
        } else {
            from_ddagger(d).ok()
        };
        let Some(t) = dagger else { continue };
        n += 1;
        let dd = split_cuts(&t);
        let good = check(&dd, DoubleDagger).is_ok()
            && from_ddagger(&dd).is_ok_and(|back| check(&back, Dagger).is_ok() && back.conclusion == t.conclusion);
        ok += good as usize;
        if !good {
            failed.push(format!("{name} dagger"));
        }
    }
    outcome(ok == n, format!("{ok}/{n} round trips preserve end sequent and checkability {}", failed.join(", ")))
}

/// `Δ => x` for a random non-empty Δ, with x a constant.
fn constant_left<R: Rng>(x: &Formula, rng: &mut R) -> Derivation {
    let delta = match rng.gen_range(0..3) {
        0 => Structure::leaf(Formula::var(rng.gen_range(0..3))),
        1 => Structure::circ(Structure::comma(Structure::leaf(Formula::var(0)), Structure::leaf(Formula::var(1)))),
        _ => Structure::comma(
            Structure::leaf(Formula::dia(Formula::var(2))),
            Structure::bullet(Structure::leaf(Formula::var(1))),
        ),
    };
    let id = Derivation::axiom(RuleId::IdA, x.clone());
    if *x == Formula::Top {
        return Derivation::infer_inst(
            RuleId::TopRule,
            Inst::at_delta(Path::root(), delta.clone()),
            Sequent::new(delta, x.clone()),
            vec![id],
        )
        .unwrap();
    }
    // Δ[F] => F by (⊥) on the F leaf.
    let with_bot = Structure::comma(delta, Structure::leaf(Formula::Bot));
    let at = Path(vec![tenseq::syntax::Step::R]);
    Derivation::infer_inst(
        RuleId::BotRule,
        Inst::at_delta(at, Structure::leaf(Formula::Bot)),
        Sequent::new(with_bot, x.clone()),
        vec![id],
    )
    .unwrap()
}

fn constant_mixes() -> Outcome {
    let mut rng = common::rng(7);
    let (mut n, mut ok) = (0, 0);
    for (i, d) in common::dagger_corpus(8, 60, 3).into_iter().enumerate() {
        let ls = common::leaves(&d.conclusion.antecedent);
        if ls.is_empty() {
            continue;
        }
        let x = if i % 2 == 0 { Formula::Top } else { Formula::Bot };
        // Weaken x in next to up to three leaves; each copy is a hole.
        let mut right = d.clone();
        let mut holes = Vec::new();
        for _ in 0..rng.gen_range(1..=3) {
            let (p, _) = ls[rng.gen_range(0..ls.len())].clone();
            if holes.iter().any(|h: &Path| p.is_prefix_of(h)) {
                continue;
            }
            right = common::weaken_right(&right, &p, &x);
            holes.push(p.child(tenseq::syntax::Step::R));
        }
        let left = constant_left(&x, &mut rng);
        let ante = tenseq::syntax::plug(&right.conclusion.antecedent, &holes, &left.conclusion.antecedent).unwrap();
        let concl = Sequent::new(ante, right.conclusion.succedent.clone());
        let mix = Derivation::infer_inst(RuleId::MixA, Inst::mix(holes, x.clone()), concl, vec![left, right]).unwrap();
        n += 1;
        let direct = eliminate_mix_const(&mix, &NodeAddr::root());
        let traced = eliminate_all(&mix, 1);
        let good = direct
            .is_ok_and(|out| out.is_cut_free() && check(&out, Dagger).is_ok() && out.conclusion == mix.conclusion)
            && traced.is_ok_and(|(out, t)| t.steps.len() == 1 && t.steps[0].case == "const" && out.is_cut_free());
        ok += good as usize;
    }
    outcome(ok == n && n >= 50, format!("{ok}/{n} constant mixes (⊤ and ⊥, 1–3 holes) removed in one step"))
}

fn oracle(done: &[Eliminated]) -> Outcome {
    let start = Instant::now();
    let mut ok = 0;
    let mut missing = Vec::new();
    for e in done {
        let budget = SearchBudget::new(e.out.height() + 2);
        match prove(&e.goal, Dagger, &budget) {
            Ok(d) if check(&d, Dagger).is_ok() => ok += 1,
            _ => missing.push(e.goal.to_string()),
        }
    }
    let shown: Vec<_> = missing.iter().take(3).cloned().collect();
    outcome(
        ok == done.len() && !done.is_empty(),
        format!(
            "{ok}/{} eliminated sequents re-proved by search at height + 2 ({:.2?}) {}",
            done.len(),
            start.elapsed(),
            shown.join("; ")
        ),
    )
}

fn main() {
    let start = Instant::now();
    let mut done = Vec::new();
    let results = [
        ("rule-schema fidelity", rule_schemas()),
        ("duality axioms and adjunctions", hilbert_axioms()),
        ("invertibility", invertibility()),
        ("contraction admissibility", contraction()),
        ("cut elimination", cut_elimination(&mut done)),
        ("calculus equivalence", equivalence()),
        ("constant mixes", constant_mixes()),
        ("oracle agreement", oracle(&done)),
    ];
    let mut failed = 0;
    for (i, (name, o)) in results.iter().enumerate() {
        println!("{} {}. {name}: {}", if o.pass { "PASS" } else { "FAIL" }, i + 1, o.summary.trim_end());
        failed += !o.pass as usize;
    }
    println!("{} of {} criteria passed in {:.1?}", results.len() - failed, results.len(), start.elapsed());
    if failed > 0 {
        std::process::exit(1);
    }
}

fn failures(errors: &BTreeMap<String, usize>) -> String {
    if errors.is_empty() {
        String::new()
    } else {
        format!(" failures {errors:?}")
    }
}
