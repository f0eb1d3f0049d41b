use super::*;
use crate::kernel::{check, check_with, Admission, CalculusVariant};
use crate::search::{prove, SearchBudget};
use crate::syntax::{fml, seq, Path, Sequent};
use crate::transform::from_dagger;

fn dia_intro(f: &str) -> Derivation {
    let a = fml(f);
    Derivation::infer(RuleId::DiaR, None, seq(&format!("o({f}) => dia {f}")), vec![derive_identity(&a)]).unwrap()
}

fn cut_node(rule: RuleId, inst: Inst, concl: &str, left: Derivation, right: Derivation) -> Derivation {
    Derivation::infer_inst(rule, inst, seq(concl), vec![left, right]).unwrap()
}

fn assert_clean(out: &Derivation, concl: &Sequent) {
    assert!(out.is_cut_free());
    assert_eq!(&out.conclusion, concl);
    check(out, CalculusVariant::Dagger).unwrap();
}

#[test]
fn classification() {
    assert_eq!(classify_cut(&fml("p0")), CutKind::MixAtom(fml("p0")));
    assert_eq!(classify_cut(&fml("box p0")), CutKind::MixSharp(Sharp::Box, fml("p0")));
    assert_eq!(classify_cut(&fml("bbox p0")), CutKind::MixSharp(Sharp::BBox, fml("p0")));
    assert_eq!(classify_cut(&fml("p0 -> p1")), CutKind::MixImpl(fml("p0"), fml("p1")));
    assert_eq!(classify_cut(&fml("dia p0")), CutKind::Star(fml("dia p0")));
    assert_eq!(classify_cut(&fml("T")).rule(), RuleId::MixA);
}

#[test]
fn split_relabels_cuts() {
    let d = derive_identity(&fml("p0"));
    assert_eq!(split_cuts(&d), d);

    let on_atom = cut_node(RuleId::Cut, Inst::cut(Path::root(), fml("p0")), "p0 => p0", d.clone(), d.clone());
    let s = split_cuts(&on_atom);
    assert_eq!(s.rule, RuleId::MixA);
    assert_eq!(s.inst.holes.len(), 1);
    check(&s, CalculusVariant::DoubleDagger).unwrap();

    let on_dia = cut_node(
        RuleId::Cut,
        Inst::cut(Path::root(), fml("dia p0")),
        "o(p0) => dia p0",
        dia_intro("p0"),
        derive_identity(&fml("dia p0")),
    );
    let s = split_cuts(&on_dia);
    assert_eq!(s.rule, RuleId::CutStar);
    check(&s, CalculusVariant::DoubleDagger).unwrap();
}

#[test]
fn uppermost_is_the_upper_of_two_stacked_mixes() {
    let id = derive_identity(&fml("p0"));
    let upper = cut_node(RuleId::MixA, Inst::mix(vec![Path::root()], fml("p0")), "p0 => p0", id.clone(), id.clone());
    let lower = cut_node(RuleId::MixA, Inst::mix(vec![Path::root()], fml("p0")), "p0 => p0", id.clone(), upper);
    assert_eq!(find_uppermost(&lower), Some(NodeAddr(vec![1])));
    assert_eq!(find_uppermost(&id), None);
    let star = split_cuts(&cut_node(
        RuleId::Cut,
        Inst::cut(Path::root(), fml("dia p0")),
        "o(p0) => dia p0",
        dia_intro("p0"),
        derive_identity(&fml("dia p0")),
    ));
    assert_eq!(find_uppermost(&star), Some(NodeAddr::root()));
}

fn bot_left() -> Derivation {
    // p0, ~p0 => F
    Derivation::infer(
        RuleId::ImplL,
        Some(Path::root()),
        seq("p0, ~p0 => F"),
        vec![Derivation::id_atom(fml("p0")), Derivation::id_atom(fml("F"))],
    )
    .unwrap()
}

#[test]
fn constant_mixes() {
    // x = ⊥: one (⊥) on the left premise.
    let right =
        Derivation::infer(RuleId::BotRule, Some(Path::root()), seq("F => p1"), vec![Derivation::id_atom(fml("F"))])
            .unwrap();
    let mix = cut_node(RuleId::MixA, Inst::mix(vec![Path::root()], fml("F")), "p0, ~p0 => p1", bot_left(), right);
    let out = eliminate_mix_const(&mix, &NodeAddr::root()).unwrap();
    assert_eq!(out.rule, RuleId::BotRule);
    check(&out, CalculusVariant::Dagger).unwrap();

    // x = ⊤, n = 2: two (⊤).
    let top =
        Derivation::infer(RuleId::TopRule, Some(Path::root()), seq("p2 => T"), vec![Derivation::id_atom(fml("T"))])
            .unwrap();
    let right =
        Derivation::infer(RuleId::Wk1, Some(Path::root()), seq("T, T => T"), vec![Derivation::id_atom(fml("T"))])
            .unwrap();
    let mix = cut_node(
        RuleId::MixA,
        Inst::mix(vec![Path::parse("L").unwrap(), Path::parse("R").unwrap()], fml("T")),
        "p2, p2 => T",
        top,
        right,
    );
    let (out, trace) = eliminate_all(&mix, 10).unwrap();
    assert_eq!(trace.steps.len(), 1);
    assert_eq!(trace.steps[0].case, "const");
    assert_eq!(out.count(&|n| n.rule == RuleId::TopRule), 2);
    assert_clean(&out, &seq("p2, p2 => T"));

    // x = ⊤, n = 1, Δ = ⊤: a vacuous (⊤) over the right premise.
    let id = Derivation::id_atom(fml("T"));
    let mix = cut_node(RuleId::MixA, Inst::mix(vec![Path::root()], fml("T")), "T => T", id.clone(), id.clone());
    let out = eliminate_mix_const(&mix, &NodeAddr::root()).unwrap();
    assert_eq!(out.premises[0], id);

    assert!(matches!(eliminate_mix_const(&id, &NodeAddr::root()), Err(CutElimError::WrongNode(_))));
}

#[test]
fn star_on_dia_ends_in_or_right() {
    // ∘p0 => ◇p0 composed with ◇p0 => ◇p0 ∨ p1.
    let right =
        Derivation::infer(RuleId::OrR1, None, seq("dia p0 => dia p0 | p1"), vec![derive_identity(&fml("dia p0"))])
            .unwrap();
    let d = cut_node(
        RuleId::CutStar,
        Inst::cut(Path::root(), fml("dia p0")),
        "o(p0) => dia p0 | p1",
        dia_intro("p0"),
        right,
    );
    let (out, trace) = eliminate_all(&d, default_fuel(&d)).unwrap();
    assert_eq!(out.rule, RuleId::OrR1);
    assert_clean(&out, &seq("o(p0) => dia p0 | p1"));
    assert!(trace.steps.iter().all(TraceStep::decreases));
    assert!(prove(&out.conclusion, CalculusVariant::Dagger, &SearchBudget::new(out.height() + 2)).is_ok());
}

#[test]
fn star_on_conjunction_introduces_two_cuts_and_a_contraction() {
    let left =
        Derivation::infer(RuleId::AndR, None, seq("p0 => p0 & p0"), vec![Derivation::id_atom(fml("p0")); 2]).unwrap();
    let right = derive_identity(&fml("p0 & p0"));
    let d = cut_node(RuleId::CutStar, Inst::cut(Path::root(), fml("p0 & p0")), "p0 => p0 & p0", left, right);
    let (step_tree, step) = reduce_at(&d, &NodeAddr::root()).unwrap();
    assert_eq!((step.scenario, step.case), (Scenario::IV, "2.2"));
    assert_eq!(step_tree.rule, RuleId::ConStruct);
    assert_eq!(step_tree.count(&|n| n.rule.is_cut_like()), 2);
    check_with(&step_tree, Admission::WithDeferred(CalculusVariant::DoubleDagger)).unwrap();
    let (out, trace) = eliminate_all(&d, default_fuel(&d)).unwrap();
    assert_clean(&out, &seq("p0 => p0 & p0"));
    assert!(trace.steps.iter().all(TraceStep::decreases));
}

#[test]
fn atomic_mix_through_contraction() {
    // p1 => p0 mixed into p0, p0 => p0 & p0 contracted to p0 => p0 & p0.
    let pair = Derivation::infer(
        RuleId::AndR,
        None,
        seq("p0, p0 => p0 & p0"),
        vec![
            Derivation::infer(
                RuleId::Wk1,
                Some(Path::root()),
                seq("p0, p0 => p0"),
                vec![Derivation::id_atom(fml("p0"))],
            )
            .unwrap(),
            Derivation::infer(
                RuleId::Wk2,
                Some(Path::root()),
                seq("p0, p0 => p0"),
                vec![Derivation::id_atom(fml("p0"))],
            )
            .unwrap(),
        ],
    )
    .unwrap();
    let right = Derivation::infer(RuleId::ConA, Some(Path::root()), seq("p0 => p0 & p0"), vec![pair]).unwrap();
    let left = Derivation::infer(
        RuleId::AndL,
        Some(Path::root()),
        seq("p0 & p1 => p0"),
        vec![Derivation::infer(
            RuleId::Wk1,
            Some(Path::root()),
            seq("p0, p1 => p0"),
            vec![Derivation::id_atom(fml("p0"))],
        )
        .unwrap()],
    )
    .unwrap();
    let d = cut_node(RuleId::MixA, Inst::mix(vec![Path::root()], fml("p0")), "p0 & p1 => p0 & p0", left, right);
    let (_, step) = reduce_at(&d, &NodeAddr::root()).unwrap();
    assert_eq!((step.scenario, step.case), (Scenario::I, "2.3"));
    let (out, trace) = eliminate_all(&d, default_fuel(&d)).unwrap();
    assert_clean(&out, &seq("p0 & p1 => p0 & p0"));
    assert!(trace.steps.iter().all(TraceStep::decreases));
}

#[test]
fn box_cut_through_the_pipeline() {
    // Cut on □p0: p0 => □◆p0 and □◆p0 => □◆p0.
    let left = Derivation::infer(
        RuleId::BoxR,
        None,
        seq("p0 => box bdia p0"),
        vec![Derivation::infer(
            RuleId::BDiaR,
            None,
            seq("b(p0) => bdia p0"),
            vec![Derivation::axiom(RuleId::Id, fml("p0"))],
        )
        .unwrap()],
    )
    .unwrap();
    let right = Derivation::axiom(RuleId::Id, fml("box bdia p0"));
    let d = cut_node(RuleId::Cut, Inst::cut(Path::root(), fml("box bdia p0")), "p0 => box bdia p0", left, right);
    check(&d, CalculusVariant::Base).unwrap();
    let (out, trace) = pipeline_with(&d, None).unwrap();
    assert_clean(&out, &seq("p0 => box bdia p0"));
    assert!(trace.steps.iter().any(|s| s.scenario == Scenario::II));
    assert!(trace.steps.iter().all(TraceStep::decreases));
    check(&from_dagger(&out), CalculusVariant::Base).unwrap();
}

#[test]
fn implication_cut_splits_into_two_stages() {
    // Δ = p0 proves p1 -> p0; right premise p1, p1 -> p0 => p0.
    let left = Derivation::infer(
        RuleId::ImplR,
        None,
        seq("p0 => p1 -> p0"),
        vec![Derivation::infer(
            RuleId::Wk2,
            Some(Path::root()),
            seq("p1, p0 => p0"),
            vec![Derivation::id_atom(fml("p0"))],
        )
        .unwrap()],
    )
    .unwrap();
    let right = Derivation::infer(
        RuleId::ImplL,
        Some(Path::root()),
        seq("p1, p1 -> p0 => p0"),
        vec![Derivation::id_atom(fml("p1")), Derivation::id_atom(fml("p0"))],
    )
    .unwrap();
    let d = cut_node(
        RuleId::MixImpl,
        Inst::mix(vec![Path::parse("R").unwrap()], fml("p1 -> p0")),
        "p1, p0 => p0",
        left,
        right,
    );
    let (_, step) = reduce_at(&d, &NodeAddr::root()).unwrap();
    assert_eq!((step.scenario, step.case), (Scenario::III, "2.2"));
    assert!(step.decreases());
    let (out, _) = eliminate_all(&d, default_fuel(&d)).unwrap();
    assert_clean(&out, &seq("p1, p0 => p0"));
}

#[test]
fn contraction_above_a_cut_is_resolved_by_stage_order() {
    // ConF on p0 & p1 whose premise contains a cut.
    let idf = Derivation::axiom(RuleId::Id, fml("p0 & p1"));
    let cut = cut_node(RuleId::Cut, Inst::cut(Path::root(), fml("p0 & p1")), "p0 & p1 => p0 & p1", idf.clone(), idf);
    let wk = Derivation::infer(RuleId::Wk1, Some(Path::root()), seq("p0 & p1, p0 & p1 => p0 & p1"), vec![cut]).unwrap();
    let d = Derivation::infer(RuleId::ConF, Some(Path::root()), seq("p0 & p1 => p0 & p1"), vec![wk]).unwrap();
    check(&d, CalculusVariant::Base).unwrap();
    let out = pipeline(&d).unwrap();
    assert_clean(&out, &seq("p0 & p1 => p0 & p1"));
}

#[test]
fn fuel_zero_on_a_cut_is_exhausted() {
    let id = derive_identity(&fml("p0"));
    let d = cut_node(RuleId::MixA, Inst::mix(vec![Path::root()], fml("p0")), "p0 => p0", id.clone(), id);
    assert!(matches!(eliminate_all(&d, 0), Err(CutElimError::FuelExhausted { .. })));
}

#[test]
fn cut_free_input_is_unchanged() {
    let d = derive_identity(&fml("dia p0 -> p1"));
    let (out, trace) = eliminate_all(&d, 5).unwrap();
    assert_eq!(out, d);
    assert!(trace.steps.is_empty());
}

#[test]
fn reduce_rejects_non_uppermost() {
    let id = derive_identity(&fml("p0"));
    let upper = cut_node(RuleId::MixA, Inst::mix(vec![Path::root()], fml("p0")), "p0 => p0", id.clone(), id.clone());
    let lower = cut_node(RuleId::MixA, Inst::mix(vec![Path::root()], fml("p0")), "p0 => p0", id, upper);
    assert!(matches!(reduce_at(&lower, &NodeAddr::root()), Err(CutElimError::Precondition(_))));
}
