//! Where a position of a conclusion's antecedent reappears in the premises.

use super::derivation::Derivation;
use super::rules::{Inst, RuleId};
use crate::syntax::{Path, Step};

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Track {
    /// The position is the rule's principal part or an ancestor of it.
    Active,
    /// The position reappears at these `(premise, path)` positions. Empty means
    /// the rule discards or replaces it.
    Moves(Vec<(usize, Path)>),
}

fn moves(v: Vec<(usize, Path)>) -> Track {
    Track::Moves(v)
}

fn path(steps: &[Step]) -> Path {
    Path(steps.to_vec())
}

/// Tracks position `p` of `d.conclusion.antecedent` into `d`'s premises.
pub fn track(d: &Derivation, p: &Path) -> Track {
    track_rule(d.rule, &d.inst, p)
}

/// As [`track`], from the rule and instantiation alone.
pub fn track_rule(rule: RuleId, inst: &Inst, p: &Path) -> Track {
    use RuleId::*;
    match rule {
        Id | IdA => return Track::Active,
        AndR => return moves(vec![(0, p.clone()), (1, p.clone())]),
        OrR1 | OrR2 => return moves(vec![(0, p.clone())]),
        ImplR => return moves(vec![(0, p.prefixed(&[Step::R]))]),
        DiaR | BDiaR => {
            return match p.0.split_first() {
                None => Track::Active,
                Some((_, rest)) => moves(vec![(0, path(rest))]),
            }
        }
        BoxR | BBoxR => return moves(vec![(0, p.prefixed(&[Step::U]))]),
        MixA | MixBox | MixBBox | MixImpl => {
            for h in &inst.holes {
                if let Some(q) = h.strip_from(p) {
                    if q.is_root() {
                        return Track::Active;
                    }
                    return moves(vec![(0, q)]);
                }
                if p.is_prefix_of(h) {
                    return Track::Active;
                }
            }
            return moves(vec![(1, p.clone())]);
        }
        _ => {}
    }
    let f = inst.at.as_ref().expect("rule acting on a position has :at");
    if let Some(q) = f.strip_from(p) {
        // p lies at or below the focus.
        return below_focus(rule, f, &q);
    }
    if p.is_prefix_of(f) {
        return Track::Active;
    }
    // Disjoint from the focus.
    match rule {
        BotRule | DualCircBullet | DualBulletCirc => moves(vec![]),
        ImplL | Cut | CutStar => moves(vec![(1, p.clone())]),
        OrL => moves(vec![(0, p.clone()), (1, p.clone())]),
        _ => moves(vec![(0, p.clone())]),
    }
}

fn below_focus(rule: RuleId, f: &Path, q: &Path) -> Track {
    use RuleId::*;
    let steps = &q.0;
    match rule {
        TopRule => moves(vec![]),
        BotRule | Cut | CutStar => moves(vec![(0, q.clone())]),
        ImplL => match steps.split_first() {
            Some((Step::L, rest)) => moves(vec![(0, path(rest))]),
            _ => Track::Active,
        },
        ConCirc | ConBullet => match steps.as_slice() {
            [Step::U, Step::L, rest @ ..] => moves(vec![(0, f.join(&path(&[Step::L, Step::U])).join(&path(rest)))]),
            [Step::U, Step::R, rest @ ..] => moves(vec![(0, f.join(&path(&[Step::R, Step::U])).join(&path(rest)))]),
            _ => Track::Active,
        },
        Wk1 | Wk2 => match steps.split_first() {
            Some((Step::L, rest)) if rule == Wk1 => moves(vec![(0, f.join(&path(rest)))]),
            Some((Step::R, rest)) if rule == Wk2 => moves(vec![(0, f.join(&path(rest)))]),
            Some(_) => moves(vec![]),
            None => Track::Active,
        },
        Ex => match steps.split_first() {
            Some((Step::L, rest)) => moves(vec![(0, f.child(Step::R).join(&path(rest)))]),
            Some((Step::R, rest)) => moves(vec![(0, f.child(Step::L).join(&path(rest)))]),
            _ => Track::Active,
        },
        ConStruct => moves(vec![(0, f.child(Step::L).join(q)), (0, f.child(Step::R).join(q))]),
        DualCircBullet | DualBulletCirc => match steps.as_slice() {
            [Step::L, rest @ ..] => moves(vec![(0, path(&[Step::L, Step::U]).join(&path(rest)))]),
            [Step::R, Step::U, rest @ ..] => moves(vec![(0, path(&[Step::R]).join(&path(rest)))]),
            _ => Track::Active,
        },
        // Focus is a leaf or a modal wrapper of a leaf.
        _ => Track::Active,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::Path;

    fn p(s: &str) -> Path {
        Path::parse(s).unwrap()
    }

    #[test]
    fn principal_positions_are_active() {
        assert_eq!(track_rule(RuleId::AndL, &Inst::at(p("R")), &p("R")), Track::Active);
        assert_eq!(track_rule(RuleId::Wk1, &Inst::at(p("R")), &p("e")), Track::Active);
        assert_eq!(track_rule(RuleId::DiaR, &Inst::none(), &p("e")), Track::Active);
    }

    #[test]
    fn context_positions_move_into_premises() {
        assert_eq!(track_rule(RuleId::AndL, &Inst::at(p("R")), &p("L")), Track::Moves(vec![(0, p("L"))]));
        assert_eq!(track_rule(RuleId::DiaR, &Inst::none(), &p("U.L")), Track::Moves(vec![(0, p("L"))]));
        assert_eq!(track_rule(RuleId::BoxR, &Inst::none(), &p("L")), Track::Moves(vec![(0, p("U.L"))]));
        assert_eq!(track_rule(RuleId::ImplR, &Inst::none(), &p("e")), Track::Moves(vec![(0, p("R"))]));
        assert_eq!(track_rule(RuleId::OrL, &Inst::at(p("L")), &p("R")), Track::Moves(vec![(0, p("R")), (1, p("R"))]));
    }

    #[test]
    fn weakened_parts_vanish_and_exchanged_parts_swap() {
        assert_eq!(track_rule(RuleId::Wk1, &Inst::at(p("e")), &p("R")), Track::Moves(vec![]));
        assert_eq!(track_rule(RuleId::Wk1, &Inst::at(p("e")), &p("L.U")), Track::Moves(vec![(0, p("U"))]));
        assert_eq!(track_rule(RuleId::Ex, &Inst::at(p("e")), &p("L")), Track::Moves(vec![(0, p("R"))]));
    }

    #[test]
    fn discarding_rules_drop_the_context() {
        assert_eq!(track_rule(RuleId::BotRule, &Inst::at(p("L")), &p("R")), Track::Moves(vec![]));
        assert_eq!(track_rule(RuleId::ImplL, &Inst::at(p("R")), &p("L")), Track::Moves(vec![(1, p("L"))]));
    }

    #[test]
    fn mix_holes() {
        let inst = Inst::mix(vec![p("L"), p("R.L")], crate::syntax::fml("p0"));
        assert_eq!(track_rule(RuleId::MixA, &inst, &p("L")), Track::Active);
        assert_eq!(track_rule(RuleId::MixA, &inst, &p("R")), Track::Active);
        assert_eq!(track_rule(RuleId::MixA, &inst, &p("R.R")), Track::Moves(vec![(1, p("R.R"))]));
    }
}
