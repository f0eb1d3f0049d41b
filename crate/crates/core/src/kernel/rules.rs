use std::fmt;
use std::str::FromStr;

use crate::syntax::{Formula, Path, Structure};

/// The three calculi: the original, the one with restricted identity and
/// split contraction, and the one whose cut is split into cut-like rules.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum CalculusVariant {
    Base,
    Dagger,
    DoubleDagger,
}

impl FromStr for CalculusVariant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "base" => Ok(CalculusVariant::Base),
            "dagger" => Ok(CalculusVariant::Dagger),
            "ddagger" => Ok(CalculusVariant::DoubleDagger),
            other => Err(format!("unknown calculus `{other}` (expected base, dagger or ddagger)")),
        }
    }
}

impl fmt::Display for CalculusVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CalculusVariant::Base => "base",
            CalculusVariant::Dagger => "dagger",
            CalculusVariant::DoubleDagger => "ddagger",
        })
    }
}

macro_rules! rule_ids {
    ($($name:ident),* $(,)?) => {
        #[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
        pub enum RuleId {
            $($name),*
        }

        impl RuleId {
            pub const ALL: &'static [RuleId] = &[$(RuleId::$name),*];

            pub fn name(self) -> &'static str {
                match self {
                    $(RuleId::$name => stringify!($name)),*
                }
            }
        }

        impl FromStr for RuleId {
            type Err = String;

            fn from_str(s: &str) -> Result<Self, Self::Err> {
                match s {
                    $(stringify!($name) => Ok(RuleId::$name),)*
                    other => Err(format!("unknown rule `{other}`")),
                }
            }
        }
    };
}

rule_ids! {
    Id, IdA, TopRule, BotRule,
    AndL, AndR, OrL, OrR1, OrR2, ImplL, ImplR,
    DiaL, DiaR, BDiaL, BDiaR, BBoxL, BBoxR, BoxL, BoxR,
    ConCirc, ConBullet, ConF, ConA, ConBox, ConBBox, ConImpl,
    Wk1, Wk2, Ex, DualCircBullet, DualBulletCirc,
    Cut, MixA, MixBox, MixBBox, MixImpl, CutStar,
    ConStruct,
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl RuleId {
    pub fn arity(self) -> usize {
        use RuleId::*;
        match self {
            Id | IdA => 0,
            AndR | OrL | ImplL | Cut | MixA | MixBox | MixBBox | MixImpl | CutStar => 2,
            _ => 1,
        }
    }

    pub fn is_axiom(self) -> bool {
        self.arity() == 0
    }

    /// Cut and the four rules it is split into.
    pub fn is_cut_like(self) -> bool {
        use RuleId::*;
        matches!(self, Cut | MixA | MixBox | MixBBox | MixImpl | CutStar)
    }

    pub fn is_mix(self) -> bool {
        use RuleId::*;
        matches!(self, MixA | MixBox | MixBBox | MixImpl)
    }

    /// Rules that act on one position of the antecedent.
    pub fn needs_at(self) -> bool {
        use RuleId::*;
        !matches!(
            self,
            Id | IdA | AndR | OrR1 | OrR2 | ImplR | DiaR | BDiaR | BoxR | BBoxR | MixA | MixBox | MixBBox | MixImpl
        )
    }

    pub fn needs_delta(self) -> bool {
        matches!(self, RuleId::TopRule | RuleId::BotRule)
    }

    pub fn needs_cut_formula(self) -> bool {
        self.is_cut_like()
    }

    /// Right rules: the principal formula is the succedent.
    pub fn is_right_rule(self) -> bool {
        use RuleId::*;
        matches!(self, AndR | OrR1 | OrR2 | ImplR | DiaR | BDiaR | BoxR | BBoxR)
    }

    /// Rules whose premise does not keep the conclusion's succedent.
    pub fn discards_succedent(self) -> bool {
        use RuleId::*;
        matches!(self, BotRule | DualCircBullet | DualBulletCirc)
    }

    pub fn is_contraction(self) -> bool {
        use RuleId::*;
        matches!(self, ConF | ConA | ConBox | ConBBox | ConImpl | ConStruct)
    }

    /// Whether the variant admits the rule. `ConStruct` is never admitted; it
    /// only appears in working derivations of the cut-elimination engine.
    pub fn admitted_in(self, variant: CalculusVariant) -> bool {
        use CalculusVariant::*;
        use RuleId::*;
        match self {
            ConStruct => false,
            Id | ConF => variant == Base,
            IdA | ConA | ConBox | ConBBox | ConImpl => variant != Base,
            Cut => variant != DoubleDagger,
            MixA | MixBox | MixBBox | MixImpl | CutStar => variant == DoubleDagger,
            _ => true,
        }
    }
}

/// The instantiation record of a rule application: enough to compute the
/// premises from the conclusion without search.
///
/// Key usage per rule:
/// - `at`: every rule acting on one antecedent position (see [`RuleId::needs_at`]);
///   it names the principal node of the conclusion.
/// - `delta`: `TopRule`, `BotRule`; the replaced (resp. kept) structure at `at`.
/// - `cut_formula`: `Cut`, the mixes and `CutStar`.
/// - `holes`: the mixes; the positions of all replaced occurrences.
#[derive(Clone, PartialEq, Eq, Hash, Default, Debug)]
pub struct Inst {
    pub at: Option<Path>,
    pub delta: Option<Structure>,
    pub cut_formula: Option<Formula>,
    pub holes: Vec<Path>,
}

impl Inst {
    pub fn none() -> Inst {
        Inst::default()
    }

    pub fn at(path: Path) -> Inst {
        Inst { at: Some(path), ..Inst::default() }
    }

    pub fn at_delta(path: Path, delta: Structure) -> Inst {
        Inst { at: Some(path), delta: Some(delta), ..Inst::default() }
    }

    pub fn cut(path: Path, cut_formula: Formula) -> Inst {
        Inst { at: Some(path), cut_formula: Some(cut_formula), ..Inst::default() }
    }

    pub fn mix(holes: Vec<Path>, cut_formula: Formula) -> Inst {
        Inst { holes, cut_formula: Some(cut_formula), ..Inst::default() }
    }
}
