use std::fmt;
use std::rc::Rc;

/// Object-language formulas.
///
/// Negation is not a constructor: `~a` is `Impl(a, Bot)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Var(u32),
    Top,
    Bot,
    Impl(Rc<Formula>, Rc<Formula>),
    And(Rc<Formula>, Rc<Formula>),
    Or(Rc<Formula>, Rc<Formula>),
    /// Future possibility.
    Dia(Rc<Formula>),
    /// Future necessity, adjoint of `BDia`.
    Box(Rc<Formula>),
    /// Past possibility.
    BDia(Rc<Formula>),
    /// Past necessity, adjoint of `Dia`.
    BBox(Rc<Formula>),
}

impl Formula {
    pub fn var(i: u32) -> Formula {
        Formula::Var(i)
    }

    pub fn impl_(a: Formula, b: Formula) -> Formula {
        Formula::Impl(Rc::new(a), Rc::new(b))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Rc::new(a), Rc::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Rc::new(a), Rc::new(b))
    }

    pub fn negation(a: Formula) -> Formula {
        Formula::impl_(a, Formula::Bot)
    }

    pub fn dia(a: Formula) -> Formula {
        Formula::Dia(Rc::new(a))
    }

    pub fn boxed(a: Formula) -> Formula {
        Formula::Box(Rc::new(a))
    }

    pub fn bdia(a: Formula) -> Formula {
        Formula::BDia(Rc::new(a))
    }

    pub fn bbox(a: Formula) -> Formula {
        Formula::BBox(Rc::new(a))
    }

    /// Variables and the two constants.
    pub fn is_atomic(&self) -> bool {
        matches!(self, Formula::Var(_) | Formula::Top | Formula::Bot)
    }

    /// Number of connectives; atoms count zero.
    pub fn complexity(&self) -> usize {
        match self {
            Formula::Var(_) | Formula::Top | Formula::Bot => 0,
            Formula::Impl(a, b) | Formula::And(a, b) | Formula::Or(a, b) => 1 + a.complexity() + b.complexity(),
            Formula::Dia(a) | Formula::Box(a) | Formula::BDia(a) | Formula::BBox(a) => 1 + a.complexity(),
        }
    }

    /// Number of AST nodes.
    pub fn size(&self) -> usize {
        self.complexity() + self.leaf_count()
    }

    fn leaf_count(&self) -> usize {
        match self {
            Formula::Var(_) | Formula::Top | Formula::Bot => 1,
            Formula::Impl(a, b) | Formula::And(a, b) | Formula::Or(a, b) => a.leaf_count() + b.leaf_count(),
            Formula::Dia(a) | Formula::Box(a) | Formula::BDia(a) | Formula::BBox(a) => a.leaf_count(),
        }
    }

    pub fn is_negation(&self) -> bool {
        matches!(self, Formula::Impl(_, b) if **b == Formula::Bot)
    }
}

// Binding strength used by the printer and parser.
pub(crate) const PREC_IMPL: u8 = 1;
pub(crate) const PREC_OR: u8 = 2;
pub(crate) const PREC_AND: u8 = 3;
pub(crate) const PREC_UNARY: u8 = 4;

impl Formula {
    fn prec(&self) -> u8 {
        match self {
            Formula::Impl(_, b) if **b == Formula::Bot => PREC_UNARY,
            Formula::Impl(..) => PREC_IMPL,
            Formula::Or(..) => PREC_OR,
            Formula::And(..) => PREC_AND,
            _ => PREC_UNARY,
        }
    }

    fn write_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        let paren = self.prec() < min;
        if paren {
            f.write_str("(")?;
        }
        match self {
            Formula::Var(i) => write!(f, "p{i}")?,
            Formula::Top => f.write_str("T")?,
            Formula::Bot => f.write_str("F")?,
            Formula::Impl(a, b) if **b == Formula::Bot => {
                f.write_str("~")?;
                a.write_at(f, PREC_UNARY)?;
            }
            Formula::Impl(a, b) => {
                a.write_at(f, PREC_IMPL + 1)?;
                f.write_str(" -> ")?;
                b.write_at(f, PREC_IMPL)?;
            }
            Formula::Or(a, b) => {
                a.write_at(f, PREC_OR)?;
                f.write_str(" | ")?;
                b.write_at(f, PREC_OR + 1)?;
            }
            Formula::And(a, b) => {
                a.write_at(f, PREC_AND)?;
                f.write_str(" & ")?;
                b.write_at(f, PREC_AND + 1)?;
            }
            Formula::Dia(a) => write_unary(f, "dia", a)?,
            Formula::Box(a) => write_unary(f, "box", a)?,
            Formula::BDia(a) => write_unary(f, "bdia", a)?,
            Formula::BBox(a) => write_unary(f, "bbox", a)?,
        }
        if paren {
            f.write_str(")")?;
        }
        Ok(())
    }
}

fn write_unary(f: &mut fmt::Formatter<'_>, op: &str, body: &Formula) -> fmt::Result {
    f.write_str(op)?;
    f.write_str(" ")?;
    body.write_at(f, PREC_UNARY)
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_at(f, 0)
    }
}

impl fmt::Debug for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
