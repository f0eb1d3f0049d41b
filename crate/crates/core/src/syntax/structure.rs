use std::fmt;
use std::rc::Rc;

use super::formula::Formula;

/// Antecedent structures: comma, `o(..)` and `b(..)` over formula leaves.
///
/// `Empty` is only legal as a whole antecedent.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Structure {
    Empty,
    Leaf(Formula),
    Comma(Rc<Structure>, Rc<Structure>),
    Circ(Rc<Structure>),
    Bullet(Rc<Structure>),
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Step {
    /// Left child of a comma.
    L,
    /// Right child of a comma.
    R,
    /// Body of `o(..)` or `b(..)`.
    U,
}

/// A position in a structure, read from the root.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Path(pub Vec<Step>);

impl Path {
    pub fn root() -> Path {
        Path(Vec::new())
    }

    pub fn is_root(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn child(&self, step: Step) -> Path {
        let mut v = self.0.clone();
        v.push(step);
        Path(v)
    }

    pub fn join(&self, other: &Path) -> Path {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Path(v)
    }

    pub fn prefixed(&self, prefix: &[Step]) -> Path {
        let mut v = prefix.to_vec();
        v.extend_from_slice(&self.0);
        Path(v)
    }

    pub fn is_prefix_of(&self, other: &Path) -> bool {
        other.0.len() >= self.0.len() && other.0[..self.0.len()] == self.0[..]
    }

    /// `other` with this path stripped from its front, if it is a prefix.
    pub fn strip_from(&self, other: &Path) -> Option<Path> {
        if self.is_prefix_of(other) {
            Some(Path(other.0[self.0.len()..].to_vec()))
        } else {
            None
        }
    }

    pub fn disjoint(&self, other: &Path) -> bool {
        !self.is_prefix_of(other) && !other.is_prefix_of(self)
    }

    pub fn parent(&self) -> Option<Path> {
        if self.0.is_empty() {
            None
        } else {
            Some(Path(self.0[..self.0.len() - 1].to_vec()))
        }
    }

    pub fn last(&self) -> Option<Step> {
        self.0.last().copied()
    }

    pub fn parse(text: &str) -> Option<Path> {
        let text = text.trim();
        if text == "e" {
            return Some(Path::root());
        }
        let mut steps = Vec::new();
        for tok in text.split('.') {
            steps.push(match tok {
                "L" => Step::L,
                "R" => Step::R,
                "U" => Step::U,
                _ => return None,
            });
        }
        Some(Path(steps))
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("e");
        }
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(".")?;
            }
            f.write_str(match s {
                Step::L => "L",
                Step::R => "R",
                Step::U => "U",
            })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Structure {
    pub fn leaf(f: Formula) -> Structure {
        Structure::Leaf(f)
    }

    pub fn comma(a: Structure, b: Structure) -> Structure {
        Structure::Comma(Rc::new(a), Rc::new(b))
    }

    pub fn circ(a: Structure) -> Structure {
        Structure::Circ(Rc::new(a))
    }

    pub fn bullet(a: Structure) -> Structure {
        Structure::Bullet(Rc::new(a))
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, Structure::Empty)
    }

    pub fn as_leaf(&self) -> Option<&Formula> {
        match self {
            Structure::Leaf(f) => Some(f),
            _ => None,
        }
    }

    /// Number of structure nodes plus the sizes of leaf formulas.
    pub fn size(&self) -> usize {
        match self {
            Structure::Empty => 0,
            Structure::Leaf(f) => f.size(),
            Structure::Comma(a, b) => 1 + a.size() + b.size(),
            Structure::Circ(a) | Structure::Bullet(a) => 1 + a.size(),
        }
    }

    /// Number of structure nodes, leaves included.
    pub fn node_count(&self) -> usize {
        match self {
            Structure::Empty => 0,
            Structure::Leaf(_) => 1,
            Structure::Comma(a, b) => 1 + a.node_count() + b.node_count(),
            Structure::Circ(a) | Structure::Bullet(a) => 1 + a.node_count(),
        }
    }

    /// True if `Empty` occurs anywhere other than as the whole structure.
    pub fn has_embedded_empty(&self) -> bool {
        fn inner(s: &Structure) -> bool {
            match s {
                Structure::Empty => true,
                Structure::Leaf(_) => false,
                Structure::Comma(a, b) => inner(a) || inner(b),
                Structure::Circ(a) | Structure::Bullet(a) => inner(a),
            }
        }
        match self {
            Structure::Empty => false,
            s => inner(s),
        }
    }

    pub fn get(&self, path: &Path) -> Option<&Structure> {
        let mut cur = self;
        for step in &path.0 {
            cur = match (cur, step) {
                (Structure::Comma(a, _), Step::L) => a,
                (Structure::Comma(_, b), Step::R) => b,
                (Structure::Circ(a), Step::U) | (Structure::Bullet(a), Step::U) => a,
                _ => return None,
            };
        }
        Some(cur)
    }

    pub fn is_valid_path(&self, path: &Path) -> bool {
        !self.is_empty() && self.get(path).is_some()
    }

    /// Replaces the subtree at `path`.
    pub fn replace(&self, path: &Path, with: Structure) -> Option<Structure> {
        self.replace_from(&path.0, with)
    }

    fn replace_from(&self, steps: &[Step], with: Structure) -> Option<Structure> {
        let Some((first, rest)) = steps.split_first() else {
            return Some(with);
        };
        Some(match (self, first) {
            (Structure::Comma(a, b), Step::L) => Structure::Comma(Rc::new(a.replace_from(rest, with)?), b.clone()),
            (Structure::Comma(a, b), Step::R) => Structure::Comma(a.clone(), Rc::new(b.replace_from(rest, with)?)),
            (Structure::Circ(a), Step::U) => Structure::Circ(Rc::new(a.replace_from(rest, with)?)),
            (Structure::Bullet(a), Step::U) => Structure::Bullet(Rc::new(a.replace_from(rest, with)?)),
            _ => return None,
        })
    }

    /// Paths of all leaves, left to right.
    pub fn leaf_paths(&self) -> Vec<Path> {
        let mut out = Vec::new();
        self.walk(&mut Path::root(), &mut |p, s| {
            if matches!(s, Structure::Leaf(_)) {
                out.push(p.clone());
            }
        });
        out
    }

    /// Paths of all nodes in pre-order.
    pub fn node_paths(&self) -> Vec<Path> {
        let mut out = Vec::new();
        if self.is_empty() {
            return out;
        }
        self.walk(&mut Path::root(), &mut |p, _| out.push(p.clone()));
        out
    }

    fn walk<F: FnMut(&Path, &Structure)>(&self, at: &mut Path, f: &mut F) {
        f(at, self);
        match self {
            Structure::Comma(a, b) => {
                at.0.push(Step::L);
                a.walk(at, f);
                at.0.pop();
                at.0.push(Step::R);
                b.walk(at, f);
                at.0.pop();
            }
            Structure::Circ(a) | Structure::Bullet(a) => {
                at.0.push(Step::U);
                a.walk(at, f);
                at.0.pop();
            }
            _ => {}
        }
    }

    /// Formulas at the leaves, left to right.
    pub fn formulas(&self) -> Vec<&Formula> {
        let mut out = Vec::new();
        fn go<'a>(s: &'a Structure, out: &mut Vec<&'a Formula>) {
            match s {
                Structure::Empty => {}
                Structure::Leaf(f) => out.push(f),
                Structure::Comma(a, b) => {
                    go(a, out);
                    go(b, out);
                }
                Structure::Circ(a) | Structure::Bullet(a) => go(a, out),
            }
        }
        go(self, &mut out);
        out
    }
}

/// Paths of the leaves of `s` that are syntactically equal to `f`.
pub fn occurrences(s: &Structure, f: &Formula) -> Vec<Path> {
    s.leaf_paths().into_iter().filter(|p| s.get(p).and_then(Structure::as_leaf) == Some(f)).collect()
}

/// The formula reading of a structure.
pub fn f_translate(s: &Structure) -> Formula {
    match s {
        Structure::Empty => Formula::Top,
        Structure::Leaf(f) => f.clone(),
        Structure::Comma(a, b) => Formula::and(f_translate(a), f_translate(b)),
        Structure::Circ(a) => Formula::dia(f_translate(a)),
        Structure::Bullet(a) => Formula::bdia(f_translate(a)),
    }
}

impl Structure {
    fn write_at(&self, f: &mut fmt::Formatter<'_>, grouped: bool) -> fmt::Result {
        match self {
            Structure::Empty => Ok(()),
            Structure::Leaf(a) => write!(f, "{a}"),
            Structure::Comma(a, b) => {
                if grouped {
                    f.write_str("(")?;
                }
                a.write_at(f, false)?;
                f.write_str(", ")?;
                b.write_at(f, true)?;
                if grouped {
                    f.write_str(")")?;
                }
                Ok(())
            }
            Structure::Circ(a) => {
                f.write_str("o(")?;
                a.write_at(f, false)?;
                f.write_str(")")
            }
            Structure::Bullet(a) => {
                f.write_str("b(")?;
                a.write_at(f, false)?;
                f.write_str(")")
            }
        }
    }
}

impl fmt::Display for Structure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_at(f, false)
    }
}

impl fmt::Debug for Structure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A structure with one designated hole.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Context {
    base: Structure,
    hole: Path,
}

impl Context {
    /// `None` if `hole` is not a position of `base`.
    pub fn new(base: Structure, hole: Path) -> Option<Context> {
        base.is_valid_path(&hole).then_some(Context { base, hole })
    }

    pub fn identity() -> Context {
        Context { base: Structure::leaf(Formula::Top), hole: Path::root() }
    }

    pub fn hole(&self) -> &Path {
        &self.hole
    }

    pub fn plug(&self, d: Structure) -> Structure {
        self.base.replace(&self.hole, d).expect("hole path checked at construction")
    }
}

/// A structure with `n >= 0` pairwise disjoint holes.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MultiContext {
    base: Structure,
    holes: Vec<Path>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ContextError {
    #[error("path {0} is not a position of the structure")]
    InvalidPath(Path),
    #[error("holes {0} and {1} overlap")]
    Overlap(Path, Path),
}

impl MultiContext {
    pub fn new(base: Structure, mut holes: Vec<Path>) -> Result<MultiContext, ContextError> {
        for h in &holes {
            if !base.is_valid_path(h) {
                return Err(ContextError::InvalidPath(h.clone()));
            }
        }
        holes.sort();
        holes.dedup();
        for (i, a) in holes.iter().enumerate() {
            for b in &holes[i + 1..] {
                if !a.disjoint(b) {
                    return Err(ContextError::Overlap(a.clone(), b.clone()));
                }
            }
        }
        Ok(MultiContext { base, holes })
    }

    pub fn holes(&self) -> &[Path] {
        &self.holes
    }

    pub fn base(&self) -> &Structure {
        &self.base
    }

    /// Plugs `d` into every hole at once. Disjoint holes keep their paths valid.
    pub fn plug(&self, d: &Structure) -> Structure {
        let mut out = self.base.clone();
        for h in &self.holes {
            out = out.replace(h, d.clone()).expect("holes are disjoint and valid");
        }
        out
    }
}

/// Plugs `d` at each of `holes` in `base`.
pub fn plug(base: &Structure, holes: &[Path], d: &Structure) -> Result<Structure, ContextError> {
    Ok(MultiContext::new(base.clone(), holes.to_vec())?.plug(d))
}
