use super::{rebuild, Result};
use crate::kernel::{track, Derivation, Track};
use crate::syntax::{plug, Path, Sequent, Structure};

/// Rewrites `d` into a derivation of its end sequent with every hole replaced
/// by `with`, following the holes up through the tree. Nodes where some hole
/// is principal are handed to `active`, which must produce the derivation of
/// the substituted sequent for that subtree.
///
/// Heights never grow except inside `active`.
pub fn substitute<F>(d: &Derivation, holes: &[Path], with: &Structure, active: &mut F) -> Result<Derivation>
where
    F: FnMut(&Derivation, &[Path]) -> Result<Derivation>,
{
    if holes.is_empty() {
        return Ok(d.clone());
    }
    let mut per_premise: Vec<Vec<Path>> = vec![Vec::new(); d.premises.len()];
    for h in holes {
        match track(d, h) {
            Track::Active => return active(d, holes),
            Track::Moves(ms) => {
                for (i, p) in ms {
                    per_premise[i].push(p);
                }
            }
        }
    }
    let premises = d
        .premises
        .iter()
        .zip(&per_premise)
        .map(|(p, hs)| substitute(p, hs, with, active))
        .collect::<Result<Vec<_>>>()?;
    let ante =
        plug(&d.conclusion.antecedent, holes, with).map_err(|e| super::TransformError::Internal(e.to_string()))?;
    rebuild(d, Sequent::new(ante, d.conclusion.succedent.clone()), premises)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{check, read_derivation, CalculusVariant};
    use crate::syntax::{parse_structure, seq};

    fn structure(s: &str) -> Structure {
        parse_structure(s).unwrap()
    }

    fn weakened() -> Derivation {
        read_derivation("(rule Wk1 :concl \"p0, p1 => p0\" :inst (:at e) (ida \"p0 => p0\"))").unwrap()
    }

    #[test]
    fn weakened_holes_are_replaced_without_reaching_leaves() {
        let mut calls = 0;
        let out = substitute(&weakened(), &[Path::parse("R").unwrap()], &structure("p2, box p3"), &mut |_, _| {
            calls += 1;
            unreachable!()
        })
        .unwrap();
        assert_eq!(calls, 0);
        assert_eq!(out.conclusion, seq("p0, (p2, box p3) => p0"));
        assert_eq!(out.height(), 1);
        check(&out, CalculusVariant::Dagger).unwrap();
    }

    #[test]
    fn principal_holes_are_delegated() {
        let d = weakened();
        let mut seen = Vec::new();
        let r = substitute(&d, &[Path::parse("L").unwrap()], &structure("p2"), &mut |n, hs| {
            seen.push((n.rule, hs.to_vec()));
            Err(super::super::TransformError::Internal("stop".into()))
        });
        assert!(r.is_err());
        assert_eq!(seen, vec![(crate::kernel::RuleId::IdA, vec![Path::root()])]);
    }

    #[test]
    fn no_holes_is_identity() {
        let d = weakened();
        assert_eq!(substitute(&d, &[], &structure("p2"), &mut |_, _| unreachable!()).unwrap(), d);
    }
}
