//! Identity expansion and the admissible macro rules built from primitives.
//!
//! cargo run --example identity_macros

use tenseq::kernel::{check, CalculusVariant};
use tenseq::syntax::{fml, parse_structure, Path};
use tenseq::transform::{admissible, derive_identity, structure_identity, Admissible, Modality};

fn main() {
    for text in ["p0", "box (p0 -> p1)", "bdia (p0 | ~p1) & dia T"] {
        let d = derive_identity(&fml(text));
        check(&d, CalculusVariant::DoubleDagger).unwrap();
        println!("{:<36} height {:>2}, {:>3} nodes", d.conclusion.to_string(), d.height(), d.size());
    }

    let s = parse_structure("o(p0, b(p1)), p2").unwrap();
    let d = structure_identity(&s, CalculusVariant::Dagger).unwrap();
    println!("{}", d.conclusion);

    let a = derive_identity(&fml("p0"));
    let b = derive_identity(&fml("p1"));
    let v = CalculusVariant::Dagger;
    for (rule, inputs) in [
        (Admissible::And, vec![a.clone(), b.clone()]),
        (Admissible::Impl, vec![a.clone(), b.clone()]),
        (Admissible::Mon(Modality::BBox), vec![a.clone()]),
    ] {
        let out = admissible(rule, &inputs, None, v).unwrap();
        check(&out, v).unwrap();
        println!("{:<14} {}", format!("{rule:?}"), out.conclusion);
    }

    let pair = structure_identity(&parse_structure("p0, p0").unwrap(), v).unwrap();
    let con = admissible(Admissible::Con, &[pair], Some(&Path::root()), v).unwrap();
    check(&con, v).unwrap();
    println!("{:<14} {}", "Con", con.conclusion);
}
