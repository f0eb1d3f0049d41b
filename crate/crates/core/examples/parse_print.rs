//! Parsing and canonical printing of formulas, structures and sequents.
//!
//! cargo run --example parse_print

use tenseq::syntax::{f_translate, parse_formula, parse_sequent, parse_structure};

fn main() {
    // -> associates to the right and binds weakest; ~a abbreviates a -> F.
    for text in ["p0 -> p1 -> p2", "(p0 -> p1) -> p2", "~dia p0 | box ~p0 & p1", "bdia bbox (p0&p1)"] {
        let f = parse_formula(text).expect("well-formed");
        println!("{text:<24} ~> {f}   (complexity {})", f.complexity());
    }

    let s = parse_structure("o(p0, p1), b(box p2)").unwrap();
    println!("\nstructure {s}\n  as formula {}", f_translate(&s));

    let q = parse_sequent("o(p0),b(p1)=>T").unwrap();
    println!("\nsequent {q}");

    match parse_sequent("p0 & => p1") {
        Ok(_) => unreachable!(),
        Err(e) => println!("\nrejected: {e}"),
    }
}
