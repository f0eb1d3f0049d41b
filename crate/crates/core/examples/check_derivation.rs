//! Reading a derivation file and checking it under each calculus.
//!
//! cargo run --example check_derivation

use tenseq::kernel::{check, read_derivation, CalculusVariant};

const TEXT: &str = r#"
(rule ImplR :concl "=> p0 & p1 -> dia o(p1)" :inst ()
  (rule AndL :concl "p0 & p1 => dia o(p1)" :inst (:at e)
    (rule Wk2 :concl "p0, p1 => dia o(p1)" :inst (:at e)
      (id "p1 => dia o(p1)"))))
"#;

fn main() {
    // The last sequent is deliberately malformed: `o(...)` is a structure, not a formula.
    match read_derivation(TEXT) {
        Ok(_) => unreachable!(),
        Err(e) => println!("format error: {e}"),
    }

    let fixed = TEXT.replace("dia o(p1)", "p1");
    let d = read_derivation(&fixed).unwrap();
    println!("read {} nodes, height {}", d.size(), d.height());
    for v in [CalculusVariant::Base, CalculusVariant::Dagger, CalculusVariant::DoubleDagger] {
        match check(&d, v) {
            Ok(()) => println!("{:>8}: ok", v.to_string()),
            Err(vs) => {
                for x in vs {
                    println!("{:>8}: {x}", v.to_string());
                }
            }
        }
    }

    let tampered = read_derivation(&fixed.replace("Wk2", "Wk1")).unwrap();
    for x in check(&tampered, CalculusVariant::Base).unwrap_err() {
        println!("tampered: {x}");
    }
}
