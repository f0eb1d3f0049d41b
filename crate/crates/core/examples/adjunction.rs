//! The adjunction rules between the future and past modalities.
//!
//! cargo run --example adjunction

use tenseq::kernel::{check, CalculusVariant};
use tenseq::search::{prove, SearchBudget};
use tenseq::syntax::seq;
use tenseq::transform::{adjoin, unadjoin, Adjunction};

fn main() {
    let budget = SearchBudget::new(10);
    for (goal, adj) in [
        ("=> dia (p0 & p1) -> dia p0", Adjunction::DiaBBox),
        ("=> bdia p0 -> bdia (p0 | p1)", Adjunction::BDiaBox),
        ("dia bbox p0 => p0", Adjunction::DiaBBox),
    ] {
        let d = prove(&seq(goal), CalculusVariant::Dagger, &budget).expect("provable");
        let out = adjoin(&d, adj).unwrap();
        check(&out, CalculusVariant::Dagger).unwrap();
        let back = unadjoin(&out, adj).unwrap();
        check(&back, CalculusVariant::Dagger).unwrap();
        assert_eq!(back.conclusion, d.conclusion);
        println!("{:<30} ~> {:<30} ~> {}", d.conclusion.to_string(), out.conclusion.to_string(), back.conclusion);
    }
}
