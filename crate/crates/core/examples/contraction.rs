//! Admissible contraction of duplicated formulas and structures.
//!
//! cargo run --example contraction

use tenseq::kernel::{check, CalculusVariant, Derivation};
use tenseq::search::{prove, SearchBudget};
use tenseq::syntax::{seq, Path, Step};
use tenseq::transform::{contract_formula, contract_structure};

fn show(label: &str, d: &Derivation) {
    check(d, CalculusVariant::Dagger).expect("transformer output checks");
    println!("{label:<10} {}   ({} nodes, cut-free: {})", d.conclusion, d.size(), d.is_cut_free());
}

fn main() {
    let budget = SearchBudget::new(12);
    let d = prove(&seq("dia (p0 | p1), dia (p0 | p1) => dia p0 | dia p1"), CalculusVariant::Dagger, &budget).unwrap();
    show("input", &d);
    show("formula", &contract_formula(&d, &Path::root()).unwrap());

    let s = prove(&seq("o(p0, p1), o(p0, p1) => dia (p1 & p0)"), CalculusVariant::Dagger, &budget).unwrap();
    show("input", &s);
    show("structure", &contract_structure(&s, &Path::root()).unwrap());

    // Both copies must sit under the position given.
    let bad = prove(&seq("p0, (p1, p0) => p0"), CalculusVariant::Dagger, &budget).unwrap();
    println!("{}", contract_formula(&bad, &Path(vec![Step::R])).unwrap_err());
}
