//! Bounded backward proof search on the duality axioms.
//!
//! cargo run --release --example proof_search

use std::time::Instant;

use tenseq::kernel::{check, CalculusVariant};
use tenseq::search::{prove, SearchBudget, SearchError};
use tenseq::syntax::{parse_sequent, seq};

fn main() {
    let budget = SearchBudget::new(14);
    for a in ["p0", "p0 & p1", "dia p0"] {
        for (nec, pos) in [("box", "dia"), ("bbox", "bdia")] {
            let goal = parse_sequent(&format!("{nec} ~({a}) => ~{pos} ({a})")).unwrap();
            let t = Instant::now();
            let d = prove(&goal, CalculusVariant::Dagger, &budget).expect("duality axiom provable");
            check(&d, CalculusVariant::Dagger).unwrap();
            println!("{:<36} height {:>2}  {:?}", goal.to_string(), d.height(), t.elapsed());
        }
    }

    // Not valid, so exhausts the budget; and commas do not regroup without cut.
    for goal in ["p0 => p1", "p0, (p1, (p0 & p1 -> p2)) => p2"] {
        let r = prove(&seq(goal), CalculusVariant::Dagger, &SearchBudget::new(8));
        assert_eq!(r, Err(SearchError::NotFound));
        println!("{goal:<36} not found");
    }
}
