//! Height-preserving inversion of invertible left and right rules.
//!
//! cargo run --example inversion

use tenseq::kernel::{check, CalculusVariant};
use tenseq::search::{prove, SearchBudget};
use tenseq::syntax::{seq, Path, Step};
use tenseq::transform::{invert_left, invert_right, LeftKind, RightKind};

fn main() {
    let budget = SearchBudget::new(10);
    let d = prove(&seq("p2, dia (p0 & p1) => dia p1 | p2"), CalculusVariant::Dagger, &budget).unwrap();
    println!("input: {}   height {}", d.conclusion, d.height());

    let opened = invert_left(&d, &Path(vec![Step::R]), LeftKind::Dia).unwrap();
    let split = invert_left(&opened, &Path(vec![Step::R, Step::U]), LeftKind::And).unwrap();
    for x in [&opened, &split] {
        check(x, CalculusVariant::Dagger).unwrap();
        println!("  ~> {}   height {}", x.conclusion, x.height());
    }

    let b = prove(&seq("box p0, box p1 => box (p0 & p1)"), CalculusVariant::Dagger, &budget).unwrap();
    let inv = invert_right(&b, RightKind::Box).unwrap();
    check(&inv, CalculusVariant::Dagger).unwrap();
    println!("input: {}   height {}\n  ~> {}   height {}", b.conclusion, b.height(), inv.conclusion, inv.height());

    // Inversion needs the named connective at the position.
    println!("{}", invert_right(&b, RightKind::Impl).unwrap_err());
}
