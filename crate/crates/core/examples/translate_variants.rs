//! Moving derivations between the base, dagger and double-dagger calculi.
//!
//! cargo run --example translate_variants

use tenseq::cutelim::split_cuts;
use tenseq::kernel::{check, read_derivation, CalculusVariant::*};
use tenseq::transform::{from_dagger, from_ddagger, to_dagger};

const MIX: &str = include_str!("../tests/golden/mix2.drv");
const CUT: &str = include_str!("../tests/golden/cut-5.drv");

fn main() {
    let base = read_derivation(CUT).unwrap();
    check(&base, Base).unwrap();
    let dagger = to_dagger(&base).unwrap();
    check(&dagger, Dagger).unwrap();
    let ddagger = split_cuts(&dagger);
    check(&ddagger, DoubleDagger).unwrap();
    let again = from_dagger(&from_ddagger(&ddagger).unwrap());
    check(&again, Base).unwrap();
    println!("{}", base.conclusion);
    println!(
        "  base {} nodes -> dagger {} -> ddagger {} -> base {}",
        base.size(),
        dagger.size(),
        ddagger.size(),
        again.size()
    );

    let mix = read_derivation(MIX).unwrap();
    let cuts = from_ddagger(&mix).unwrap();
    check(&cuts, Dagger).unwrap();
    let n = cuts.count(&|n| n.rule.is_cut_like());
    println!("{}\n  a two-hole mix becomes {n} cuts", mix.conclusion);
}
