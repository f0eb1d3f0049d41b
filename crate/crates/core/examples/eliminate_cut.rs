//! Cut elimination on a single derivation, printing the reduction trace.
//!
//! cargo run --example eliminate_cut -- [file.drv]

use tenseq::cutelim::pipeline_with;
use tenseq::kernel::{check, read_derivation, write_derivation, CalculusVariant};

const DEFAULT: &str = include_str!("../tests/golden/cut-5.drv");

fn main() {
    let text = match std::env::args().nth(1) {
        Some(path) => std::fs::read_to_string(path).expect("readable file"),
        None => DEFAULT.to_string(),
    };
    let d = read_derivation(&text).expect("derivation file");
    check(&d, CalculusVariant::Base).expect("input checks under base");
    println!("{}\n  {} nodes, {} cuts", d.conclusion, d.size(), d.count(&|n| n.rule.is_cut_like()));

    let (out, trace) = pipeline_with(&d, None).expect("elimination succeeds");
    print!("{trace}");
    check(&out, CalculusVariant::Dagger).unwrap();
    assert!(out.is_cut_free() && out.conclusion == d.conclusion);
    println!("cut-free, {} nodes, height {}\n", out.size(), out.height());
    print!("{}", write_derivation(&out));
}
