//! Runs the elimination pipeline over a seeded corpus of derivations with
//! spliced cuts and reports how many come out cut-free.
//!
//! cargo run --release --example corpus_elimination -- [seed] [count]

use std::collections::BTreeMap;
use std::time::Instant;

use tenseq::cutelim::{pipeline_with, CutElimError};
use tenseq::kernel::{check, CalculusVariant};
use tenseq::search::gen_cut_corpus;

fn main() {
    let mut args = std::env::args().skip(1);
    let seed: u64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(5);
    let count: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(300);

    let corpus = gen_cut_corpus(seed, count, 4, 3);
    let start = Instant::now();
    let mut ok = 0;
    let mut failures: BTreeMap<String, usize> = BTreeMap::new();
    let mut steps = 0;
    for (goal, d) in &corpus {
        match pipeline_with(d, None) {
            Ok((out, trace)) => {
                assert!(out.is_cut_free() && &out.conclusion == goal);
                check(&out, CalculusVariant::Dagger).expect("pipeline output checks");
                assert!(trace.steps.iter().all(|s| s.decreases()));
                steps += trace.steps.len();
                ok += 1;
            }
            Err(e) => {
                let key = match &e {
                    CutElimError::Transform(t) => {
                        format!("transform: {}", t.to_string().split(':').next().unwrap_or(""))
                    }
                    other => other.to_string(),
                };
                *failures.entry(key).or_default() += 1;
            }
        }
    }
    println!("{ok}/{} cut-free ({steps} reduction steps, {:.2?})", corpus.len(), start.elapsed());
    for (k, n) in failures {
        println!("  {n:4}  {k}");
    }
}
