//! Classifies a 17-line realization with the modular prefilter. The minimal
//! relation degree is certified exactly; the verdict follows from it and
//! the combinatorics.

use std::path::PathBuf;
use std::time::Instant;

use linarr::catalogue;
use linarr::classify::{classify_with, ClassifyOptions};
use linarr::modular::primes_below_2_62;

fn main() {
    let path = std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data/a17_6.cat"));
    let text = std::fs::read_to_string(&path).expect("realization file is readable");
    let file = catalogue::parse(&text).expect("realization file parses");
    let arr = file.entries[0].realization.as_ref().expect("entry has coordinates");
    let prime = primes_below_2_62().next().unwrap();
    let start = Instant::now();
    let c = classify_with(arr, &ClassifyOptions { modulus: Some(prime), max_degree: None }).expect("classification succeeds");
    println!("{}: d={} t={} mu={} mdr={} tau={}", file.entries[0].name, c.d, c.t, c.mu, c.mdr, c.tau);
    println!("generator degrees {:?}, {}", c.generator_degrees, c.shape);
    println!("{}", c.verdict);
    for note in &c.notes {
        println!("note: {note}");
    }
    println!("elapsed {:.1?}", start.elapsed());
}
