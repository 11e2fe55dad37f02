//! Classifies every embedded fixture arrangement exactly.

use linarr::catalogue::embedded_realizations;
use linarr::classify;

fn main() {
    for entry in embedded_realizations().entries {
        let arr = entry.realization.as_ref().expect("fixtures carry coordinates");
        let c = classify(arr).expect("classification succeeds");
        println!("{:<14} d={} t={} mu={} mdr={} generators={:?} {}", entry.name, c.d, c.t, c.mu, c.mdr, c.generator_degrees, c.verdict);
    }
}
