//! Intersection points and combinatorial profile of an arrangement.
//!
//! `cargo run --example analyze_arrangement`

use linarr::arrangement::{singular_points, Arrangement};
use linarr::CombinatorialProfile;

fn main() {
    let arr = Arrangement::from_int_lines(
        &[[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, -1, 0], [1, 0, -1], [0, 1, -1], [1, 1, -1]],
        Some("non-Fano"),
    )
    .unwrap();
    for p in singular_points(&arr) {
        let c: Vec<String> = p.point.coords().iter().map(|x| x.to_literal(arr.field())).collect();
        println!("({}) on lines {:?}", c.join(" : "), p.incident);
    }
    let profile = CombinatorialProfile::of(&arr);
    println!("d={} t={} mu={} simplicial={}", profile.d, profile.t, profile.mu, profile.simplicial);
}
