//! Runs the discriminant screen over the embedded table and lists the
//! arrangements whose quadratic has integer roots.

use linarr::catalogue::embedded_table;
use linarr::classify::{quadratic, screen};
use linarr::CombinatorialProfile;

fn main() {
    for e in embedded_table().entries {
        let profile = CombinatorialProfile::from_tvector(e.d, e.t.clone());
        if screen(&profile) {
            let q = quadratic(e.d as u64, profile.mu);
            println!("{:<8} mu={:<4} disc={:<2} roots {}", e.name, profile.mu, q.disc, q.roots);
        }
    }
}
