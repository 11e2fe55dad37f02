//! Recomputes mu, discriminant and roots for every table row and prints
//! the rows that disagree with the transcribed values.

use linarr::catalogue::embedded_table;
use linarr::classify::reproduce_table;
use linarr::report::{render_table, OutputFormat};

fn main() {
    let report = reproduce_table(&embedded_table().entries);
    print!("{}", render_table(&report, OutputFormat::Markdown));
    for row in report.mismatches() {
        println!("{}: printed roots {:?}, recomputed {}", row.name, row.printed_roots, row.roots);
    }
}
