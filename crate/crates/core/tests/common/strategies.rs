//! Proptest generators for arrangements, coordinate changes and matrices.

use linarr::arrangement::{Arrangement, ProjectiveLine};
use linarr::field::Scalar;
use proptest::prelude::*;

/// Integer line triples with at least `min` distinct lines after
/// projective normalization.
pub fn int_lines(max_d: usize, bound: i64) -> impl Strategy<Value = Vec<[i64; 3]>> {
    prop::collection::vec(prop::array::uniform3(-bound..=bound), 1..=max_d).prop_map(|ls| {
        let mut seen: Vec<ProjectiveLine> = Vec::new();
        let mut out = Vec::new();
        for l in ls {
            let Ok(p) = ProjectiveLine::from_ints(l[0], l[1], l[2]) else { continue };
            if !seen.contains(&p) {
                seen.push(p);
                out.push(l);
            }
        }
        out
    })
}

pub fn arrangement(max_d: usize, bound: i64) -> impl Strategy<Value = Arrangement> {
    int_lines(max_d, bound)
        .prop_filter("needs a line", |ls| !ls.is_empty())
        .prop_map(|ls| Arrangement::from_int_lines(&ls, None).unwrap())
}

fn det3(m: &[[i64; 3]; 3]) -> i64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// Invertible integer 3x3 matrices.
pub fn coordinate_change(bound: i64) -> impl Strategy<Value = [[Scalar; 3]; 3]> {
    prop::array::uniform3(prop::array::uniform3(-bound..=bound))
        .prop_filter("invertible", |m| det3(m) != 0)
        .prop_map(|m| m.map(|r| r.map(Scalar::from_int)))
}

/// Integer matrices of prescribed maximal rank, built as products.
pub fn int_matrix(max_dim: usize, bound: i64) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max_dim, 1..=max_dim, 1..=max_dim).prop_flat_map(move |(r, c, k)| {
        (
            prop::collection::vec(prop::collection::vec(-bound..=bound, k), r),
            prop::collection::vec(prop::collection::vec(-bound..=bound, c), k),
        )
            .prop_map(move |(a, b)| {
                (0..r).map(|i| (0..c).map(|j| (0..k).map(|t| a[i][t] * b[t][j]).sum()).collect()).collect()
            })
    })
}
