mod common;

use common::FIXTURES;
use linarr::arrangement::{defining_polynomial, milnor_number, t_vector, Arrangement};
use linarr::catalogue::embedded_realizations;
use linarr::syzygy::{self, jacobian, JacobianTriple};

fn jac(lines: &[[i64; 3]]) -> JacobianTriple {
    let arr = Arrangement::from_int_lines(lines, None).unwrap();
    jacobian(&arr.number_field(), &defining_polynomial(&arr))
}

#[test]
fn oracle_agrees_on_small_kernels() {
    assert_eq!(common::syzygy_dim(common::TRIANGLE, 0), 0);
    assert_eq!(common::syzygy_dim(common::TRIANGLE, 1), 2);
    assert_eq!(common::syzygy_dim(common::NEAR_PENCIL_4, 1), 1);
    assert_eq!(common::mdr(common::GENERIC_4), 2);
    assert_eq!(common::mdr(common::NON_FANO), 3);
    assert_eq!(common::hilbert(common::TRIANGLE, 0), 1);
    assert_eq!(common::hilbert(common::TRIANGLE, 4), 3);
    assert_eq!(common::hilbert(common::NEAR_PENCIL_4, 7), 7);
}

#[test]
fn fixture_catalogue_matches_oracle_lines() {
    let cat = embedded_realizations();
    for (name, lines, ..) in FIXTURES {
        let entry = cat.lookup(name).unwrap();
        let arr = entry.realization.as_ref().unwrap();
        assert_eq!(arr, &Arrangement::from_int_lines(lines, Some(name)).unwrap());
        let t: Vec<(usize, usize)> = t_vector(arr).counts().iter().map(|(&r, &n)| (r, n)).collect();
        let oracle: Vec<(usize, usize)> = common::t_vector(lines).into_iter().collect();
        assert_eq!(t, oracle, "{name}");
    }
}

#[test]
fn syzygy_dimensions_match_oracle() {
    for (name, lines, ..) in FIXTURES {
        let j = jac(lines);
        for k in 0..=lines.len() {
            assert_eq!(syzygy::syzygy_space(&j, k).len(), common::syzygy_dim(lines, k as u32), "{name} k={k}");
        }
    }
}

#[test]
fn mdr_and_generators_match_oracle() {
    for (name, lines, ..) in FIXTURES {
        let j = jac(lines);
        let d = lines.len();
        assert_eq!(syzygy::mdr(&j).unwrap() as u32, common::mdr(lines), "{name}");
        let lib: Vec<u32> = syzygy::generator_degrees(&j, None).unwrap().into_iter().map(|g| g as u32).collect();
        assert_eq!(lib, common::generator_degrees(lines, d as u32), "{name}");
    }
}

#[test]
fn hilbert_function_matches_oracle() {
    for (name, lines, ..) in FIXTURES {
        let j = jac(lines);
        let d = lines.len();
        for k in 0..=(3 * d - 5) {
            assert_eq!(syzygy::hilbert_function(&j, k), common::hilbert(lines, k as u32), "{name} k={k}");
        }
        let arr = Arrangement::from_int_lines(lines, None).unwrap();
        assert_eq!(syzygy::tau_stable(&j).unwrap() as u64, milnor_number(&t_vector(&arr)), "{name}");
    }
}

#[test]
fn generic_four_lines_tau() {
    assert_eq!(syzygy::tau_stable(&jac(common::GENERIC_4)).unwrap(), 6);
    assert_eq!(syzygy::tau_stable(&jac(common::NEAR_PENCIL_4)).unwrap(), 7);
}

#[test]
fn koszul_relations_lie_in_top_kernel() {
    for (_, lines, ..) in FIXTURES {
        let j = jac(lines);
        let m = j.map_matrix(lines.len() - 1);
        for v in j.koszul_syzygies() {
            assert!(m.mul_vec(j.field(), &v).iter().all(|x| x.is_zero()));
        }
    }
}
