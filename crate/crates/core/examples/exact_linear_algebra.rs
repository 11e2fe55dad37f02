//! Exact rank and kernel over Q and Q(sqrt 2), modular rank, and lifting a
//! kernel vector from its images modulo primes.

use linarr::field::{FieldSpec, NumberField, Scalar};
use linarr::matrix::{int_matrix, kernel_basis, lift_kernel_vector, KernelLift, rank, rank_mod, Matrix};
use linarr::modular::Reduction;
use num_rational::BigRational;
use num_traits::{One, Zero};

fn main() {
    let q = NumberField::rationals();
    let m = int_matrix(3, &[&[3, 5, 7], &[11, 13, 17]]);
    println!("rank over Q: {}", rank(&q, &m));
    println!("kernel: {:?}", kernel_basis(&q, &m).iter().map(|v| v.iter().map(|x| x.to_literal(FieldSpec::Rationals)).collect::<Vec<_>>()).collect::<Vec<_>>());
    if let KernelLift::Vector(v) = lift_kernel_vector(&q, &m, None, 10).unwrap() {
        println!("lifted from modular images: {:?}", v.iter().map(|x| x.to_literal(FieldSpec::Rationals)).collect::<Vec<_>>());
    }

    let singular_mod_7 = int_matrix(2, &[&[2, 1], &[1, 4]]);
    for p in [7, 11] {
        println!("rank mod {p}: {}", rank_mod(&Reduction::new(FieldSpec::Rationals, p).unwrap(), &singular_mod_7).unwrap());
    }

    let spec = FieldSpec::quadratic(2).unwrap();
    let k = NumberField::new(spec);
    let s = Scalar::new(BigRational::zero(), BigRational::one());
    let m = Matrix::from_rows(2, vec![vec![s.clone(), Scalar::from_int(2)], vec![Scalar::one(), s]]).unwrap();
    let ker = kernel_basis(&k, &m);
    println!("rank over Q(sqrt 2): {}, kernel {:?}", rank(&k, &m), ker[0].iter().map(|x| x.to_literal(spec)).collect::<Vec<_>>());
}
