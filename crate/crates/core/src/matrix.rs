//! Dense matrices over a [`Field`]: echelon forms, rank, kernel bases.
//!
//! Pivoting is deterministic everywhere (first nonzero entry of the leftmost
//! remaining column), so kernel bases do not depend on thread count or on
//! how many times a computation is repeated. Over `F_p` the row updates of
//! a large elimination run on the rayon pool; each row is touched by exactly
//! one task, so results are bit-identical to the sequential loop.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::field::{Field, FieldSpec, NumberField, PrimeField, Scalar};
use crate::modular::{primes_below_2_62, rational_reconstruction, Crt, ModularError, Reduction};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("row {row} has {len} entries, expected {expected}")]
    Ragged { row: usize, len: usize, expected: usize },
}

/// Row-major dense matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<E> {
    ncols: usize,
    rows: Vec<Vec<E>>,
}

/// A matrix over `Q` or `Q(sqrt n)`.
pub type ExactMatrix = Matrix<Scalar>;

impl<E: Clone> Matrix<E> {
    pub fn zeros(nrows: usize, ncols: usize, zero: E) -> Self {
        Matrix { ncols, rows: vec![vec![zero; ncols]; nrows] }
    }

    /// `ncols` is needed to describe matrices without rows.
    pub fn from_rows(ncols: usize, rows: Vec<Vec<E>>) -> Result<Self, MatrixError> {
        for (row, r) in rows.iter().enumerate() {
            if r.len() != ncols {
                return Err(MatrixError::Ragged { row, len: r.len(), expected: ncols });
            }
        }
        Ok(Matrix { ncols, rows })
    }

    pub fn identity<F: Field<Elem = E>>(field: &F, n: usize) -> Self {
        let mut m = Self::zeros(n, n, field.zero());
        for i in 0..n {
            m.rows[i][i] = field.one();
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.rows[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: E) {
        self.rows[i][j] = v;
    }

    pub fn rows(&self) -> &[Vec<E>] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<Vec<E>> {
        self.rows
    }

    pub fn transpose(&self) -> Self {
        let mut t = Vec::with_capacity(self.ncols);
        for j in 0..self.ncols {
            t.push(self.rows.iter().map(|r| r[j].clone()).collect());
        }
        Matrix { ncols: self.nrows(), rows: t }
    }

    pub fn try_map<E2, Err>(&self, mut f: impl FnMut(&E) -> Result<E2, Err>) -> Result<Matrix<E2>, Err> {
        let rows = self
            .rows
            .iter()
            .map(|r| r.iter().map(&mut f).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Matrix { ncols: self.ncols, rows })
    }

    pub fn mul_vec<F: Field<Elem = E>>(&self, field: &F, v: &[E]) -> Vec<E> {
        assert_eq!(v.len(), self.ncols, "vector length must match column count");
        self.rows
            .iter()
            .map(|r| {
                r.iter().zip(v).fold(field.zero(), |acc, (a, b)| {
                    if field.is_zero(a) || field.is_zero(b) {
                        acc
                    } else {
                        field.add(&acc, &field.mul(a, b))
                    }
                })
            })
            .collect()
    }
}

const PAR_THRESHOLD: usize = 1 << 16;

/// In-place Gauss-Jordan elimination. Returns the pivot columns.
///
/// With `reduced` the result is the reduced row echelon form (pivots equal
/// to one, zeros above and below); otherwise only entries below pivots are
/// cleared.
pub fn echelon_in_place<F: Field>(field: &F, rows: &mut [Vec<F::Elem>], ncols: usize, reduced: bool) -> Vec<usize> {
    let nrows = rows.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !field.is_zero(&rows[i][c])) else {
            continue;
        };
        rows.swap(r, p);
        let inv = field.inv(&rows[r][c]).expect("pivot is nonzero");
        for x in rows[r][c..].iter_mut() {
            if !field.is_zero(x) {
                *x = field.mul(x, &inv);
            }
        }
        let (head, tail) = rows.split_at_mut(r);
        let (pivot_row, below) = tail.split_first_mut().expect("pivot row exists");
        let eliminate = |row: &mut Vec<F::Elem>| {
            if field.is_zero(&row[c]) {
                return;
            }
            let factor = row[c].clone();
            for (x, y) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                if !field.is_zero(y) {
                    field.sub_mul_assign(x, &factor, y);
                }
            }
        };
        let work = (nrows - r) * (ncols - c);
        if work >= PAR_THRESHOLD {
            below.par_iter_mut().for_each(eliminate);
            if reduced {
                head.par_iter_mut().for_each(eliminate);
            }
        } else {
            below.iter_mut().for_each(eliminate);
            if reduced {
                head.iter_mut().for_each(eliminate);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Reduced row echelon form and its pivot columns.
pub fn rref<F: Field>(field: &F, m: &Matrix<F::Elem>) -> (Matrix<F::Elem>, Vec<usize>) {
    let mut rows = m.rows.clone();
    let pivots = echelon_in_place(field, &mut rows, m.ncols, true);
    (Matrix { ncols: m.ncols, rows }, pivots)
}

/// Rank by plain elimination; the natural choice over `F_p`.
pub fn rank_by_elimination<F: Field>(field: &F, m: &Matrix<F::Elem>) -> usize {
    let mut rows = m.rows.clone();
    echelon_in_place(field, &mut rows, m.ncols, false).len()
}

/// Kernel basis read off the reduced row echelon form: one vector per
/// non-pivot column `j`, with entry one at `j` and zero at the other
/// non-pivot columns.
pub fn kernel_basis<F: Field>(field: &F, m: &Matrix<F::Elem>) -> Vec<Vec<F::Elem>> {
    let (r, pivots) = rref(field, m);
    kernel_from_rref(field, &r, &pivots)
}

fn kernel_from_rref<F: Field>(field: &F, r: &Matrix<F::Elem>, pivots: &[usize]) -> Vec<Vec<F::Elem>> {
    let n = r.ncols;
    let mut is_pivot = vec![false; n];
    for &c in pivots {
        is_pivot[c] = true;
    }
    (0..n)
        .filter(|&j| !is_pivot[j])
        .map(|j| {
            let mut v = vec![field.zero(); n];
            v[j] = field.one();
            for (i, &c) in pivots.iter().enumerate() {
                v[c] = field.neg(&r.rows[i][j]);
            }
            v
        })
        .collect()
}

/// Fraction-free (Bareiss) rank of an integer matrix. Every intermediate
/// entry is a minor of the input, so all divisions are exact.
pub fn bareiss_rank_integer(mut rows: Vec<Vec<BigInt>>, ncols: usize) -> usize {
    let nrows = rows.len();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let (top, below) = rows.split_at_mut(r + 1);
        let pivot_row = &top[r];
        let pivot = &pivot_row[c];
        let update = |row: &mut Vec<BigInt>| {
            let factor = std::mem::take(&mut row[c]);
            for j in c + 1..ncols {
                let t = &row[j] * pivot - &factor * &pivot_row[j];
                row[j] = t / &prev;
            }
        };
        if (nrows - r) * (ncols - c) >= PAR_THRESHOLD / 16 {
            below.par_iter_mut().for_each(update);
        } else {
            below.iter_mut().for_each(update);
        }
        prev = rows[r][c].clone();
        r += 1;
    }
    r
}

/// Fraction-free elimination over an arbitrary exact field, dividing by the
/// previous pivot with the field's exact division.
pub fn bareiss_rank<F: Field>(field: &F, m: &Matrix<F::Elem>) -> usize {
    let mut rows = m.rows.clone();
    let nrows = rows.len();
    let ncols = m.ncols;
    let mut prev = field.one();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !field.is_zero(&rows[i][c])) else {
            continue;
        };
        rows.swap(r, p);
        let (top, below) = rows.split_at_mut(r + 1);
        let pivot_row = &top[r];
        for row in below.iter_mut() {
            let factor = std::mem::replace(&mut row[c], field.zero());
            for j in c + 1..ncols {
                let t = field.sub(&field.mul(&row[j], &pivot_row[c]), &field.mul(&factor, &pivot_row[j]));
                row[j] = field.div(&t, &prev).expect("previous pivot is nonzero");
            }
        }
        prev = rows[r][c].clone();
        r += 1;
    }
    r
}

/// Exact rank over `Q` or `Q(sqrt n)`.
///
/// Rational matrices are scaled row by row to integers and eliminated with
/// [`bareiss_rank_integer`]. A matrix `A + B sqrt(n)` over `Q(sqrt n)` is
/// replaced by the rational block matrix `[[A, nB], [B, A]]` of the same
/// linear map over `Q`, whose rank is exactly twice as large.
pub fn rank(field: &NumberField, m: &ExactMatrix) -> usize {
    match field.spec() {
        FieldSpec::Rationals => {
            let rows = m.rows.iter().map(|r| integer_row(r)).collect();
            bareiss_rank_integer(rows, m.ncols)
        }
        FieldSpec::QuadraticExtension(n) => {
            let n = BigRational::from_integer(BigInt::from(n));
            let mut rows = Vec::with_capacity(2 * m.nrows());
            for r in &m.rows {
                let top: Vec<Scalar> = r.iter().map(|x| Scalar::rational(x.a.clone())).chain(r.iter().map(|x| Scalar::rational(&x.b * &n))).collect();
                let bottom: Vec<Scalar> = r.iter().map(|x| Scalar::rational(x.b.clone())).chain(r.iter().map(|x| Scalar::rational(x.a.clone()))).collect();
                rows.push(integer_row(&top));
                rows.push(integer_row(&bottom));
            }
            bareiss_rank_integer(rows, 2 * m.ncols) / 2
        }
    }
}

fn integer_row(row: &[Scalar]) -> Vec<BigInt> {
    let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.a.denom()));
    row.iter().map(|x| x.a.numer() * (&lcm / x.a.denom())).collect()
}

/// Entrywise reduction of a rational matrix modulo `p`.
pub fn modular_projection(m: &ExactMatrix, p: u64) -> Result<Matrix<u64>, ModularError> {
    let red = Reduction::new(FieldSpec::Rationals, p)?;
    reduce_matrix(&red, m)
}

/// Image of an exact matrix under a reduction map.
pub fn reduce_matrix(red: &Reduction, m: &ExactMatrix) -> Result<Matrix<u64>, ModularError> {
    m.try_map(|x| red.reduce(x))
}

/// Rank modulo `p`; a lower bound for the exact rank.
pub fn rank_mod(red: &Reduction, m: &ExactMatrix) -> Result<usize, ModularError> {
    Ok(rank_by_elimination(&red.field(), &reduce_matrix(red, m)?))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LiftError {
    #[error("rational reconstruction did not stabilise within {0} primes")]
    Exhausted(usize),
}

/// Outcome of [`lift_kernel_vector`].
#[derive(Debug, Clone, PartialEq)]
pub enum KernelLift {
    /// Full column rank modulo some prime, hence over the exact field.
    Trivial,
    /// A nonzero exact kernel vector, verified by multiplication.
    Vector(Vec<Scalar>),
}

/// Recovers the first reduced-echelon kernel vector of an exact matrix from
/// its images modulo several primes (Chinese remaindering plus rational
/// reconstruction), then checks `m * v = 0` exactly before returning it.
///
/// Over `Q(sqrt n)` each prime contributes two images, one per square root
/// of `n`; their half-sum and half-difference give the rational and
/// irrational parts.
pub fn lift_kernel_vector(
    field: &NumberField,
    m: &ExactMatrix,
    first_prime: Option<u64>,
    max_primes: usize,
) -> Result<KernelLift, LiftError> {
    let spec = field.spec();
    let n = m.ncols;
    let mut accepted: Option<Vec<usize>> = None;
    let mut crt_a: Vec<Crt> = vec![Crt::default(); n];
    let mut crt_b: Vec<Crt> = vec![Crt::default(); n];
    let primes = first_prime.into_iter().chain(primes_below_2_62()).take(max_primes);
    for p in primes {
        let Ok(red) = Reduction::new(spec, p) else { continue };
        let mut images = Vec::with_capacity(2);
        let embeddings = if red.sqrt().is_some() { vec![red, red.conjugate()] } else { vec![red] };
        for e in &embeddings {
            let Ok(mp) = reduce_matrix(e, m) else { break };
            let (r, pivots) = rref(&e.field(), &mp);
            if pivots.len() == n {
                return Ok(KernelLift::Trivial);
            }
            let v = kernel_from_rref(&e.field(), &r, &pivots).swap_remove(0);
            images.push((pivots, v));
        }
        if images.len() != embeddings.len() {
            continue;
        }
        if images.len() == 2 && images[0].0 != images[1].0 {
            continue;
        }
        let pivots = images[0].0.clone();
        match &accepted {
            // Unlucky primes lose rank or push pivots to the right.
            Some(best) if (pivots.len(), std::cmp::Reverse(&pivots)) < (best.len(), std::cmp::Reverse(best)) => continue,
            Some(best) if *best == pivots => {}
            _ => {
                accepted = Some(pivots);
                crt_a = vec![Crt::default(); n];
                crt_b = vec![Crt::default(); n];
            }
        }
        let f = red.field();
        for j in 0..n {
            match (&images[..], red.sqrt()) {
                ([(_, plus), (_, minus)], Some(s)) => {
                    let two_inv = f.inv(&2).expect("p is odd");
                    let a = f.mul(&f.add(&plus[j], &minus[j]), &two_inv);
                    let two_s_inv = f.inv(&f.mul(&2, &s)).expect("s is a unit");
                    let b = f.mul(&f.sub(&plus[j], &minus[j]), &two_s_inv);
                    crt_a[j].push(a, p);
                    crt_b[j].push(b, p);
                }
                _ => crt_a[j].push(images[0].1[j], p),
            }
        }
        if let Some(v) = reconstruct(&crt_a, &crt_b, spec) {
            if m.mul_vec(field, &v).iter().all(Scalar::is_zero) {
                return Ok(KernelLift::Vector(v));
            }
        }
    }
    Err(LiftError::Exhausted(max_primes))
}

fn reconstruct(crt_a: &[Crt], crt_b: &[Crt], spec: FieldSpec) -> Option<Vec<Scalar>> {
    crt_a
        .iter()
        .zip(crt_b)
        .map(|(a, b)| {
            let a = rational_reconstruction(a.residue(), a.modulus())?;
            let b = match spec {
                FieldSpec::Rationals => BigRational::zero(),
                FieldSpec::QuadraticExtension(_) => rational_reconstruction(b.residue(), b.modulus())?,
            };
            Some(Scalar::new(a, b))
        })
        .collect()
}

/// Convenience for tests and examples: a rational matrix from integer rows.
pub fn int_matrix(ncols: usize, rows: &[&[i64]]) -> ExactMatrix {
    Matrix::from_rows(ncols, rows.iter().map(|r| r.iter().map(|&x| Scalar::from_int(x)).collect()).collect())
        .expect("rows have equal length")
}

#[allow(dead_code)]
fn _assert_send_sync() {
    fn check<T: Send + Sync>() {}
    check::<Matrix<u64>>();
    check::<PrimeField>();
}
