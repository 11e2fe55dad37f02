//! Scalar fields: the rationals, real quadratic extensions `Q(sqrt n)`, and
//! prime fields `F_p`.
//!
//! Arithmetic goes through a context value implementing [`Field`] rather than
//! through operator overloads on the element type, so the same elimination
//! code runs over exact and modular scalars.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("sqrt({0}) does not define a quadratic field: n must be square-free and at least 2")]
    NotSquareFree(u64),
    #[error("scalar {0} does not belong to field {1}")]
    ForeignScalar(String, FieldSpec),
}

/// Which exact field the coordinates of an arrangement live in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FieldSpec {
    Rationals,
    /// `Q(sqrt n)` with `n >= 2` square-free.
    QuadraticExtension(u64),
}

impl FieldSpec {
    pub fn quadratic(n: u64) -> Result<Self, FieldError> {
        if n < 2 || !is_square_free(n) {
            return Err(FieldError::NotSquareFree(n));
        }
        Ok(FieldSpec::QuadraticExtension(n))
    }

    /// The radicand, if any.
    pub fn radicand(&self) -> Option<u64> {
        match self {
            FieldSpec::Rationals => None,
            FieldSpec::QuadraticExtension(n) => Some(*n),
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::QuadraticExtension(n) => write!(f, "Q(sqrt {n})"),
        }
    }
}

pub(crate) fn is_square_free(n: u64) -> bool {
    let mut m = n;
    let mut q = 2u64;
    while q * q <= m {
        if m.is_multiple_of(q * q) {
            return false;
        }
        if m.is_multiple_of(q) {
            m /= q;
        }
        q += 1;
    }
    true
}

/// Arithmetic context for a field whose elements are `Self::Elem`.
pub trait Field: Clone + Send + Sync {
    type Elem: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn from_i64(&self, v: i64) -> Self::Elem;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|i| self.mul(a, &i))
    }

    /// `a <- a - f * b`
    fn sub_mul_assign(&self, a: &mut Self::Elem, f: &Self::Elem, b: &Self::Elem) {
        let t = self.mul(f, b);
        *a = self.sub(a, &t);
    }
}

/// Exact scalar `a + b*sqrt(n)`. Over the rationals `b` is always zero.
///
/// Both parts are kept in lowest terms by `BigRational`, so structural
/// equality is value equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Scalar {
    pub a: BigRational,
    pub b: BigRational,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar { a: BigRational::zero(), b: BigRational::zero() }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(v: i64) -> Self {
        Scalar { a: BigRational::from_integer(BigInt::from(v)), b: BigRational::zero() }
    }

    pub fn rational(a: BigRational) -> Self {
        Scalar { a, b: BigRational::zero() }
    }

    pub fn new(a: BigRational, b: BigRational) -> Self {
        Scalar { a, b }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// Renders in the catalogue literal syntax.
    pub fn to_literal(&self, spec: FieldSpec) -> String {
        match spec.radicand() {
            Some(n) if !self.b.is_zero() => {
                let sign = if self.b.is_negative() { "-" } else if self.a.is_zero() { "" } else { "+" };
                let a = if self.a.is_zero() { String::new() } else { fmt_rational(&self.a) };
                let b = self.b.abs();
                let b = if b.is_one() { String::new() } else { format!("{}*", fmt_rational(&b)) };
                format!("{a}{sign}{b}sqrt({n})")
            }
            _ => fmt_rational(&self.a),
        }
    }
}

pub(crate) fn fmt_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// The exact field described by a [`FieldSpec`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NumberField {
    spec: FieldSpec,
    radicand: Option<i64>,
}

impl NumberField {
    pub fn new(spec: FieldSpec) -> Self {
        NumberField { spec, radicand: spec.radicand().map(|n| n as i64) }
    }

    pub fn rationals() -> Self {
        Self::new(FieldSpec::Rationals)
    }

    pub fn spec(&self) -> FieldSpec {
        self.spec
    }

    pub fn contains(&self, x: &Scalar) -> bool {
        self.radicand.is_some() || x.b.is_zero()
    }

    pub fn check(&self, x: &Scalar) -> Result<(), FieldError> {
        if self.contains(x) {
            Ok(())
        } else {
            let lit = format!("{}+{}*sqrt(n)", fmt_rational(&x.a), fmt_rational(&x.b));
            Err(FieldError::ForeignScalar(lit, self.spec))
        }
    }

    /// Galois conjugate `a - b*sqrt(n)`.
    pub fn conjugate(&self, x: &Scalar) -> Scalar {
        Scalar { a: x.a.clone(), b: -x.b.clone() }
    }

    /// Field norm `a^2 - n b^2`.
    pub fn norm(&self, x: &Scalar) -> BigRational {
        match self.radicand {
            None => &x.a * &x.a,
            Some(n) => &x.a * &x.a - &x.b * &x.b * BigRational::from_integer(BigInt::from(n)),
        }
    }

    /// Multiplies by an integer.
    pub fn scale(&self, x: &Scalar, k: i64) -> Scalar {
        let k = BigRational::from_integer(BigInt::from(k));
        Scalar { a: &x.a * &k, b: &x.b * &k }
    }
}

impl Field for NumberField {
    type Elem = Scalar;

    fn zero(&self) -> Scalar {
        Scalar::zero()
    }

    fn one(&self) -> Scalar {
        Scalar::one()
    }

    fn is_zero(&self, a: &Scalar) -> bool {
        a.is_zero()
    }

    fn add(&self, x: &Scalar, y: &Scalar) -> Scalar {
        Scalar { a: &x.a + &y.a, b: &x.b + &y.b }
    }

    fn sub(&self, x: &Scalar, y: &Scalar) -> Scalar {
        Scalar { a: &x.a - &y.a, b: &x.b - &y.b }
    }

    fn mul(&self, x: &Scalar, y: &Scalar) -> Scalar {
        if x.b.is_zero() && y.b.is_zero() {
            return Scalar::rational(&x.a * &y.a);
        }
        let n = BigRational::from_integer(BigInt::from(self.radicand.unwrap_or(0)));
        Scalar { a: &x.a * &y.a + &x.b * &y.b * n, b: &x.a * &y.b + &x.b * &y.a }
    }

    fn neg(&self, x: &Scalar) -> Scalar {
        Scalar { a: -x.a.clone(), b: -x.b.clone() }
    }

    fn inv(&self, x: &Scalar) -> Option<Scalar> {
        if x.is_zero() {
            return None;
        }
        if x.b.is_zero() {
            return Some(Scalar::rational(x.a.recip()));
        }
        // n is not a square, so the norm of a nonzero element is nonzero.
        let nm = self.norm(x);
        Some(Scalar { a: &x.a / &nm, b: -(&x.b / &nm) })
    }

    fn from_i64(&self, v: i64) -> Scalar {
        Scalar::from_int(v)
    }
}

/// `Z/pZ` for a prime `p < 2^63`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    /// The caller guarantees primality; see [`crate::modular::is_prime`].
    pub fn new(p: u64) -> Self {
        debug_assert!((2..(1 << 63)).contains(&p));
        PrimeField { p }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn reduce_i128(&self, v: i128) -> u64 {
        v.rem_euclid(self.p as i128) as u64
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1u64;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            exp >>= 1;
        }
        acc
    }
}

impl Field for PrimeField {
    type Elem = u64;

    #[inline]
    fn zero(&self) -> u64 {
        0
    }

    #[inline]
    fn one(&self) -> u64 {
        1
    }

    #[inline]
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }

    #[inline]
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }

    #[inline]
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }

    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            return None;
        }
        // extended Euclid on (a, p)
        let (mut r0, mut r1) = (self.p as i128, *a as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1);
        Some(self.reduce_i128(t0))
    }

    fn from_i64(&self, v: i64) -> u64 {
        self.reduce_i128(v as i128)
    }

    #[inline]
    fn sub_mul_assign(&self, a: &mut u64, f: &u64, b: &u64) {
        let t = self.mul(f, b);
        *a = self.sub(a, &t);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn square_free_radicands() {
        assert!(FieldSpec::quadratic(3).is_ok());
        assert!(FieldSpec::quadratic(30).is_ok());
        assert_eq!(FieldSpec::quadratic(12), Err(FieldError::NotSquareFree(12)));
        assert_eq!(FieldSpec::quadratic(1), Err(FieldError::NotSquareFree(1)));
        assert_eq!(FieldSpec::quadratic(0), Err(FieldError::NotSquareFree(0)));
    }

    #[test]
    fn quadratic_inverse() {
        let k = NumberField::new(FieldSpec::quadratic(3).unwrap());
        let x = Scalar::new(q(1, 2), q(-2, 3));
        let xi = k.inv(&x).unwrap();
        assert_eq!(k.mul(&x, &xi), Scalar::one());
        assert!(k.inv(&Scalar::zero()).is_none());
    }

    #[test]
    fn sqrt_squared_is_radicand() {
        let k = NumberField::new(FieldSpec::quadratic(5).unwrap());
        let s = Scalar::new(q(0, 1), q(1, 1));
        assert_eq!(k.mul(&s, &s), Scalar::from_int(5));
    }

    #[test]
    fn prime_field_ops() {
        let f = PrimeField::new(7);
        assert_eq!(f.inv(&2), Some(4));
        assert_eq!(f.from_i64(-1), 6);
        assert_eq!(f.mul(&6, &6), 1);
        assert_eq!(f.pow(3, 6), 1);
        let mut a = 5;
        f.sub_mul_assign(&mut a, &3, &4);
        assert_eq!(a, (5 + 7 * 2 - 12) % 7);
    }

    #[test]
    fn literal_rendering() {
        let spec = FieldSpec::quadratic(3).unwrap();
        assert_eq!(Scalar::new(q(1, 2), q(-1, 1)).to_literal(spec), "1/2-sqrt(3)");
        assert_eq!(Scalar::new(q(0, 1), q(2, 3)).to_literal(spec), "2/3*sqrt(3)");
        assert_eq!(Scalar::from_int(-4).to_literal(spec), "-4");
        assert_eq!(Scalar::rational(q(3, 6)).to_literal(FieldSpec::Rationals), "1/2");
    }
}
