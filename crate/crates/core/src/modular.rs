//! Modular reduction of exact scalars, Chinese remaindering and rational
//! reconstruction.
//!
//! A matrix over `Q(sqrt n)` reduces modulo `p` through a ring map that sends
//! `sqrt n` to a square root `s` of `n` in `F_p`. Such a map exists only when
//! `n` is a quadratic residue, and it is only defined on scalars whose
//! denominators are prime to `p`. Ranks can only drop under reduction, so a
//! modular rank is a certified lower bound for the exact rank.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::field::{Field, FieldSpec, PrimeField, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModularError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("bad prime {p}: {reason}")]
    BadPrime { p: u64, reason: String },
    #[error("irrational scalar cannot be reduced by a reduction of Q")]
    Irrational,
}

/// Deterministic Miller-Rabin, exact for every `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &w in &WITNESSES {
        if n.is_multiple_of(w) {
            return n == w;
        }
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut b: u64, mut e: u64| {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(acc, b);
            }
            b = mulmod(b, b);
            e >>= 1;
        }
        acc
    };
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &w in &WITNESSES {
        let mut x = powmod(w, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primes below `2^62` in decreasing order. The sequence is fixed, so every
/// computation that consumes it is reproducible.
pub fn primes_below_2_62() -> impl Iterator<Item = u64> {
    let mut next = (1u64 << 62) - 1;
    std::iter::from_fn(move || {
        while !is_prime(next) {
            next -= 2;
        }
        let p = next;
        next -= 2;
        Some(p)
    })
}

/// Square root of `n` modulo the odd prime `p` (Tonelli-Shanks), if `n` is a
/// quadratic residue.
pub fn sqrt_mod(n: u64, p: u64) -> Option<u64> {
    let f = PrimeField::new(p);
    let n = n % p;
    if n == 0 {
        return Some(0);
    }
    if p == 2 {
        return Some(n);
    }
    if f.pow(n, (p - 1) / 2) != 1 {
        return None;
    }
    let s = (p - 1).trailing_zeros();
    let q = (p - 1) >> s;
    let mut z = 2;
    while f.pow(z, (p - 1) / 2) != p - 1 {
        z += 1;
    }
    let mut m = s;
    let mut c = f.pow(z, q);
    let mut t = f.pow(n, q);
    let mut r = f.pow(n, q.div_ceil(2));
    while t != 1 {
        let mut i = 0;
        let mut t2 = t;
        while t2 != 1 {
            t2 = f.mul(&t2, &t2);
            i += 1;
        }
        let b = f.pow(c, 1 << (m - i - 1));
        m = i;
        c = f.mul(&b, &b);
        t = f.mul(&t, &c);
        r = f.mul(&r, &b);
    }
    Some(r)
}

fn bigint_mod(x: &BigInt, p: u64) -> u64 {
    x.mod_floor(&BigInt::from(p)).to_u64().expect("residue fits in u64")
}

/// Ring map from (the `p`-integral part of) an exact field onto `F_p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Reduction {
    field: PrimeField,
    sqrt: Option<u64>,
}

impl Reduction {
    /// Picks the square root of `n` returned by Tonelli-Shanks; see
    /// [`Reduction::conjugate`] for the other one.
    pub fn new(spec: FieldSpec, p: u64) -> Result<Self, ModularError> {
        if !is_prime(p) {
            return Err(ModularError::NotPrime(p));
        }
        let sqrt = match spec.radicand() {
            None => None,
            Some(n) => {
                if p == 2 || n % p == 0 {
                    return Err(ModularError::BadPrime { p, reason: format!("{p} divides 2*{n}") });
                }
                match sqrt_mod(n, p) {
                    Some(s) => Some(s),
                    None => {
                        return Err(ModularError::BadPrime {
                            p,
                            reason: format!("{n} is not a square modulo {p}"),
                        })
                    }
                }
            }
        };
        Ok(Reduction { field: PrimeField::new(p), sqrt })
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn prime(&self) -> u64 {
        self.field.modulus()
    }

    /// The image of `sqrt n`, if the source field is quadratic.
    pub fn sqrt(&self) -> Option<u64> {
        self.sqrt
    }

    /// The reduction composed with the Galois conjugation.
    pub fn conjugate(&self) -> Self {
        Reduction { field: self.field, sqrt: self.sqrt.map(|s| self.field.neg(&s)) }
    }

    pub fn reduce_rational(&self, q: &BigRational) -> Result<u64, ModularError> {
        let p = self.prime();
        let den = bigint_mod(q.denom(), p);
        let inv = self.field.inv(&den).ok_or_else(|| ModularError::BadPrime {
            p,
            reason: format!("denominator {} vanishes modulo {p}", q.denom()),
        })?;
        Ok(self.field.mul(&bigint_mod(q.numer(), p), &inv))
    }

    pub fn reduce(&self, x: &Scalar) -> Result<u64, ModularError> {
        let a = self.reduce_rational(&x.a)?;
        if x.b.is_zero() {
            return Ok(a);
        }
        let b = self.reduce_rational(&x.b)?;
        let s = self.sqrt.ok_or(ModularError::Irrational)?;
        Ok(self.field.add(&a, &self.field.mul(&b, &s)))
    }
}

/// Running Chinese-remainder accumulator for one integer residue.
#[derive(Debug, Clone)]
pub struct Crt {
    residue: BigInt,
    modulus: BigInt,
}

impl Default for Crt {
    fn default() -> Self {
        Crt { residue: BigInt::zero(), modulus: BigInt::one() }
    }
}

impl Crt {
    pub fn modulus(&self) -> &BigInt {
        &self.modulus
    }

    pub fn residue(&self) -> &BigInt {
        &self.residue
    }

    pub fn push(&mut self, x: u64, p: u64) {
        let f = PrimeField::new(p);
        let r_mod_p = bigint_mod(&self.residue, p);
        let m_mod_p = bigint_mod(&self.modulus, p);
        let m_inv = f.inv(&m_mod_p).expect("moduli must be coprime");
        let k = f.mul(&f.sub(&x, &r_mod_p), &m_inv);
        self.residue += &self.modulus * BigInt::from(k);
        self.modulus *= BigInt::from(p);
    }
}

/// Finds `a/b` with `a = b*u (mod m)` and `|a|, b <= sqrt(m/2)`, which is
/// unique when it exists.
pub fn rational_reconstruction(u: &BigInt, m: &BigInt) -> Option<BigRational> {
    let bound = (m >> 1u32).sqrt();
    let (mut r0, mut r1) = (m.clone(), u.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound || !r1.gcd(&t1).is_one() {
        return None;
    }
    let (num, den) = if t1.sign() == Sign::Minus { (-r1, -t1) } else { (r1, t1) };
    Some(BigRational::new(num, den))
}
