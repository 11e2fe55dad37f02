//! Graded pieces of `K[x, y, z]` and sparse homogeneous polynomials.

use std::collections::BTreeMap;
use std::fmt;

use crate::field::Field;

/// Exponent triple `x^i y^j z^l`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub [u32; 3]);

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn times(&self, other: &Monomial) -> Monomial {
        let [a, b, c] = self.0;
        let [d, e, f] = other.0;
        Monomial([a + d, b + e, c + f])
    }

    pub fn variable(v: usize) -> Monomial {
        let mut e = [0; 3];
        e[v] = 1;
        Monomial(e)
    }

    /// Position in the graded lexicographic listing of its degree.
    pub fn index(&self) -> usize {
        let [i, j, _] = self.0;
        let rest = (self.degree() - i) as usize;
        rest * (rest + 1) / 2 + (rest - j as usize)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (name, e) in ["x", "y", "z"].iter().zip(self.0) {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{e}")?;
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

/// Number of monomials of degree `k` in three variables, `C(k+2, 2)`.
pub fn dim_s(k: usize) -> usize {
    (k + 1) * (k + 2) / 2
}

/// The monomials spanning `S_k`, in graded lexicographic order
/// (`x^k, x^{k-1}y, x^{k-1}z, x^{k-2}y^2, ...`). [`Monomial::index`] inverts
/// the listing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialBasis {
    degree: usize,
    monomials: Vec<Monomial>,
}

impl MonomialBasis {
    pub fn new(k: usize) -> Self {
        let k32 = k as u32;
        let mut monomials = Vec::with_capacity(dim_s(k));
        for i in (0..=k32).rev() {
            for j in (0..=k32 - i).rev() {
                monomials.push(Monomial([i, j, k32 - i - j]));
            }
        }
        MonomialBasis { degree: k, monomials }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }
}

/// Checked constructor for a basis of `S_k`; negative degrees have none.
pub fn monomial_basis(k: i64) -> Option<MonomialBasis> {
    usize::try_from(k).ok().map(MonomialBasis::new)
}

/// A homogeneous form with no stored zero coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomogeneousPoly<E> {
    degree: u32,
    terms: BTreeMap<Monomial, E>,
}

impl<E: Clone + PartialEq + fmt::Debug> HomogeneousPoly<E> {
    pub fn zero(degree: u32) -> Self {
        HomogeneousPoly { degree, terms: BTreeMap::new() }
    }

    /// Zero coefficients are dropped; a monomial of the wrong degree panics.
    pub fn from_terms<F: Field<Elem = E>>(field: &F, degree: u32, terms: impl IntoIterator<Item = (Monomial, E)>) -> Self {
        let mut p = Self::zero(degree);
        for (m, c) in terms {
            p.add_term(field, m, &c);
        }
        p
    }

    /// `c0 x + c1 y + c2 z`
    pub fn linear_form<F: Field<Elem = E>>(field: &F, coeffs: &[E; 3]) -> Self {
        Self::from_terms(field, 1, (0..3).map(|v| (Monomial::variable(v), coeffs[v].clone())))
    }

    pub fn constant<F: Field<Elem = E>>(field: &F, c: E) -> Self {
        Self::from_terms(field, 0, [(Monomial([0, 0, 0]), c)])
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &E)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> Option<&E> {
        self.terms.get(m)
    }

    fn add_term<F: Field<Elem = E>>(&mut self, field: &F, m: Monomial, c: &E) {
        assert_eq!(m.degree(), self.degree, "monomial {m} has the wrong degree");
        if field.is_zero(c) {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(old) => {
                let s = field.add(old, c);
                if field.is_zero(&s) {
                    self.terms.remove(&m);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub fn add<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        assert_eq!(self.degree, other.degree, "adding forms of different degrees");
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(field, *m, c);
        }
        out
    }

    pub fn mul<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        let mut out = Self::zero(self.degree + other.degree);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(field, m1.times(m2), &field.mul(c1, c2));
            }
        }
        out
    }

    pub fn scale<F: Field<Elem = E>>(&self, field: &F, c: &E) -> Self {
        Self::from_terms(field, self.degree, self.terms.iter().map(|(m, x)| (*m, field.mul(x, c))))
    }

    /// Formal partial derivative with respect to variable `v` (0 = x).
    pub fn partial<F: Field<Elem = E>>(&self, field: &F, v: usize) -> Self {
        let degree = self.degree.saturating_sub(1);
        let mut out = Self::zero(degree);
        for (m, c) in &self.terms {
            let e = m.0[v];
            if e == 0 {
                continue;
            }
            let mut d = m.0;
            d[v] -= 1;
            out.add_term(field, Monomial(d), &field.mul(c, &field.from_i64(e as i64)));
        }
        out
    }

    pub fn evaluate<F: Field<Elem = E>>(&self, field: &F, point: &[E; 3]) -> E {
        self.terms.iter().fold(field.zero(), |acc, (m, c)| {
            let mut t = c.clone();
            for v in 0..3 {
                for _ in 0..m.0[v] {
                    t = field.mul(&t, &point[v]);
                }
            }
            field.add(&acc, &t)
        })
    }

    pub fn try_map<F2: Field, Err>(&self, field: &F2, mut f: impl FnMut(&E) -> Result<F2::Elem, Err>) -> Result<HomogeneousPoly<F2::Elem>, Err> {
        let mut out = HomogeneousPoly::zero(self.degree);
        for (m, c) in &self.terms {
            let c = f(c)?;
            out.add_term(field, *m, &c);
        }
        Ok(out)
    }

    /// Coefficients in the graded lexicographic basis of its degree.
    pub fn dense<F: Field<Elem = E>>(&self, field: &F) -> Vec<E> {
        let mut v = vec![field.zero(); dim_s(self.degree as usize)];
        for (m, c) in &self.terms {
            v[m.index()] = c.clone();
        }
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{NumberField, Scalar};

    #[test]
    fn basis_sizes() {
        assert_eq!(MonomialBasis::new(0).monomials(), &[Monomial([0, 0, 0])]);
        assert_eq!(
            MonomialBasis::new(1).monomials(),
            &[Monomial([1, 0, 0]), Monomial([0, 1, 0]), Monomial([0, 0, 1])]
        );
        assert_eq!(MonomialBasis::new(4).len(), 15);
        assert!(monomial_basis(-1).is_none());
    }

    #[test]
    fn index_inverts_listing() {
        for k in 0..12 {
            for (pos, m) in MonomialBasis::new(k).monomials().iter().enumerate() {
                assert_eq!(m.index(), pos);
            }
        }
    }

    #[test]
    fn graded_lex_order_degree_two() {
        let names: Vec<String> = MonomialBasis::new(2).monomials().iter().map(|m| m.to_string()).collect();
        assert_eq!(names, ["x^2", "x*y", "x*z", "y^2", "y*z", "z^2"]);
    }

    #[test]
    fn product_and_partials() {
        let k = NumberField::rationals();
        let x = HomogeneousPoly::linear_form(&k, &[Scalar::one(), Scalar::zero(), Scalar::zero()]);
        let y = HomogeneousPoly::linear_form(&k, &[Scalar::zero(), Scalar::one(), Scalar::zero()]);
        let xy = x.mul(&k, &y);
        assert_eq!(xy.num_terms(), 1);
        assert_eq!(xy.partial(&k, 0), y);
        let x2 = x.mul(&k, &x);
        let dx = x2.partial(&k, 0);
        assert_eq!(dx, x.scale(&k, &Scalar::from_int(2)));
        assert!(x2.partial(&k, 1).is_zero());
    }

    #[test]
    fn cancellation_drops_terms() {
        let k = NumberField::rationals();
        let a = HomogeneousPoly::linear_form(&k, &[Scalar::one(), Scalar::from_int(2), Scalar::zero()]);
        let b = a.scale(&k, &Scalar::from_int(-1));
        assert!(a.add(&k, &b).is_zero());
    }
}
