//! Graded linear algebra on the Jacobian ideal of a plane curve.
//!
//! Every quantity here comes from one family of matrices: for each degree
//! `k`, the map `S_k^3 -> S_{k+d-1}`, `(a, b, c) -> a f_x + b f_y + c f_z`.
//! Its kernel is the degree-`k` piece of the module of Jacobian relations
//! and its image is the degree-`(k+d-1)` piece of the Jacobian ideal.
//!
//! The computations run either exactly over the coefficient field or over
//! `F_p` after reduction (see [`Backend`]). Modular ranks are lower bounds
//! for exact ranks, which is what [`certify_mdr`] relies on.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::field::{Field, NumberField, PrimeField, Scalar};
use crate::matrix::{self, lift_kernel_vector, rank_by_elimination, KernelLift, Matrix};
use crate::modular::{ModularError, Reduction};
use crate::poly::{dim_s, HomogeneousPoly, Monomial, MonomialBasis};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SyzygyError {
    #[error("Hilbert function not stabilized: {0} at degree {2}, {1} at degree {3}")]
    NotStabilized(usize, usize, usize, usize),
    #[error("curve of degree {0} is too small for this computation")]
    DegreeTooSmall(usize),
    #[error("no Jacobian relation of degree <= {0}; the form is not reduced")]
    NoRelation(usize),
    #[error("minimal degree {0} could not be certified exactly: {1}")]
    Uncertified(usize, String),
    #[error(transparent)]
    Modular(#[from] ModularError),
}

/// Where graded ranks are computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Backend {
    /// Exact arithmetic over `Q` or `Q(sqrt n)`.
    Exact,
    /// Arithmetic in `F_p`; fast, with results that are lower bounds on
    /// exact ranks.
    Modular { prime: u64 },
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Backend::Exact => write!(f, "exact"),
            Backend::Modular { prime } => write!(f, "mod {prime}"),
        }
    }
}

/// Rank computation suited to each field: fraction-free elimination for
/// exact fields, plain elimination for `F_p`.
pub trait RankField: Field {
    fn rank_of(&self, m: &Matrix<Self::Elem>) -> usize;
}

impl RankField for NumberField {
    fn rank_of(&self, m: &Matrix<Scalar>) -> usize {
        matrix::rank(self, m)
    }
}

impl RankField for PrimeField {
    fn rank_of(&self, m: &Matrix<u64>) -> usize {
        rank_by_elimination(self, m)
    }
}

/// `f` together with its three partial derivatives.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JacobianTriple {
    field: NumberField,
    f: HomogeneousPoly<Scalar>,
    partials: [HomogeneousPoly<Scalar>; 3],
}

pub fn jacobian(field: &NumberField, f: &HomogeneousPoly<Scalar>) -> JacobianTriple {
    let partials = std::array::from_fn(|v| f.partial(field, v));
    JacobianTriple { field: *field, f: f.clone(), partials }
}

impl JacobianTriple {
    /// Degree of `f`.
    pub fn degree(&self) -> usize {
        self.f.degree() as usize
    }

    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn f(&self) -> &HomogeneousPoly<Scalar> {
        &self.f
    }

    pub fn partials(&self) -> &[HomogeneousPoly<Scalar>; 3] {
        &self.partials
    }

    /// `x f_x + y f_y + z f_z = d f`.
    pub fn euler_holds(&self) -> bool {
        let k = &self.field;
        let mut lhs = HomogeneousPoly::zero(self.f.degree());
        for v in 0..3 {
            let xv = HomogeneousPoly::from_terms(k, 1, [(Monomial::variable(v), Scalar::one())]);
            lhs = lhs.add(k, &xv.mul(k, &self.partials[v]));
        }
        lhs == self.f.scale(k, &Scalar::from_int(self.degree() as i64))
    }

    /// The matrix of `S_k^3 -> S_{k+d-1}` over the exact field.
    pub fn map_matrix(&self, k: usize) -> Matrix<Scalar> {
        map_matrix(&self.field, &self.partials, self.degree(), k)
    }

    fn reduced(&self, red: &Reduction) -> Result<Graded<PrimeField>, ModularError> {
        let f = red.field();
        let partials = [0, 1, 2].map(|v| self.partials[v].try_map(&f, |c| red.reduce(c)));
        let [a, b, c] = partials;
        Ok(Graded { field: f, partials: [a?, b?, c?], d: self.degree() })
    }

    fn exact(&self) -> Graded<NumberField> {
        Graded { field: self.field, partials: self.partials.clone(), d: self.degree() }
    }

    /// The three Koszul relations `(f_y, -f_x, 0)`, `(f_z, 0, -f_x)`,
    /// `(0, f_z, -f_y)`, as coordinate vectors in `S_{d-1}^3`.
    pub fn koszul_syzygies(&self) -> [Vec<Scalar>; 3] {
        let k = &self.field;
        let [fx, fy, fz] = &self.partials;
        let neg = |p: &HomogeneousPoly<Scalar>| p.scale(k, &Scalar::from_int(-1));
        let zero = HomogeneousPoly::zero(fx.degree());
        [
            triple_to_vector(k, &[fy.clone(), neg(fx), zero.clone()]),
            triple_to_vector(k, &[fz.clone(), zero.clone(), neg(fx)]),
            triple_to_vector(k, &[zero, fz.clone(), neg(fy)]),
        ]
    }
}

fn map_matrix<F: Field>(field: &F, partials: &[HomogeneousPoly<F::Elem>; 3], d: usize, k: usize) -> Matrix<F::Elem> {
    let basis = MonomialBasis::new(k);
    let n = basis.len();
    let mut m = Matrix::zeros(dim_s(k + d - 1), 3 * n, field.zero());
    for (c, p) in partials.iter().enumerate() {
        for (j, mono) in basis.monomials().iter().enumerate() {
            for (t, coef) in p.terms() {
                m.set(mono.times(t).index(), c * n + j, coef.clone());
            }
        }
    }
    m
}

/// Coordinates of a triple of degree-`k` forms in `S_k^3`.
pub fn triple_to_vector<F: Field>(field: &F, triple: &[HomogeneousPoly<F::Elem>; 3]) -> Vec<F::Elem> {
    triple.iter().flat_map(|p| p.dense(field)).collect()
}

/// Inverse of [`triple_to_vector`].
pub fn vector_to_triple<F: Field>(field: &F, v: &[F::Elem], k: usize) -> [HomogeneousPoly<F::Elem>; 3] {
    let basis = MonomialBasis::new(k);
    let n = basis.len();
    assert_eq!(v.len(), 3 * n, "vector is not in S_k^3");
    std::array::from_fn(|c| {
        HomogeneousPoly::from_terms(field, k as u32, basis.monomials().iter().enumerate().map(|(j, m)| (*m, v[c * n + j].clone())))
    })
}

/// Graded computations over one concrete field.
struct Graded<F: Field> {
    field: F,
    partials: [HomogeneousPoly<F::Elem>; 3],
    d: usize,
}

impl<F: RankField> Graded<F> {
    fn matrix(&self, k: usize) -> Matrix<F::Elem> {
        map_matrix(&self.field, &self.partials, self.d, k)
    }

    fn syzygy_dim(&self, k: usize) -> usize {
        3 * dim_s(k) - self.field.rank_of(&self.matrix(k))
    }

    fn syzygy_basis(&self, k: usize) -> Vec<Vec<F::Elem>> {
        matrix::kernel_basis(&self.field, &self.matrix(k))
    }

    fn mdr(&self) -> Option<usize> {
        (0..self.d).find(|&k| self.syzygy_dim(k) > 0)
    }

    fn hilbert(&self, k: usize) -> usize {
        if k + 1 < self.d {
            return dim_s(k);
        }
        dim_s(k) - self.field.rank_of(&self.matrix(k + 1 - self.d))
    }

    /// Per-degree dimensions and counts of new minimal generators: in degree
    /// `k`, `dim Syz_k` minus the dimension of the span of
    /// `{x s, y s, z s : s in Syz_{k-1}}`.
    fn scan(&self, k_max: usize) -> Vec<SyzygyDegree> {
        let mut out = Vec::with_capacity(k_max + 1);
        let mut prev: Vec<Vec<F::Elem>> = Vec::new();
        for k in 0..=k_max {
            let basis = self.syzygy_basis(k);
            let generated = if prev.is_empty() {
                0
            } else {
                let shifted = multiply_by_variables(&self.field, &prev, k - 1);
                self.field.rank_of(&Matrix::from_rows(3 * dim_s(k), shifted).expect("shifted vectors have full length"))
            };
            out.push(SyzygyDegree { k, dim: basis.len(), new_generators: basis.len() - generated });
            prev = basis;
        }
        out
    }
}

/// `{x s, y s, z s}` for each `s` in `S_k^3`, as vectors in `S_{k+1}^3`.
fn multiply_by_variables<F: Field>(field: &F, vecs: &[Vec<F::Elem>], k: usize) -> Vec<Vec<F::Elem>> {
    let src = MonomialBasis::new(k);
    let n_src = src.len();
    let n_dst = dim_s(k + 1);
    let targets: [Vec<usize>; 3] = std::array::from_fn(|v| src.monomials().iter().map(|m| m.times(&Monomial::variable(v)).index()).collect());
    let mut out = Vec::with_capacity(3 * vecs.len());
    for s in vecs {
        for tgt in &targets {
            let mut w = vec![field.zero(); 3 * n_dst];
            for c in 0..3 {
                for j in 0..n_src {
                    w[c * n_dst + tgt[j]] = s[c * n_src + j].clone();
                }
            }
            out.push(w);
        }
    }
    out
}

/// Exact kernel basis of `S_k^3 -> S_{k+d-1}`.
pub fn syzygy_space(j: &JacobianTriple, k: usize) -> Vec<Vec<Scalar>> {
    j.exact().syzygy_basis(k)
}

/// Minimal degree of a Jacobian relation, computed exactly. Koszul relations
/// bound the search by `d - 1`.
pub fn mdr(j: &JacobianTriple) -> Result<usize, SyzygyError> {
    mdr_with(j, Backend::Exact)
}

pub fn mdr_with(j: &JacobianTriple, backend: Backend) -> Result<usize, SyzygyError> {
    let d = j.degree();
    if d < 2 {
        return Err(SyzygyError::DegreeTooSmall(d));
    }
    let found = match backend {
        Backend::Exact => j.exact().mdr(),
        Backend::Modular { prime } => j.reduced(&Reduction::new(j.field.spec(), prime)?)?.mdr(),
    };
    found.ok_or(SyzygyError::NoRelation(d - 1))
}

/// Proves that `r` is the exact minimal degree: full column rank modulo a
/// prime in degree `r - 1` (a lower bound on the exact rank, hence no
/// relation there) and an exact relation of degree `r`, recovered by
/// multi-modular lifting and checked by multiplication. Returns that
/// relation.
pub fn certify_mdr(j: &JacobianTriple, r: usize, prime: Option<u64>) -> Result<Vec<Scalar>, SyzygyError> {
    let spec = j.field.spec();
    let red = prime
        .into_iter()
        .chain(crate::modular::primes_below_2_62())
        .find_map(|p| Reduction::new(spec, p).ok())
        .expect("some prime supports the field");
    if r > 0 {
        let below = j.map_matrix(r - 1);
        if matrix::rank_mod(&red, &below)? != below.ncols() {
            return Err(SyzygyError::Uncertified(r, format!("degree {} has a relation modulo {}", r - 1, red.prime())));
        }
    }
    match lift_kernel_vector(&j.field, &j.map_matrix(r), Some(red.prime()), 400) {
        Ok(KernelLift::Vector(v)) => Ok(v),
        Ok(KernelLift::Trivial) => Err(SyzygyError::Uncertified(r, format!("no exact relation in degree {r}"))),
        Err(e) => Err(SyzygyError::Uncertified(r, e.to_string())),
    }
}

/// `dim M(f)_k = C(k+2,2) - rank(S_{k-d+1}^3 -> S_k)`.
pub fn hilbert_function(j: &JacobianTriple, k: usize) -> usize {
    j.exact().hilbert(k)
}

pub fn hilbert_function_with(j: &JacobianTriple, k: usize, backend: Backend) -> Result<usize, SyzygyError> {
    Ok(match backend {
        Backend::Exact => j.exact().hilbert(k),
        Backend::Modular { prime } => j.reduced(&Reduction::new(j.field.spec(), prime)?)?.hilbert(k),
    })
}

/// Hilbert function of the Milnor algebra up to degree `3d - 5` and its
/// stable value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MilnorAlgebraProfile {
    pub hilbert: Vec<usize>,
    pub tau_stable: usize,
}

/// Global Tjurina number read off the Hilbert function, which is constant
/// from degree `3d - 6` on for reduced curves. Both `3d - 6` and `3d - 5`
/// are evaluated and must agree.
pub fn tau_stable(j: &JacobianTriple) -> Result<usize, SyzygyError> {
    tau_stable_with(j, Backend::Exact)
}

pub fn tau_stable_with(j: &JacobianTriple, backend: Backend) -> Result<usize, SyzygyError> {
    let d = j.degree();
    if d < 2 {
        return Err(SyzygyError::DegreeTooSmall(d));
    }
    let lo = (3 * d).saturating_sub(6);
    let a = hilbert_function_with(j, lo, backend)?;
    let b = hilbert_function_with(j, lo + 1, backend)?;
    if a != b {
        return Err(SyzygyError::NotStabilized(a, b, lo, lo + 1));
    }
    Ok(a)
}

pub fn milnor_algebra_profile(j: &JacobianTriple, backend: Backend) -> Result<MilnorAlgebraProfile, SyzygyError> {
    let tau = tau_stable_with(j, backend)?;
    let top = (3 * j.degree()).saturating_sub(5);
    let hilbert = (0..=top).map(|k| hilbert_function_with(j, k, backend)).collect::<Result<_, _>>()?;
    Ok(MilnorAlgebraProfile { hilbert, tau_stable: tau })
}

/// One degree of the relation module.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SyzygyDegree {
    pub k: usize,
    /// `dim Syz_k`
    pub dim: usize,
    /// Minimal generators first appearing in degree `k`.
    pub new_generators: usize,
}

/// The relation module in degrees `0..=k_max`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GradedSyzygyData {
    pub d: usize,
    pub k_max: usize,
    pub backend: Backend,
    pub degrees: Vec<SyzygyDegree>,
}

impl GradedSyzygyData {
    /// Minimal generator degrees as a sorted multiset.
    pub fn generator_degrees(&self) -> Vec<usize> {
        self.degrees.iter().flat_map(|s| std::iter::repeat_n(s.k, s.new_generators)).collect()
    }

    pub fn mdr(&self) -> Option<usize> {
        self.degrees.iter().find(|s| s.dim > 0).map(|s| s.k)
    }

    pub fn dim(&self, k: usize) -> Option<usize> {
        self.degrees.get(k).map(|s| s.dim)
    }
}

/// Generator scan up to `k_max` (default `d`).
pub fn graded_syzygy_data(j: &JacobianTriple, k_max: Option<usize>, backend: Backend) -> Result<GradedSyzygyData, SyzygyError> {
    let d = j.degree();
    if d < 2 {
        return Err(SyzygyError::DegreeTooSmall(d));
    }
    let k_max = k_max.unwrap_or(d);
    let degrees = match backend {
        Backend::Exact => j.exact().scan(k_max),
        Backend::Modular { prime } => j.reduced(&Reduction::new(j.field.spec(), prime)?)?.scan(k_max),
    };
    Ok(GradedSyzygyData { d, k_max, backend, degrees })
}

/// Exact minimal generator degrees of the relation module, up to `k_max`.
pub fn generator_degrees(j: &JacobianTriple, k_max: Option<usize>) -> Result<Vec<usize>, SyzygyError> {
    Ok(graded_syzygy_data(j, k_max, Backend::Exact)?.generator_degrees())
}

/// Shape of the minimal resolution of the Milnor algebra, read off the
/// generator degrees of the relation module.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ResolutionShape {
    /// Two generators with `d1 + d2 = d - 1`.
    Free { d1: usize, d2: usize },
    /// Generators `d1, d2, d2` with `d1 + d2 = d`; `b = d2 - d + 2`.
    NearlyFree { d1: usize, d2: usize, b: i64 },
    Other { generator_degrees: Vec<usize> },
}

impl ResolutionShape {
    pub fn from_generator_degrees(degrees: &[usize], d: usize) -> Self {
        let mut g = degrees.to_vec();
        g.sort_unstable();
        match g[..] {
            [d1, d2] if d1 + d2 + 1 == d => ResolutionShape::Free { d1, d2 },
            [d1, d2, d3] if d2 == d3 && d1 + d2 == d => {
                ResolutionShape::NearlyFree { d1, d2, b: d2 as i64 - d as i64 + 2 }
            }
            _ => ResolutionShape::Other { generator_degrees: g },
        }
    }

    /// Shifts of the middle term `S(-d1-(d-1)) + ...` of the resolution.
    pub fn middle_shifts(&self, d: usize) -> Vec<usize> {
        match self {
            ResolutionShape::Free { d1, d2 } => vec![d1 + d - 1, d2 + d - 1],
            ResolutionShape::NearlyFree { d1, d2, .. } => vec![d1 + d - 1, d2 + d - 1, d2 + d - 1],
            ResolutionShape::Other { generator_degrees } => generator_degrees.iter().map(|g| g + d - 1).collect(),
        }
    }
}

impl fmt::Display for ResolutionShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ResolutionShape::Free { d1, d2 } => write!(f, "free shape ({d1},{d2})"),
            ResolutionShape::NearlyFree { d1, d2, b } => write!(f, "nearly free shape ({d1},{d2}), b={b}"),
            ResolutionShape::Other { generator_degrees } => write!(f, "other shape, generators in degrees {generator_degrees:?}"),
        }
    }
}

pub fn resolution_shape(j: &JacobianTriple, d: usize) -> Result<ResolutionShape, SyzygyError> {
    Ok(ResolutionShape::from_generator_degrees(&generator_degrees(j, None)?, d))
}
