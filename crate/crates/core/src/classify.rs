//! Screening and classification of line arrangements as free or nearly free.
//!
//! Screening uses only combinatorics: the quadratic
//! `q(r) = r^2 - r(d-1) + (d-1)^2 - (mu+1)` must have an integer root for
//! a nearly free arrangement. Classification computes the minimal degree of
//! a Jacobian relation and the generator degrees of the relation module,
//! then checks them against the numeric criteria
//!
//! * free: `mdr (d-1-mdr) + mu = (d-1)^2`, for `mdr <= (d-1)/2`;
//! * nearly free: `q(mdr) = 0`, for `mdr <= d/2`.
//!
//! The two sides are computed independently and must agree.

use std::fmt;

use num_integer::Roots;
use serde::Serialize;
use thiserror::Error;

use crate::arrangement::{defining_polynomial, Arrangement, CombinatorialProfile, TVector};
use crate::catalogue::{CatalogueEntry, PrintedRoots};
use crate::field::FieldSpec;
use crate::modular::{primes_below_2_62, ModularError, Reduction};
use crate::syzygy::{self, Backend, JacobianTriple, ResolutionShape, SyzygyError};

/// Table rows whose printed roots are known not to solve the quadratic.
pub const KNOWN_DISCREPANCIES: &[&str] = &["A(7,1)"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DiscSign {
    Pos,
    Neg,
    Zero,
}

impl DiscSign {
    pub fn of(v: i64) -> Self {
        match v.signum() {
            1 => DiscSign::Pos,
            -1 => DiscSign::Neg,
            _ => DiscSign::Zero,
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "pos" => Some(DiscSign::Pos),
            "neg" => Some(DiscSign::Neg),
            "zero" => Some(DiscSign::Zero),
            _ => None,
        }
    }
}

impl fmt::Display for DiscSign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DiscSign::Pos => "pos",
            DiscSign::Neg => "neg",
            DiscSign::Zero => "zero",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RootClass {
    TwoIntegers { r1: i64, r2: i64 },
    DoubleInteger { r0: i64 },
    RealIrrational,
    Complex,
}

impl RootClass {
    pub fn integers(&self) -> Vec<i64> {
        match *self {
            RootClass::TwoIntegers { r1, r2 } => vec![r1, r2],
            RootClass::DoubleInteger { r0 } => vec![r0],
            _ => Vec::new(),
        }
    }

    /// Whether printed table roots describe the same class and values.
    pub fn matches(&self, printed: &PrintedRoots) -> bool {
        match (self, printed) {
            (RootClass::RealIrrational, PrintedRoots::Real) | (RootClass::Complex, PrintedRoots::Complex) => true,
            (_, PrintedRoots::Integers(v)) => {
                let mut v = v.clone();
                v.sort_unstable();
                v.dedup();
                v == self.integers()
            }
            _ => false,
        }
    }
}

impl fmt::Display for RootClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RootClass::TwoIntegers { r1, r2 } => write!(f, "{r1}, {r2}"),
            RootClass::DoubleInteger { r0 } => write!(f, "{r0}"),
            RootClass::RealIrrational => write!(f, "real"),
            RootClass::Complex => write!(f, "complex"),
        }
    }
}

/// `q(r) = r^2 - r(d-1) + (d-1)^2 - (mu+1)` with discriminant
/// `4(mu+1) - 3(d-1)^2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ScreenQuadratic {
    pub d: i64,
    pub mu: i64,
    pub disc: i64,
    pub roots: RootClass,
}

impl ScreenQuadratic {
    pub fn new(d: u64, mu: u64) -> Self {
        let (d, mu) = (d as i64, mu as i64);
        let e = d - 1;
        let disc = 4 * (mu + 1) - 3 * e * e;
        let roots = if disc < 0 {
            RootClass::Complex
        } else {
            let s = disc.sqrt();
            if s * s != disc {
                RootClass::RealIrrational
            } else if s == 0 {
                // disc and (d-1)^2 have the same parity, so the halving is exact
                RootClass::DoubleInteger { r0: e / 2 }
            } else {
                RootClass::TwoIntegers { r1: (e - s) / 2, r2: (e + s) / 2 }
            }
        };
        ScreenQuadratic { d, mu, disc, roots }
    }

    pub fn evaluate(&self, r: i64) -> i64 {
        let e = self.d - 1;
        r * r - r * e + e * e - (self.mu + 1)
    }

    pub fn disc_sign(&self) -> DiscSign {
        DiscSign::of(self.disc)
    }

    pub fn integer_roots(&self) -> Vec<i64> {
        self.roots.integers()
    }
}

pub fn quadratic(d: u64, mu: u64) -> ScreenQuadratic {
    ScreenQuadratic::new(d, mu)
}

/// Combinatorial screen: the quadratic has a nonnegative perfect-square
/// discriminant and an integer root.
pub fn screen(profile: &CombinatorialProfile) -> bool {
    !quadratic(profile.d as u64, profile.mu).integer_roots().is_empty()
}

/// Outcome of a numeric criterion at `r = mdr`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Check {
    Holds,
    Fails,
    /// `mdr` lies outside the range where the criterion is a theorem.
    NotApplicable,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Check::Holds => "holds",
            Check::Fails => "fails",
            Check::NotApplicable => "not applicable",
        })
    }
}

/// `q(r) = 0`, applicable for `r <= d/2`.
pub fn nearly_free_check(d: usize, mu: u64, r: usize) -> Check {
    if 2 * r > d {
        return Check::NotApplicable;
    }
    if quadratic(d as u64, mu).evaluate(r as i64) == 0 {
        Check::Holds
    } else {
        Check::Fails
    }
}

/// `r (d-1-r) + tau = (d-1)^2`, applicable for `r <= (d-1)/2`.
pub fn free_check(d: usize, tau: u64, r: usize) -> Check {
    if 2 * r + 1 > d {
        return Check::NotApplicable;
    }
    let e = d as u64 - 1;
    if r as u64 * (e - r as u64) + tau == e * e {
        Check::Holds
    } else {
        Check::Fails
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Verdict {
    Free { d1: usize, d2: usize },
    NearlyFree { d1: usize, d2: usize },
    Neither,
    ScreenOnly { passes: bool },
}

impl Verdict {
    pub fn exponents(&self) -> Option<(usize, usize)> {
        match *self {
            Verdict::Free { d1, d2 } | Verdict::NearlyFree { d1, d2 } => Some((d1, d2)),
            _ => None,
        }
    }

    /// Stable machine-readable name.
    pub fn key(&self) -> &'static str {
        match self {
            Verdict::Free { .. } => "free",
            Verdict::NearlyFree { .. } => "nearly_free",
            Verdict::Neither => "neither",
            Verdict::ScreenOnly { passes: true } => "screen_pass",
            Verdict::ScreenOnly { passes: false } => "screen_fail",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Free { d1, d2 } => write!(f, "FREE exponents ({d1},{d2})"),
            Verdict::NearlyFree { d1, d2 } => write!(f, "NEARLY FREE exponents ({d1},{d2})"),
            Verdict::Neither => write!(f, "NEITHER free nor nearly free"),
            Verdict::ScreenOnly { passes: true } => write!(f, "SCREEN PASS"),
            Verdict::ScreenOnly { passes: false } => write!(f, "SCREEN FAIL"),
        }
    }
}

/// A verdict with the evidence behind it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub name: Option<String>,
    pub d: usize,
    pub t: TVector,
    pub mu: u64,
    pub quadratic: ScreenQuadratic,
    pub mdr: usize,
    pub tau: usize,
    pub generator_degrees: Vec<usize>,
    pub shape: ResolutionShape,
    pub nearly_free_check: Check,
    pub free_check: Check,
    pub verdict: Verdict,
    pub backend: Backend,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ClassifyOptions {
    /// Run graded computations modulo this prime, certifying `mdr` exactly.
    pub modulus: Option<u64>,
    /// Highest degree scanned for relation generators (default `d`).
    pub max_degree: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("an arrangement needs at least 2 lines, got {0}")]
    TooFewLines(usize),
    #[error("unsupported coefficient field {0}")]
    UnsupportedField(FieldSpec),
    #[error(transparent)]
    BadPrime(#[from] ModularError),
    #[error("internal inconsistency for {name}: {detail}")]
    InternalInconsistency { name: String, detail: String },
    #[error(transparent)]
    Syzygy(#[from] SyzygyError),
}

pub fn classify(arr: &Arrangement) -> Result<Classification, ClassifyError> {
    classify_with(arr, &ClassifyOptions::default())
}

/// Modular runs retry with further primes before reporting a disagreement,
/// since an unlucky prime can only lower ranks.
const MODULAR_ATTEMPTS: usize = 3;

pub fn classify_with(arr: &Arrangement, opts: &ClassifyOptions) -> Result<Classification, ClassifyError> {
    let d = arr.degree();
    if d < 2 {
        return Err(ClassifyError::TooFewLines(d));
    }
    let name = arr.label().unwrap_or("arrangement").to_owned();
    let profile = CombinatorialProfile::of(arr);
    let j = syzygy::jacobian(&arr.number_field(), &defining_polynomial(arr));
    if !j.euler_holds() {
        return Err(ClassifyError::InternalInconsistency { name, detail: "Euler identity fails".into() });
    }
    let Some(first) = opts.modulus else {
        return attempt(&j, &profile, &name, opts, Backend::Exact, Vec::new());
    };
    Reduction::new(arr.field(), first)?;
    let primes = std::iter::once(first)
        .chain(primes_below_2_62().filter(|&p| p != first && Reduction::new(arr.field(), p).is_ok()))
        .take(MODULAR_ATTEMPTS);
    let mut notes = Vec::new();
    let mut last = None;
    for p in primes {
        match attempt(&j, &profile, &name, opts, Backend::Modular { prime: p }, notes.clone()) {
            Ok(c) => return Ok(c),
            Err(e @ (ClassifyError::InternalInconsistency { .. } | ClassifyError::Syzygy(SyzygyError::Uncertified(..)))) => {
                notes.push(format!("prime {p} rejected: {e}"));
                last = Some(e);
            }
            Err(e) => return Err(e),
        }
    }
    Err(last.expect("at least one prime was tried"))
}

fn attempt(
    j: &JacobianTriple,
    profile: &CombinatorialProfile,
    name: &str,
    opts: &ClassifyOptions,
    backend: Backend,
    mut notes: Vec<String>,
) -> Result<Classification, ClassifyError> {
    let d = profile.d;
    let mu = profile.mu;
    let inconsistent = |detail: String| ClassifyError::InternalInconsistency { name: name.to_owned(), detail };

    let data = syzygy::graded_syzygy_data(j, opts.max_degree, backend)?;
    let mdr = match (backend, data.mdr()) {
        (Backend::Exact, Some(r)) => r,
        (Backend::Exact, None) => syzygy::mdr(j)?,
        (Backend::Modular { prime }, found) => {
            let r = match found {
                Some(r) => r,
                None => syzygy::mdr_with(j, backend)?,
            };
            syzygy::certify_mdr(j, r, Some(prime))?;
            notes.push(format!("mdr {r} certified exactly; generator degrees computed modulo {prime}"));
            r
        }
    };

    let tau = syzygy::tau_stable_with(j, backend)?;
    if tau as u64 != mu {
        return Err(inconsistent(format!("tau = {tau} ({backend}) but mu = {mu}")));
    }

    let generator_degrees = data.generator_degrees();
    let shape = ResolutionShape::from_generator_degrees(&generator_degrees, d);
    let nf = nearly_free_check(d, mu, mdr);
    let fr = free_check(d, mu, mdr);

    let verdict = match shape {
        ResolutionShape::Free { d1, d2 } => {
            if d1 != mdr {
                return Err(inconsistent(format!("free shape ({d1},{d2}) but mdr = {mdr}")));
            }
            if fr != Check::Holds {
                return Err(inconsistent(format!("free shape ({d1},{d2}) but the tau identity {fr}")));
            }
            Verdict::Free { d1, d2 }
        }
        ResolutionShape::NearlyFree { d1, d2, .. } => {
            if d1 != mdr {
                return Err(inconsistent(format!("nearly free shape ({d1},{d2}) but mdr = {mdr}")));
            }
            match nf {
                Check::Holds => Verdict::NearlyFree { d1, d2 },
                Check::NotApplicable => {
                    notes.push(format!("mdr {mdr} > d/2: nearly free verdict rests on the resolution shape alone"));
                    Verdict::NearlyFree { d1, d2 }
                }
                Check::Fails => return Err(inconsistent(format!("nearly free shape ({d1},{d2}) but q({mdr}) != 0"))),
            }
        }
        ResolutionShape::Other { ref generator_degrees } => {
            if nf == Check::Holds {
                return Err(inconsistent(format!("q({mdr}) = 0 but generators in degrees {generator_degrees:?}")));
            }
            if fr == Check::Holds {
                return Err(inconsistent(format!("tau identity holds but generators in degrees {generator_degrees:?}")));
            }
            notes.push(format!("generator degrees scanned up to {}", data.k_max));
            Verdict::Neither
        }
    };

    Ok(Classification {
        name: Some(name.to_owned()),
        d,
        t: profile.t.clone(),
        mu,
        quadratic: quadratic(d as u64, mu),
        mdr,
        tau,
        generator_degrees,
        shape,
        nearly_free_check: nf,
        free_check: fr,
        verdict,
        backend,
        notes,
    })
}

/// One reproduced table row.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub name: String,
    pub d: usize,
    pub t: TVector,
    pub mu: u64,
    pub disc: i64,
    pub disc_sign: DiscSign,
    pub roots: RootClass,
    pub expected_mu: Option<u64>,
    pub expected_disc: Option<DiscSign>,
    pub printed_roots: Option<PrintedRoots>,
    pub mu_ok: bool,
    pub disc_ok: bool,
    pub roots_ok: bool,
    /// Printed integer roots that do not solve the quadratic.
    pub printed_roots_fail: Vec<i64>,
    pub known_discrepancy: bool,
}

impl TableRow {
    pub fn matches(&self) -> bool {
        self.mu_ok && self.disc_ok && self.roots_ok
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableReport {
    pub rows: Vec<TableRow>,
}

impl TableReport {
    pub fn mismatches(&self) -> impl Iterator<Item = &TableRow> {
        self.rows.iter().filter(|r| !r.matches())
    }

    /// Mismatching rows other than the known discrepancies.
    pub fn unexpected_mismatches(&self) -> impl Iterator<Item = &TableRow> {
        self.mismatches().filter(|r| !r.known_discrepancy)
    }

    pub fn screened(&self) -> impl Iterator<Item = &TableRow> {
        self.rows.iter().filter(|r| !r.roots.integers().is_empty())
    }
}

/// Recomputes `mu`, the discriminant and the roots for every entry and
/// compares them with the recorded expected values.
pub fn reproduce_table(entries: &[CatalogueEntry]) -> TableReport {
    let rows = entries
        .iter()
        .map(|e| {
            let mu = crate::arrangement::milnor_number(&e.t);
            let q = quadratic(e.d as u64, mu);
            let exp = &e.expected;
            let printed_roots_fail = match &exp.roots {
                Some(PrintedRoots::Integers(v)) => v.iter().copied().filter(|&r| q.evaluate(r) != 0).collect(),
                _ => Vec::new(),
            };
            TableRow {
                name: e.name.clone(),
                d: e.d,
                t: e.t.clone(),
                mu,
                disc: q.disc,
                disc_sign: q.disc_sign(),
                roots: q.roots,
                expected_mu: exp.mu,
                expected_disc: exp.disc,
                printed_roots: exp.roots.clone(),
                mu_ok: exp.mu.is_none_or(|m| m == mu),
                disc_ok: exp.disc.is_none_or(|s| s == q.disc_sign()),
                roots_ok: exp.roots.as_ref().is_none_or(|r| q.roots.matches(r)),
                printed_roots_fail,
                known_discrepancy: KNOWN_DISCREPANCIES.contains(&e.name.as_str()),
            }
        })
        .collect();
    TableReport { rows }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_examples() {
        let q = quadratic(17, 191);
        assert_eq!((q.disc, q.roots), (0, RootClass::DoubleInteger { r0: 8 }));
        assert_eq!(quadratic(19, 243).roots, RootClass::TwoIntegers { r1: 8, r2: 10 });
        let q = quadratic(13, 105);
        assert_eq!((q.disc, q.roots), (-8, RootClass::Complex));
        assert_eq!(quadratic(9, 49).roots, RootClass::RealIrrational);
    }

    #[test]
    fn integer_roots_solve_quadratic() {
        for d in 3..40u64 {
            for mu in 0..800 {
                let q = quadratic(d, mu);
                for r in q.integer_roots() {
                    assert_eq!(q.evaluate(r), 0, "d={d} mu={mu} r={r}");
                }
            }
        }
    }

    #[test]
    fn screen_examples() {
        let p = |d, t: &[usize]| CombinatorialProfile::from_tvector(d, TVector::from_positional(t));
        assert!(screen(&p(17, &[16, 15, 10, 0, 1])));
        assert!(!screen(&p(9, &[6, 4, 3])));
        assert!(quadratic(16, 167).disc < 0);
    }

    #[test]
    fn criteria_are_exclusive() {
        for d in 3..30usize {
            for mu in 0..700u64 {
                for r in 0..d {
                    assert!(!(nearly_free_check(d, mu, r) == Check::Holds && free_check(d, mu, r) == Check::Holds));
                }
            }
        }
    }

    #[test]
    fn verdict_display() {
        assert_eq!(Verdict::Free { d1: 3, d2: 3 }.to_string(), "FREE exponents (3,3)");
        assert_eq!(Verdict::NearlyFree { d1: 8, d2: 9 }.to_string(), "NEARLY FREE exponents (8,9)");
    }
}
