//! Projective line arrangements over `Q` or `Q(sqrt n)` and their
//! combinatorics.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::field::{Field, FieldError, FieldSpec, NumberField, Scalar};
use crate::poly::HomogeneousPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArrangementError {
    #[error("all three coefficients are zero")]
    ZeroVector,
    #[error("the two lines coincide")]
    IdenticalLines,
    #[error("lines {0} and {1} coincide after normalization")]
    DuplicateLine(usize, usize),
    #[error("an arrangement needs at least one line")]
    Empty,
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Scales a nonzero triple so that its first nonzero entry is one.
fn normalize(field: &NumberField, mut v: [Scalar; 3]) -> Result<[Scalar; 3], ArrangementError> {
    let lead = v.iter().find(|c| !c.is_zero()).ok_or(ArrangementError::ZeroVector)?;
    let inv = field.inv(lead).expect("leading entry is nonzero");
    for c in v.iter_mut() {
        *c = field.mul(c, &inv);
    }
    Ok(v)
}

fn cross(field: &NumberField, u: &[Scalar; 3], v: &[Scalar; 3]) -> [Scalar; 3] {
    let m = |a: &Scalar, b: &Scalar| field.mul(a, b);
    [
        field.sub(&m(&u[1], &v[2]), &m(&u[2], &v[1])),
        field.sub(&m(&u[2], &v[0]), &m(&u[0], &v[2])),
        field.sub(&m(&u[0], &v[1]), &m(&u[1], &v[0])),
    ]
}

fn dot(field: &NumberField, u: &[Scalar; 3], v: &[Scalar; 3]) -> Scalar {
    (0..3).fold(Scalar::zero(), |acc, i| field.add(&acc, &field.mul(&u[i], &v[i])))
}

/// The line `a x + b y + c z = 0`, stored with first nonzero coefficient one.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjectiveLine {
    coeffs: [Scalar; 3],
}

impl ProjectiveLine {
    pub fn new(field: &NumberField, coeffs: [Scalar; 3]) -> Result<Self, ArrangementError> {
        for c in &coeffs {
            field.check(c)?;
        }
        Ok(ProjectiveLine { coeffs: normalize(field, coeffs)? })
    }

    pub fn from_ints(a: i64, b: i64, c: i64) -> Result<Self, ArrangementError> {
        Self::new(&NumberField::rationals(), [Scalar::from_int(a), Scalar::from_int(b), Scalar::from_int(c)])
    }

    pub fn coeffs(&self) -> &[Scalar; 3] {
        &self.coeffs
    }

    pub fn contains(&self, field: &NumberField, p: &ProjectivePoint) -> bool {
        dot(field, &self.coeffs, &p.coords).is_zero()
    }
}

/// A point `[x : y : z]`, normalized like lines.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjectivePoint {
    coords: [Scalar; 3],
}

impl ProjectivePoint {
    pub fn new(field: &NumberField, coords: [Scalar; 3]) -> Result<Self, ArrangementError> {
        Ok(ProjectivePoint { coords: normalize(field, coords)? })
    }

    pub fn coords(&self) -> &[Scalar; 3] {
        &self.coords
    }
}

/// Intersection of two distinct lines (cross product of the coefficients).
pub fn intersect(field: &NumberField, l1: &ProjectiveLine, l2: &ProjectiveLine) -> Result<ProjectivePoint, ArrangementError> {
    ProjectivePoint::new(field, cross(field, &l1.coeffs, &l2.coeffs)).map_err(|_| ArrangementError::IdenticalLines)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrangement {
    field: FieldSpec,
    lines: Vec<ProjectiveLine>,
    label: Option<String>,
}

impl Arrangement {
    pub fn new(field: FieldSpec, lines: Vec<ProjectiveLine>, label: Option<String>) -> Result<Self, ArrangementError> {
        if lines.is_empty() {
            return Err(ArrangementError::Empty);
        }
        let k = NumberField::new(field);
        let mut seen: HashMap<&ProjectiveLine, usize> = HashMap::new();
        for (i, l) in lines.iter().enumerate() {
            for c in &l.coeffs {
                k.check(c)?;
            }
            if let Some(&j) = seen.get(l) {
                return Err(ArrangementError::DuplicateLine(j, i));
            }
            seen.insert(l, i);
        }
        Ok(Arrangement { field, lines, label })
    }

    /// Rational arrangement from integer coefficient triples.
    pub fn from_int_lines(lines: &[[i64; 3]], label: Option<&str>) -> Result<Self, ArrangementError> {
        let lines = lines.iter().map(|&[a, b, c]| ProjectiveLine::from_ints(a, b, c)).collect::<Result<_, _>>()?;
        Self::new(FieldSpec::Rationals, lines, label.map(str::to_owned))
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn number_field(&self) -> NumberField {
        NumberField::new(self.field)
    }

    pub fn lines(&self) -> &[ProjectiveLine] {
        &self.lines
    }

    pub fn degree(&self) -> usize {
        self.lines.len()
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    /// Image under the coordinate change `p -> A^{-1} p`, i.e. each line's
    /// coefficient row vector is multiplied by `A`. `A` must be invertible
    /// over the arrangement's field.
    pub fn transformed(&self, a: &[[Scalar; 3]; 3]) -> Result<Self, ArrangementError> {
        let k = self.number_field();
        let lines = self
            .lines
            .iter()
            .map(|l| {
                let row = std::array::from_fn(|j| {
                    (0..3).fold(Scalar::zero(), |acc, i| k.add(&acc, &k.mul(&l.coeffs[i], &a[i][j])))
                });
                ProjectiveLine::new(&k, row)
            })
            .collect::<Result<_, _>>()?;
        Self::new(self.field, lines, self.label.clone())
    }

    /// Same lines in a different order: `order[i]` is the old index of the
    /// new line `i`.
    pub fn permuted(&self, order: &[usize]) -> Result<Self, ArrangementError> {
        Self::new(self.field, order.iter().map(|&i| self.lines[i].clone()).collect(), self.label.clone())
    }
}

/// A point where at least two lines meet, with the sorted indices of all
/// lines through it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionPoint {
    pub point: ProjectivePoint,
    pub incident: Vec<usize>,
}

impl IntersectionPoint {
    pub fn multiplicity(&self) -> usize {
        self.incident.len()
    }
}

/// All intersection points, ordered by their lowest pair of incident lines.
pub fn singular_points(arr: &Arrangement) -> Vec<IntersectionPoint> {
    let k = arr.number_field();
    let lines = arr.lines();
    let mut index: HashMap<ProjectivePoint, usize> = HashMap::new();
    let mut points: Vec<IntersectionPoint> = Vec::new();
    for i in 0..lines.len() {
        for j in i + 1..lines.len() {
            let p = intersect(&k, &lines[i], &lines[j]).expect("arrangement lines are distinct");
            match index.get(&p) {
                Some(&slot) => {
                    let inc = &mut points[slot].incident;
                    for l in [i, j] {
                        if let Err(pos) = inc.binary_search(&l) {
                            inc.insert(pos, l);
                        }
                    }
                }
                None => {
                    index.insert(p.clone(), points.len());
                    points.push(IntersectionPoint { point: p, incident: vec![i, j] });
                }
            }
        }
    }
    points
}

fn binom2(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Counts `t_r` of points of multiplicity `r >= 2`; zero counts are omitted.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct TVector {
    counts: BTreeMap<usize, usize>,
}

impl TVector {
    pub fn from_counts(counts: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let counts = counts.into_iter().filter(|&(r, t)| r >= 2 && t > 0).collect();
        TVector { counts }
    }

    /// `(t_2, t_3, ...)` as printed in tables; trailing zeros are harmless.
    pub fn from_positional(ts: &[usize]) -> Self {
        Self::from_counts(ts.iter().enumerate().map(|(i, &t)| (i + 2, t)))
    }

    pub fn positional(&self) -> Vec<usize> {
        let max = self.max_multiplicity().unwrap_or(1);
        (2..=max).map(|r| self.get(r)).collect()
    }

    pub fn get(&self, r: usize) -> usize {
        self.counts.get(&r).copied().unwrap_or(0)
    }

    pub fn counts(&self) -> &BTreeMap<usize, usize> {
        &self.counts
    }

    pub fn max_multiplicity(&self) -> Option<usize> {
        self.counts.keys().next_back().copied()
    }

    /// `sum_r t_r C(r,2)`, which equals `C(d,2)` for an arrangement of `d`
    /// lines.
    pub fn pair_count(&self) -> usize {
        self.counts.iter().map(|(&r, &t)| t * binom2(r)).sum()
    }

    pub fn is_consistent_with(&self, d: usize) -> bool {
        self.pair_count() == binom2(d)
    }

    /// Merges two double points into one triple point; used to probe the
    /// `(r-1)^2` weighting of the Milnor number.
    pub fn merge_two_doubles(&self) -> Option<TVector> {
        if self.get(2) < 2 {
            return None;
        }
        let mut c = self.counts.clone();
        *c.get_mut(&2).unwrap() -= 2;
        *c.entry(3).or_insert(0) += 1;
        Some(Self::from_counts(c))
    }
}

impl fmt::Display for TVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.positional().iter().map(usize::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl Serialize for TVector {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.positional().serialize(s)
    }
}

pub fn t_vector(arr: &Arrangement) -> TVector {
    let mut counts = BTreeMap::new();
    for p in singular_points(arr) {
        *counts.entry(p.multiplicity()).or_insert(0) += 1;
    }
    TVector { counts }
}

/// Melchior's characterization of simplicial real arrangements:
/// `t_2 = 3 + sum_{r>=4} (r-3) t_r`, for `d >= 3` lines not all concurrent.
pub fn melchior_check(t: &TVector, d: usize) -> bool {
    if d < 3 || t.get(d) != 0 {
        return false;
    }
    let rhs: usize = 3 + t.counts.iter().filter(|(&r, _)| r >= 4).map(|(&r, &n)| (r - 3) * n).sum::<usize>();
    t.get(2) == rhs
}

/// Total Milnor number `sum_p (mult_p - 1)^2`.
pub fn milnor_number(t: &TVector) -> u64 {
    t.counts.iter().map(|(&r, &n)| (n * (r - 1) * (r - 1)) as u64).sum()
}

/// Purely combinatorial summary of an arrangement.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CombinatorialProfile {
    pub d: usize,
    pub t: TVector,
    pub mu: u64,
    pub simplicial: bool,
}

impl CombinatorialProfile {
    pub fn from_tvector(d: usize, t: TVector) -> Self {
        let mu = milnor_number(&t);
        let simplicial = melchior_check(&t, d);
        CombinatorialProfile { d, t, mu, simplicial }
    }

    pub fn of(arr: &Arrangement) -> Self {
        Self::from_tvector(arr.degree(), t_vector(arr))
    }
}

/// Product of the linear forms of the arrangement.
pub fn defining_polynomial(arr: &Arrangement) -> HomogeneousPoly<Scalar> {
    let k = arr.number_field();
    arr.lines
        .iter()
        .fold(HomogeneousPoly::constant(&k, Scalar::one()), |f, l| f.mul(&k, &HomogeneousPoly::linear_form(&k, &l.coeffs)))
}
