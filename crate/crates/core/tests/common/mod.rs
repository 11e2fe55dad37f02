//! Brute-force reference computations over `Q`, written without any of the
//! library's linear algebra or polynomial code.

#![allow(dead_code)]

pub mod strategies;

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

type Q = BigRational;
type Poly = HashMap<[u32; 3], Q>;

pub const TRIANGLE: &[[i64; 3]] = &[[1, 0, 0], [0, 1, 0], [0, 0, 1]];
pub const NEAR_PENCIL_4: &[[i64; 3]] = &[[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 0]];
pub const NEAR_PENCIL_5: &[[i64; 3]] = &[[1, 0, 0], [0, 1, 0], [1, 1, 0], [1, -1, 0], [0, 0, 1]];
pub const NEAR_PENCIL_6: &[[i64; 3]] = &[[1, 0, 0], [0, 1, 0], [1, 1, 0], [1, -1, 0], [1, 2, 0], [0, 0, 1]];
pub const GENERIC_4: &[[i64; 3]] = &[[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]];
pub const NON_FANO: &[[i64; 3]] = &[[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, -1, 0], [1, 0, -1], [0, 1, -1], [1, 1, -1]];

/// Fixture name in the embedded catalogue, its lines, and the expected
/// verdict: (free?, d1, d2).
pub const FIXTURES: &[(&str, &[[i64; 3]], bool, usize, usize)] = &[
    ("triangle", TRIANGLE, true, 1, 1),
    ("near-pencil-4", NEAR_PENCIL_4, true, 1, 2),
    ("near-pencil-5", NEAR_PENCIL_5, true, 1, 3),
    ("near-pencil-6", NEAR_PENCIL_6, true, 1, 4),
    ("generic-4", GENERIC_4, false, 2, 2),
    ("non-Fano", NON_FANO, true, 3, 3),
];

fn q(v: i64) -> Q {
    Q::from_integer(BigInt::from(v))
}

fn monomials(k: u32) -> Vec<[u32; 3]> {
    let mut out = Vec::new();
    for a in 0..=k {
        for b in 0..=k - a {
            out.push([a, b, k - a - b]);
        }
    }
    out
}

fn product(lines: &[[i64; 3]]) -> Poly {
    let mut f: Poly = HashMap::from([([0, 0, 0], Q::one())]);
    for l in lines {
        let mut g: Poly = HashMap::new();
        for (m, c) in &f {
            for v in 0..3 {
                if l[v] != 0 {
                    let mut e = *m;
                    e[v] += 1;
                    *g.entry(e).or_insert_with(Q::zero) += c * q(l[v]);
                }
            }
        }
        g.retain(|_, c| !c.is_zero());
        f = g;
    }
    f
}

fn derivative(f: &Poly, v: usize) -> Poly {
    let mut g = Poly::new();
    for (m, c) in f {
        if m[v] > 0 {
            let mut e = *m;
            e[v] -= 1;
            *g.entry(e).or_insert_with(Q::zero) += c * q(m[v] as i64);
        }
    }
    g.retain(|_, c| !c.is_zero());
    g
}

/// Matrix of (a, b, c) -> a f_x + b f_y + c f_z on S_k^3; columns are
/// (component, monomial) pairs in the order of `monomials(k)`.
fn jacobian_matrix(lines: &[[i64; 3]], k: u32) -> Vec<Vec<Q>> {
    let d = lines.len() as u32;
    let f = product(lines);
    let partials: Vec<Poly> = (0..3).map(|v| derivative(&f, v)).collect();
    let rows_idx: HashMap<[u32; 3], usize> = monomials(k + d - 1).into_iter().enumerate().map(|(i, m)| (m, i)).collect();
    let src = monomials(k);
    let mut m = vec![vec![Q::zero(); 3 * src.len()]; rows_idx.len()];
    for (c, p) in partials.iter().enumerate() {
        for (j, s) in src.iter().enumerate() {
            for (t, coef) in p {
                let e = [s[0] + t[0], s[1] + t[1], s[2] + t[2]];
                m[rows_idx[&e]][c * src.len() + j] += coef;
            }
        }
    }
    m
}

/// Row reduction to reduced echelon form; returns pivot columns.
fn reduce(rows: &mut Vec<Vec<Q>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = Q::one() / rows[r][c].clone();
        for x in rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in 0..ncols {
                    let t = &f * &rows[r][j];
                    rows[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(rows: &[Vec<Q>], ncols: usize) -> usize {
    reduce(&mut rows.to_vec(), ncols).len()
}

pub fn kernel(rows: &[Vec<Q>], ncols: usize) -> Vec<Vec<Q>> {
    let mut r = rows.to_vec();
    let pivots = reduce(&mut r, ncols);
    (0..ncols)
        .filter(|j| !pivots.contains(j))
        .map(|j| {
            let mut v = vec![Q::zero(); ncols];
            v[j] = Q::one();
            for (i, &c) in pivots.iter().enumerate() {
                v[c] = -r[i][j].clone();
            }
            v
        })
        .collect()
}

pub fn syzygy_dim(lines: &[[i64; 3]], k: u32) -> usize {
    let m = jacobian_matrix(lines, k);
    let ncols = 3 * monomials(k).len();
    ncols - rank(&m, ncols)
}

pub fn mdr(lines: &[[i64; 3]]) -> u32 {
    (0..).find(|&k| syzygy_dim(lines, k) > 0).unwrap()
}

/// Minimal generator degrees up to `k_max`.
pub fn generator_degrees(lines: &[[i64; 3]], k_max: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut prev: Vec<Vec<Q>> = Vec::new();
    for k in 0..=k_max {
        let m = jacobian_matrix(lines, k);
        let dst = monomials(k);
        let n = dst.len();
        let basis = kernel(&m, 3 * n);
        let idx: HashMap<[u32; 3], usize> = dst.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        let mut shifted = Vec::new();
        if k > 0 {
            let src = monomials(k - 1);
            for s in &prev {
                for v in 0..3 {
                    let mut w = vec![Q::zero(); 3 * n];
                    for c in 0..3 {
                        for (j, mono) in src.iter().enumerate() {
                            let mut e = *mono;
                            e[v] += 1;
                            w[c * n + idx[&e]] = s[c * src.len() + j].clone();
                        }
                    }
                    shifted.push(w);
                }
            }
        }
        let new = basis.len() - rank(&shifted, 3 * n);
        out.extend(std::iter::repeat_n(k, new));
        prev = basis;
    }
    out
}

/// dim of the degree-k part of S / (f_x, f_y, f_z).
pub fn hilbert(lines: &[[i64; 3]], k: u32) -> usize {
    let d = lines.len() as u32;
    let total = monomials(k).len();
    if k + 1 < d {
        return total;
    }
    let m = jacobian_matrix(lines, k + 1 - d);
    total - rank(&m, 3 * monomials(k + 1 - d).len())
}

/// Multiplicities of intersection points, by direct incidence counting.
pub fn t_vector(lines: &[[i64; 3]]) -> BTreeMap<usize, usize> {
    let mut points: Vec<[i64; 3]> = Vec::new();
    for i in 0..lines.len() {
        for j in i + 1..lines.len() {
            let (a, b) = (lines[i], lines[j]);
            let mut p = [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]];
            let g = p.iter().fold(0i64, |g, &x| num_integer::gcd(g, x));
            let sign = if p.iter().find(|&&x| x != 0).copied().unwrap_or(1) < 0 { -1 } else { 1 };
            for x in p.iter_mut() {
                *x = *x / g * sign;
            }
            if !points.contains(&p) {
                points.push(p);
            }
        }
    }
    let mut t = BTreeMap::new();
    for p in points {
        let r = lines.iter().filter(|l| l[0] * p[0] + l[1] * p[1] + l[2] * p[2] == 0).count();
        *t.entry(r).or_insert(0) += 1;
    }
    t
}
