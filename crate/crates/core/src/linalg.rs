// SPDX-License-Identifier: Apache-2.0

//! Exact row reduction over ℚ and ℚ(i), plus an SVD rank for floats.

use nalgebra::DMatrix;
use num::{BigRational, One, Zero};

/// Minimal field interface for exact elimination.
pub trait Field: Clone + PartialEq + std::fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn div(&self, o: &Self) -> Self;
}

impl Field for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
}

/// Incrementally maintained reduced row echelon form.
///
/// Every stored row has a leading one in its pivot column and zeros in the
/// pivot columns of all other rows.
#[derive(Debug, Clone)]
pub struct Echelon<F> {
    width: usize,
    rows: Vec<(usize, Vec<F>)>,
}

impl<F: Field> Echelon<F> {
    pub fn new(width: usize) -> Self {
        Self { width, rows: Vec::new() }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the stored rows, returning the remainder.
    pub fn reduce(&self, mut v: Vec<F>) -> Vec<F> {
        assert_eq!(v.len(), self.width, "vector width");
        for (piv, row) in &self.rows {
            if v[*piv].is_zero() {
                continue;
            }
            let c = v[*piv].clone();
            for (x, r) in v.iter_mut().zip(row).skip(*piv) {
                if !r.is_zero() {
                    *x = x.sub(&c.mul(r));
                }
            }
        }
        v
    }

    pub fn contains(&self, v: Vec<F>) -> bool {
        self.reduce(v).iter().all(Field::is_zero)
    }

    /// Adds `v` to the span. Returns false when it was already dependent.
    pub fn insert(&mut self, v: Vec<F>) -> bool {
        let mut v = self.reduce(v);
        let Some(piv) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let lead = v[piv].clone();
        for x in v.iter_mut().skip(piv) {
            if !x.is_zero() {
                *x = x.div(&lead);
            }
        }
        for (_, row) in self.rows.iter_mut() {
            if row[piv].is_zero() {
                continue;
            }
            let c = row[piv].clone();
            for (x, r) in row.iter_mut().zip(&v).skip(piv) {
                if !r.is_zero() {
                    *x = x.sub(&c.mul(r));
                }
            }
        }
        let at = self.rows.partition_point(|(p, _)| *p < piv);
        self.rows.insert(at, (piv, v));
        true
    }

    /// Stored rows as (pivot column, row), sorted by pivot.
    pub fn rows(&self) -> &[(usize, Vec<F>)] {
        &self.rows
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|(p, _)| *p).collect()
    }

    /// Basis of `{x : row · x = 0 for every stored row}`.
    pub fn nullspace(&self) -> Vec<Vec<F>> {
        let pivots = self.pivots();
        let mut out = Vec::new();
        for free in 0..self.width {
            if pivots.contains(&free) {
                continue;
            }
            let mut x = vec![F::zero(); self.width];
            x[free] = F::one();
            for (piv, row) in &self.rows {
                if !row[free].is_zero() {
                    x[*piv] = F::zero().sub(&row[free]);
                }
            }
            out.push(x);
        }
        out
    }
}

/// Exact rank of a list of vectors of equal length.
pub fn rank<F: Field>(vectors: &[Vec<F>]) -> usize {
    let Some(first) = vectors.first() else {
        return 0;
    };
    let mut e = Echelon::new(first.len());
    for v in vectors {
        e.insert(v.clone());
    }
    e.rank()
}

/// Basis of the solutions of `rows · x = 0`.
pub fn nullspace<F: Field>(rows: &[Vec<F>], width: usize) -> Vec<Vec<F>> {
    let mut e = Echelon::new(width);
    for r in rows {
        e.insert(r.clone());
    }
    e.nullspace()
}

/// Numerical rank: singular values above `rel_tol * sigma_max`.
pub fn float_rank(vectors: &[Vec<f64>], rel_tol: f64) -> usize {
    let Some(first) = vectors.first() else {
        return 0;
    };
    let cols = first.len();
    if cols == 0 {
        return 0;
    }
    let m = DMatrix::from_fn(vectors.len(), cols, |i, j| vectors[i][j]);
    let sv = m.singular_values();
    let max = sv.iter().cloned().fold(0.0_f64, f64::max);
    if max == 0.0 {
        return 0;
    }
    sv.iter().filter(|s| **s > rel_tol * max).count()
}
