// SPDX-License-Identifier: Apache-2.0

//! Dense square matrices over a [`Scalar`].

use std::fmt;

use serde_json::Value;

use crate::error::{Error, Result};
use crate::scalar::{Complex64, GaussRational, Scalar};

/// Largest supported matrix size.
pub const MAX_DIM: usize = 12;

/// Square `k × k` matrix, row-major.
#[derive(Clone, PartialEq)]
pub struct CMatrix<S> {
    k: usize,
    data: Vec<S>,
}

pub type ExactMatrix = CMatrix<GaussRational>;
pub type FloatMatrix = CMatrix<Complex64>;

impl<S: Scalar> CMatrix<S> {
    pub fn zeros(k: usize) -> Self {
        Self { k, data: vec![S::zero(); k * k] }
    }

    pub fn identity(k: usize) -> Self {
        let mut m = Self::zeros(k);
        for i in 0..k {
            m.data[i * k + i] = S::one();
        }
        m
    }

    pub fn from_fn(k: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(k * k);
        for r in 0..k {
            for c in 0..k {
                data.push(f(r, c));
            }
        }
        Self { k, data }
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self> {
        let k = rows.len();
        let mut data = Vec::with_capacity(k * k);
        for row in rows {
            if row.len() != k {
                return Err(Error::DimensionMismatch { expected: k, got: row.len() });
            }
            data.extend(row);
        }
        Ok(Self { k, data })
    }

    pub fn diag(entries: &[S]) -> Self {
        let mut m = Self::zeros(entries.len());
        for (i, e) in entries.iter().enumerate() {
            m.set(i, i, e.clone());
        }
        m
    }

    /// Elementary matrix `E_rs` (0-based).
    pub fn unit(k: usize, r: usize, s: usize) -> Self {
        let mut m = Self::zeros(k);
        m.set(r, s, S::one());
        m
    }

    /// `j_rs = E_rs - E_sr` (0-based).
    pub fn j(k: usize, r: usize, s: usize) -> Self {
        let mut m = Self::zeros(k);
        m.set(r, s, S::one());
        m.set(s, r, -S::one());
        m
    }

    pub fn dim(&self) -> usize {
        self.k
    }

    pub fn get(&self, r: usize, c: usize) -> &S {
        &self.data[r * self.k + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: S) {
        self.data[r * self.k + c] = v;
    }

    pub fn entries(&self) -> &[S] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(S::is_zero)
    }

    pub fn map(&self, f: impl Fn(&S) -> S) -> Self {
        Self { k: self.k, data: self.data.iter().map(f).collect() }
    }

    pub fn zip_with(&self, other: &Self, f: impl Fn(&S, &S) -> S) -> Self {
        assert_eq!(self.k, other.k, "matrix sizes differ");
        Self {
            k: self.k,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a.clone() + b.clone())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a.clone() - b.clone())
    }

    pub fn scale(&self, s: &S) -> Self {
        self.map(|a| a.clone() * s.clone())
    }

    pub fn neg(&self) -> Self {
        self.map(|a| -a.clone())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.k, other.k, "matrix sizes differ");
        let k = self.k;
        let mut out = Self::zeros(k);
        for r in 0..k {
            for m in 0..k {
                let a = &self.data[r * k + m];
                if a.is_zero() {
                    continue;
                }
                for c in 0..k {
                    let b = &other.data[m * k + c];
                    if !b.is_zero() {
                        out.data[r * k + c].mul_add_assign(a, b);
                    }
                }
            }
        }
        out
    }

    /// `XY - YX`.
    pub fn bracket(&self, other: &Self) -> Result<Self> {
        if self.k != other.k {
            return Err(Error::DimensionMismatch { expected: self.k, got: other.k });
        }
        Ok(self.mul(other).sub(&other.mul(self)))
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.k, |r, c| self.get(c, r).clone())
    }

    pub fn conj(&self) -> Self {
        self.map(S::conj)
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.k, |r, c| self.get(c, r).conj())
    }

    pub fn trace(&self) -> S {
        (0..self.k).fold(S::zero(), |acc, i| acc + self.get(i, i).clone())
    }

    pub fn apply(&self, v: &[S]) -> Vec<S> {
        assert_eq!(v.len(), self.k, "vector length");
        (0..self.k)
            .map(|r| {
                let mut acc = S::zero();
                for (c, x) in v.iter().enumerate() {
                    acc.mul_add_assign(self.get(r, c), x);
                }
                acc
            })
            .collect()
    }

    /// Real coordinates `(Re a_00, Im a_00, Re a_01, ...)`.
    pub fn real_coords(&self) -> Vec<S::Real> {
        self.data.iter().flat_map(|a| [a.re(), a.im()]).collect()
    }

    /// Maximum entry modulus squared, as a cheap size measure.
    pub fn max_norm_sqr_f64(&self) -> f64 {
        self.data.iter().map(|a| a.to_c64().norm_sqr()).fold(0.0, f64::max)
    }

    pub fn to_float(&self) -> FloatMatrix {
        CMatrix { k: self.k, data: self.data.iter().map(S::to_c64).collect() }
    }

    pub fn is_antisymmetric(&self) -> bool {
        (0..self.k).all(|r| (r..self.k).all(|c| *self.get(r, c) == -self.get(c, r).clone()))
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            (0..self.k)
                .map(|r| Value::Array((0..self.k).map(|c| self.get(r, c).to_json()).collect()))
                .collect(),
        )
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let rows = v
            .as_array()
            .ok_or_else(|| Error::Parse("matrix must be an array of rows".into()))?;
        let rows = rows
            .iter()
            .map(|row| {
                row.as_array()
                    .ok_or_else(|| Error::Parse("matrix row must be an array".into()))?
                    .iter()
                    .map(S::from_json)
                    .collect::<Result<Vec<S>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(rows)
    }
}

impl<S: Scalar> CMatrix<S> {
    /// Converts an exact matrix into this scalar mode.
    pub fn convert(m: &ExactMatrix) -> Self {
        CMatrix { k: m.k, data: m.data.iter().map(S::from_gauss).collect() }
    }
}

impl<S: Scalar> fmt::Debug for CMatrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CMatrix({}x{})", self.k, self.k)?;
        for r in 0..self.k {
            let row: Vec<String> = (0..self.k).map(|c| format!("{:?}", self.get(r, c))).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.k {
            let row: Vec<String> = (0..self.k).map(|c| compact(self.get(r, c))).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

/// Short rendering used in text output: `0`, `1/2`, `-i`, `1-1/2i`.
pub fn compact(g: &GaussRational) -> String {
    use num::{Signed, Zero};
    match (g.re.is_zero(), g.im.is_zero()) {
        (true, true) => "0".into(),
        (false, true) => g.re.to_string(),
        (re_zero, false) => {
            let mag = g.im.abs();
            let im = if mag == num::One::one() { String::new() } else { mag.to_string() };
            let sign = if g.im.is_negative() { "-" } else if re_zero { "" } else { "+" };
            let head = if re_zero { String::new() } else { g.re.to_string() };
            format!("{head}{sign}{im}i")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type M = ExactMatrix;

    #[test]
    fn sl2_relations() {
        let e = M::unit(2, 0, 1);
        let f = M::unit(2, 1, 0);
        let h = M::diag(&[GaussRational::one(), -GaussRational::one()]);
        assert_eq!(e.bracket(&f).unwrap(), h);
        assert_eq!(h.bracket(&e).unwrap(), e.scale(&GaussRational::from_ints(2, 0)));
        assert!(e.bracket(&e).unwrap().is_zero());
    }

    #[test]
    fn bracket_rejects_mixed_sizes() {
        assert!(M::identity(3).bracket(&M::identity(4)).is_err());
    }

    #[test]
    fn so8_bracket_matches_entrywise_product() {
        let a = M::j(8, 0, 1);
        let b = M::j(8, 0, 2);
        let got = a.bracket(&b).unwrap();
        // [j12, j13] = -j23 with j_rs = E_rs - E_sr.
        let mut brute = M::zeros(8);
        for r in 0..8 {
            for c in 0..8 {
                let mut s = GaussRational::zero();
                for m in 0..8 {
                    s = s + a.get(r, m).clone() * b.get(m, c).clone()
                        - b.get(r, m).clone() * a.get(m, c).clone();
                }
                brute.set(r, c, s);
            }
        }
        assert_eq!(got, brute);
        assert_eq!(got, M::j(8, 1, 2).neg());
    }

    #[test]
    fn json_round_trip() {
        let m = M::from_fn(3, |r, c| GaussRational::from_ints(r as i64 - 1, c as i64) * GaussRational::ratio(1, 3));
        let back = M::from_json(&m.to_json()).unwrap();
        assert_eq!(m, back);
        let f = m.to_float();
        assert_eq!(FloatMatrix::from_json(&f.to_json()).unwrap(), f);
    }

    #[test]
    fn compact_rendering() {
        assert_eq!(compact(&GaussRational::from_ints(0, -1)), "-i");
        assert_eq!(compact(&"1/2+3i".parse().unwrap()), "1/2+3i");
        assert_eq!(compact(&GaussRational::from_ints(-2, 0)), "-2");
    }
}
