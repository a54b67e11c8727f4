// SPDX-License-Identifier: Apache-2.0

//! Scalar fields for matrix entries.
//!
//! Two modes share one trait: exact Gaussian rationals ([`GaussRational`],
//! entries in ℚ(i)) and IEEE complex doubles ([`Complex64`]). Every algebraic
//! identity in the crate is checked in the exact mode; the float mode exists
//! for sampling and flows.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num::bigint::BigInt;
use num::{BigRational, One, Signed, ToPrimitive, Zero};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::linalg;

pub use num::complex::Complex64;

/// Tolerances used by the float mode. Exact mode ignores them.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Tolerances {
    /// A form value counts as zero when `|s| <= zero_form * |z|^2`.
    pub zero_form: f64,
    /// Values within a factor `uncertain_factor` of the zero band on either
    /// side are flagged as boundary-uncertain.
    pub uncertain_factor: f64,
    /// Singular values below `rank * sigma_max` do not count towards rank.
    pub rank: f64,
    /// Relative residual allowed for membership tests (quadric, real form).
    pub residual: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            zero_form: 1e-10,
            uncertain_factor: 100.0,
            rank: 1e-8,
            residual: 1e-9,
        }
    }
}

/// Sign of a real quantity together with an honesty flag for float mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SignReading {
    pub sign: Sign,
    pub uncertain: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

/// Real scalars: the real and imaginary parts of a [`Scalar`].
pub trait Real:
    Clone
    + fmt::Debug
    + PartialEq
    + PartialOrd
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Zero
{
    fn from_i64(v: i64) -> Self;
    fn as_f64(&self) -> f64;
    fn magnitude(&self) -> Self;
    /// `self > other`, ignoring float rounding for near-ties.
    fn clearly_exceeds(&self, other: &Self) -> bool;
    /// Exact values as `"a/b"` strings, floats as numbers.
    fn to_json(&self) -> Value;
}

impl Real for BigRational {
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn as_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
    fn magnitude(&self) -> Self {
        Signed::abs(self)
    }
    fn clearly_exceeds(&self, other: &Self) -> bool {
        self > other
    }
    fn to_json(&self) -> Value {
        Value::String(self.to_string())
    }
}

impl Real for f64 {
    fn from_i64(v: i64) -> Self {
        v as f64
    }
    fn as_f64(&self) -> f64 {
        *self
    }
    fn magnitude(&self) -> Self {
        f64::abs(*self)
    }
    fn clearly_exceeds(&self, other: &Self) -> bool {
        *self > *other * (1.0 + 1e-12)
    }
    fn to_json(&self) -> Value {
        serde_json::Number::from_f64(*self).map(Value::Number).unwrap_or(Value::Null)
    }
}

/// Common interface of the exact and float complex scalars.
pub trait Scalar:
    Clone
    + fmt::Debug
    + PartialEq
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    type Real: Real;

    /// True for the exact mode.
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn i() -> Self;
    fn from_parts(re: Self::Real, im: Self::Real) -> Self;
    fn from_gauss(g: &GaussRational) -> Self;
    fn re(&self) -> Self::Real;
    fn im(&self) -> Self::Real;
    fn conj(&self) -> Self;
    fn norm_sqr(&self) -> Self::Real;
    /// Exact zero test (a float is zero only when both parts are `0.0`).
    fn is_zero(&self) -> bool;
    fn inv(&self) -> Option<Self>;
    fn to_c64(&self) -> Complex64;

    fn from_i64(v: i64) -> Self {
        Self::from_parts(Self::Real::from_i64(v), Zero::zero())
    }

    fn scale_real(&self, r: &Self::Real) -> Self {
        Self::from_parts(self.re() * r.clone(), self.im() * r.clone())
    }

    /// `self += a * b`.
    fn mul_add_assign(&mut self, a: &Self, b: &Self) {
        let prod = a.clone() * b.clone();
        *self = self.clone() + prod;
    }

    /// Sign of `value` measured against the scale `norm` (typically `|z|^2`).
    fn sign_of(value: &Self::Real, norm: &Self::Real, tol: &Tolerances) -> SignReading;

    /// Rank over ℝ of a list of real vectors.
    fn real_rank(vectors: &[Vec<Self::Real>], tol: &Tolerances) -> usize;

    fn to_json(&self) -> Value;
    fn from_json(v: &Value) -> Result<Self>;
    fn parse_entry(s: &str) -> Result<Self>;
}

// ---------------------------------------------------------------------------
// Gaussian rationals
// ---------------------------------------------------------------------------

/// An element `re + im·i` of ℚ(i).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        Self::new(
            BigRational::from_integer(re.into()),
            BigRational::from_integer(im.into()),
        )
    }

    /// `num/den` as a real Gaussian rational.
    pub fn ratio(num: i64, den: i64) -> Self {
        Self::new(
            BigRational::new(num.into(), den.into()),
            BigRational::zero(),
        )
    }

    pub fn real(re: BigRational) -> Self {
        Self::new(re, BigRational::zero())
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn is_imaginary(&self) -> bool {
        self.re.is_zero()
    }
}

impl fmt::Debug for GaussRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Canonical text form `a/b+c/d*i`; both parts always present.
impl fmt::Display for GaussRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.im.is_negative() { '-' } else { '+' };
        write!(f, "{}{}{}*i", self.re, sign, Signed::abs(&self.im))
    }
}

impl FromStr for GaussRational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut out = GaussRational::default();
        for (negative, term) in split_terms(s)? {
            let (coeff, imaginary) = strip_imaginary(term);
            let mut value = if coeff.is_empty() {
                BigRational::one()
            } else {
                parse_rational(coeff).ok_or_else(|| Error::Parse(format!("bad rational `{coeff}` in `{s}`")))?
            };
            if negative {
                value = -value;
            }
            if imaginary {
                out.im += value;
            } else {
                out.re += value;
            }
        }
        Ok(out)
    }
}

fn parse_rational(s: &str) -> Option<BigRational> {
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(BigRational::new(n, d))
        }
        None => Some(BigRational::from_integer(s.trim().parse().ok()?)),
    }
}

/// Splits `"1/2-3*i"` into signed terms. A sign directly after an exponent
/// marker belongs to the float literal.
fn split_terms(s: &str) -> Result<Vec<(bool, &str)>> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty scalar".into()));
    }
    let bytes = s.as_bytes();
    let mut terms = Vec::new();
    let mut start = 0;
    let mut negative = false;
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if (c == b'+' || c == b'-') && !(i > 0 && matches!(bytes[i - 1], b'e' | b'E')) {
            let body = s[start..i].trim();
            if !body.is_empty() {
                terms.push((negative, body));
            } else if i != 0 {
                return Err(Error::Parse(format!("dangling sign in `{s}`")));
            }
            negative = c == b'-';
            start = i + 1;
        }
        i += 1;
    }
    let body = s[start..].trim();
    if body.is_empty() {
        return Err(Error::Parse(format!("dangling sign in `{s}`")));
    }
    terms.push((negative, body));
    Ok(terms)
}

fn strip_imaginary(term: &str) -> (&str, bool) {
    match term.strip_suffix('i') {
        Some(rest) => (rest.trim_end().trim_end_matches('*').trim(), true),
        None => (term, false),
    }
}

macro_rules! forward_owned_ops {
    ($t:ty, $($tr:ident :: $m:ident),*) => {$(
        impl $tr<$t> for $t {
            type Output = $t;
            fn $m(self, rhs: $t) -> $t { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a $t> for $t {
            type Output = $t;
            fn $m(self, rhs: &'a $t) -> $t { (&self).$m(rhs) }
        }
    )*};
}

impl<'a> Add<&'a GaussRational> for &'a GaussRational {
    type Output = GaussRational;
    fn add(self, rhs: &GaussRational) -> GaussRational {
        GaussRational::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl<'a> Sub<&'a GaussRational> for &'a GaussRational {
    type Output = GaussRational;
    fn sub(self, rhs: &GaussRational) -> GaussRational {
        GaussRational::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl<'a> Mul<&'a GaussRational> for &'a GaussRational {
    type Output = GaussRational;
    fn mul(self, rhs: &GaussRational) -> GaussRational {
        if self.im.is_zero() && rhs.im.is_zero() {
            return GaussRational::real(&self.re * &rhs.re);
        }
        GaussRational::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl<'a> Div<&'a GaussRational> for &'a GaussRational {
    type Output = GaussRational;
    fn div(self, rhs: &GaussRational) -> GaussRational {
        let inv = Scalar::inv(rhs).expect("division by zero Gaussian rational");
        self * &inv
    }
}

forward_owned_ops!(GaussRational, Add::add, Sub::sub, Mul::mul, Div::div);

impl Neg for GaussRational {
    type Output = GaussRational;
    fn neg(self) -> GaussRational {
        GaussRational::new(-self.re, -self.im)
    }
}

impl Neg for &GaussRational {
    type Output = GaussRational;
    fn neg(self) -> GaussRational {
        GaussRational::new(-&self.re, -&self.im)
    }
}

impl AddAssign<&GaussRational> for GaussRational {
    fn add_assign(&mut self, rhs: &GaussRational) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&GaussRational> for GaussRational {
    fn sub_assign(&mut self, rhs: &GaussRational) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl Scalar for GaussRational {
    type Real = BigRational;
    const EXACT: bool = true;

    fn zero() -> Self {
        Self::default()
    }
    fn one() -> Self {
        Self::from_ints(1, 0)
    }
    fn i() -> Self {
        Self::from_ints(0, 1)
    }
    fn from_parts(re: BigRational, im: BigRational) -> Self {
        Self::new(re, im)
    }
    fn from_gauss(g: &GaussRational) -> Self {
        g.clone()
    }
    fn re(&self) -> BigRational {
        self.re.clone()
    }
    fn im(&self) -> BigRational {
        self.im.clone()
    }
    fn conj(&self) -> Self {
        Self::new(self.re.clone(), -&self.im)
    }
    fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn inv(&self) -> Option<Self> {
        if Scalar::is_zero(self) {
            return None;
        }
        let d = self.norm_sqr();
        Some(Self::new(&self.re / &d, -&self.im / &d))
    }
    fn to_c64(&self) -> Complex64 {
        Complex64::new(Real::as_f64(&self.re), Real::as_f64(&self.im))
    }
    fn mul_add_assign(&mut self, a: &Self, b: &Self) {
        if Scalar::is_zero(a) || Scalar::is_zero(b) {
            return;
        }
        let p = a * b;
        *self += &p;
    }
    fn sign_of(value: &BigRational, _norm: &BigRational, _tol: &Tolerances) -> SignReading {
        let sign = if value.is_zero() {
            Sign::Zero
        } else if value.is_positive() {
            Sign::Positive
        } else {
            Sign::Negative
        };
        SignReading { sign, uncertain: false }
    }
    fn real_rank(vectors: &[Vec<BigRational>], _tol: &Tolerances) -> usize {
        linalg::rank(vectors)
    }
    fn to_json(&self) -> Value {
        Value::String(self.to_string())
    }
    fn from_json(v: &Value) -> Result<Self> {
        match v {
            Value::String(s) => s.parse(),
            Value::Number(n) if n.is_i64() => Ok(Self::from_ints(n.as_i64().unwrap(), 0)),
            other => Err(Error::Parse(format!("expected exact entry string, got {other}"))),
        }
    }
    fn parse_entry(s: &str) -> Result<Self> {
        s.parse()
    }
}

impl linalg::Field for GaussRational {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn one() -> Self {
        Scalar::one()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
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

// ---------------------------------------------------------------------------
// Complex doubles
// ---------------------------------------------------------------------------

impl Scalar for Complex64 {
    type Real = f64;
    const EXACT: bool = false;

    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn i() -> Self {
        Complex64::new(0.0, 1.0)
    }
    fn from_parts(re: f64, im: f64) -> Self {
        Complex64::new(re, im)
    }
    fn from_gauss(g: &GaussRational) -> Self {
        g.to_c64()
    }
    fn re(&self) -> f64 {
        self.re
    }
    fn im(&self) -> f64 {
        self.im
    }
    fn conj(&self) -> Self {
        Complex64::conj(self)
    }
    fn norm_sqr(&self) -> f64 {
        Complex64::norm_sqr(self)
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn inv(&self) -> Option<Self> {
        if Scalar::is_zero(self) {
            None
        } else {
            Some(Complex64::inv(self))
        }
    }
    fn to_c64(&self) -> Complex64 {
        *self
    }
    fn mul_add_assign(&mut self, a: &Self, b: &Self) {
        *self += a * b;
    }
    fn sign_of(value: &f64, norm: &f64, tol: &Tolerances) -> SignReading {
        let zero_band = tol.zero_form * norm;
        let sign = if value.abs() <= zero_band {
            Sign::Zero
        } else if *value > 0.0 {
            Sign::Positive
        } else {
            Sign::Negative
        };
        SignReading {
            sign,
            uncertain: value.abs() <= tol.uncertain_factor * zero_band && value.abs() * tol.uncertain_factor > zero_band,
        }
    }
    fn real_rank(vectors: &[Vec<f64>], tol: &Tolerances) -> usize {
        linalg::float_rank(vectors, tol.rank)
    }
    fn to_json(&self) -> Value {
        serde_json::json!([self.re, self.im])
    }
    fn from_json(v: &Value) -> Result<Self> {
        match v.as_array().map(|a| a.as_slice()) {
            Some([re, im]) => match (re.as_f64(), im.as_f64()) {
                (Some(re), Some(im)) => Ok(Complex64::new(re, im)),
                _ => Err(Error::Parse(format!("non-numeric float entry {v}"))),
            },
            _ => Err(Error::Parse(format!("expected [re, im] pair, got {v}"))),
        }
    }
    fn parse_entry(s: &str) -> Result<Self> {
        let mut out = Complex64::new(0.0, 0.0);
        for (negative, term) in split_terms(s)? {
            let (coeff, imaginary) = strip_imaginary(term);
            let mut value = if coeff.is_empty() {
                1.0
            } else if let Some(r) = parse_rational(coeff) {
                Real::as_f64(&r)
            } else {
                coeff
                    .parse::<f64>()
                    .map_err(|_| Error::Parse(format!("bad number `{coeff}` in `{s}`")))?
            };
            if negative {
                value = -value;
            }
            if imaginary {
                out.im += value;
            } else {
                out.re += value;
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> GaussRational {
        s.parse().unwrap()
    }

    #[test]
    fn parses_shorthand_forms() {
        assert_eq!(g("i"), GaussRational::i());
        assert_eq!(g("-i"), -GaussRational::i());
        assert_eq!(g("3"), GaussRational::from_ints(3, 0));
        assert_eq!(g("2-3i"), GaussRational::from_ints(2, -3));
        assert_eq!(g("-1/2+3/4*i").re, BigRational::new((-1).into(), 2.into()));
        assert_eq!(g("-1/2+3/4*i").im, BigRational::new(3.into(), 4.into()));
        assert!("1+".parse::<GaussRational>().is_err());
        assert!("1/0".parse::<GaussRational>().is_err());
    }

    #[test]
    fn display_round_trips() {
        for s in ["0", "i", "-7/3+1/2*i", "5-2i", "1/3*i"] {
            let v = g(s);
            assert_eq!(g(&v.to_string()), v);
        }
        assert_eq!(g("1/2-3i").to_string(), "1/2-3*i");
    }

    #[test]
    fn field_operations_are_exact() {
        let a = g("1/2+1/3*i");
        let b = g("-2+5i");
        let q = &a / &b;
        assert_eq!(&q * &b, a);
        assert_eq!(&(&a + &b) - &b, a);
        assert_eq!(GaussRational::i() * GaussRational::i(), -GaussRational::one());
        assert!(Scalar::inv(&GaussRational::zero()).is_none());
    }

    #[test]
    fn float_entries_parse() {
        let z = Complex64::parse_entry("0.5-1e-3i").unwrap();
        assert_eq!(z, Complex64::new(0.5, -1e-3));
        let z = Complex64::parse_entry("1.5e-2+2i").unwrap();
        assert_eq!(z, Complex64::new(1.5e-2, 2.0));
        assert_eq!(Complex64::parse_entry("1/4").unwrap(), Complex64::new(0.25, 0.0));
    }

    #[test]
    fn float_sign_flags_the_boundary() {
        let tol = Tolerances::default();
        let r = Complex64::sign_of(&1e-11, &1.0, &tol);
        assert_eq!(r.sign, Sign::Zero);
        assert!(r.uncertain);
        let r = Complex64::sign_of(&1e-9, &1.0, &tol);
        assert_eq!(r.sign, Sign::Positive);
        assert!(r.uncertain);
        let r = Complex64::sign_of(&1e-16, &1.0, &tol);
        assert_eq!(r, SignReading { sign: Sign::Zero, uncertain: false });
        let r = Complex64::sign_of(&-0.3, &1.0, &tol);
        assert_eq!(r, SignReading { sign: Sign::Negative, uncertain: false });
    }
}
