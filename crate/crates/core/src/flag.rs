// SPDX-License-Identifier: Apache-2.0

//! Points of ℙᴺ and of the quadric Qₙ ⊂ ℙⁿ⁺¹ given by Σ zⱼ² = 0.

use std::fmt;

use num::Zero;
use rand::Rng;
use rand_distr::StandardNormal;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::scalar::{Complex64, GaussRational, Real, Scalar, Sign, Tolerances};

/// A nonzero vector of homogeneous coordinates.
#[derive(Clone, PartialEq)]
pub struct ProjectivePoint<S> {
    coords: Vec<S>,
}

pub type ExactPoint = ProjectivePoint<GaussRational>;
pub type FloatPoint = ProjectivePoint<Complex64>;

impl<S: Scalar> ProjectivePoint<S> {
    pub fn new(coords: Vec<S>) -> Result<Self> {
        if coords.len() < 2 {
            return Err(Error::Domain("a projective point needs at least two coordinates".into()));
        }
        if coords.iter().all(S::is_zero) {
            return Err(Error::ZeroPoint);
        }
        Ok(Self { coords })
    }

    /// Basis vector e_j (0-based) in ℙᴺ.
    pub fn basis(ambient: usize, j: usize) -> Self {
        let mut coords = vec![S::zero(); ambient + 1];
        coords[j] = S::one();
        Self { coords }
    }

    pub fn coords(&self) -> &[S] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<S> {
        self.coords
    }

    /// N for a point of ℙᴺ.
    pub fn ambient(&self) -> usize {
        self.coords.len() - 1
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn norm_sqr(&self) -> S::Real {
        self.coords.iter().fold(S::Real::zero(), |acc, z| acc + z.norm_sqr())
    }

    /// Index of the largest-modulus coordinate, lowest index on ties. In float
    /// mode moduli within a relative 1e-12 count as tied, so canonicalizing
    /// twice picks the same pivot.
    pub fn pivot(&self) -> usize {
        let mut best = 0;
        let mut best_mod = self.coords[0].norm_sqr();
        for (j, z) in self.coords.iter().enumerate().skip(1) {
            let m = z.norm_sqr();
            if m.clearly_exceeds(&best_mod) {
                best = j;
                best_mod = m;
            }
        }
        best
    }

    pub fn scaled(&self, lambda: &S) -> Result<Self> {
        Self::new(self.coords.iter().map(|z| z.clone() * lambda.clone()).collect())
    }

    /// Representative with the pivot coordinate equal to 1.
    pub fn canonical(&self) -> Self {
        let piv = self.pivot();
        let inv = self.coords[piv].inv().expect("pivot is nonzero");
        let mut coords: Vec<S> = self.coords.iter().map(|z| z.clone() * inv.clone()).collect();
        coords[piv] = S::one();
        Self { coords }
    }

    /// Bilinear sum Σ zⱼ².
    pub fn quadric_value(&self) -> S {
        let mut acc = S::zero();
        for z in &self.coords {
            acc.mul_add_assign(z, z);
        }
        acc
    }

    /// Σ zⱼ² = 0, exactly or up to `tol.zero_form · ‖z‖²`.
    pub fn on_quadric(&self, tol: &Tolerances) -> bool {
        let v = self.quadric_value();
        if S::EXACT {
            return v.is_zero();
        }
        let scale = self.norm_sqr().as_f64();
        v.to_c64().norm() <= tol.zero_form * scale
    }

    /// Some λ ≠ 0 makes λz real: all minors Im(z̄_a z_b) vanish.
    pub fn is_projectively_real(&self, tol: &Tolerances) -> bool {
        let n = self.coords.len();
        let scale = self.norm_sqr();
        for a in 0..n {
            for b in a + 1..n {
                let minor = (self.coords[a].conj() * self.coords[b].clone()).im();
                if S::sign_of(&minor, &scale, tol).sign != Sign::Zero {
                    return false;
                }
            }
        }
        true
    }

    pub fn to_float(&self) -> FloatPoint {
        ProjectivePoint { coords: self.coords.iter().map(S::to_c64).collect() }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "ambient": self.ambient(),
            "coords": self.coords.iter().map(S::to_json).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let coords = v
            .get("coords")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("point JSON needs a `coords` array".into()))?
            .iter()
            .map(S::from_json)
            .collect::<Result<Vec<S>>>()?;
        if let Some(n) = v.get("ambient").and_then(Value::as_u64) {
            if n as usize + 1 != coords.len() {
                return Err(Error::DimensionMismatch { expected: n as usize + 1, got: coords.len() });
            }
        }
        Self::new(coords)
    }

    /// Parses colon-separated homogeneous coordinates such as `1:i:0`.
    pub fn parse(s: &str) -> Result<Self> {
        let coords = s.split(':').map(S::parse_entry).collect::<Result<Vec<S>>>()?;
        Self::new(coords)
    }
}

impl<S: Scalar> fmt::Debug for ProjectivePoint<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|z| format!("{z:?}")).collect();
        write!(f, "({})", parts.join(" : "))
    }
}

impl<S: Scalar> std::str::FromStr for ProjectivePoint<S> {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

/// A point of Qₙ: n + 2 homogeneous coordinates with Σ zⱼ² = 0.
#[derive(Clone, PartialEq, Debug)]
pub struct QuadricPoint<S: Scalar> {
    point: ProjectivePoint<S>,
}

impl<S: Scalar> QuadricPoint<S> {
    pub fn new(point: ProjectivePoint<S>, tol: &Tolerances) -> Result<Self> {
        if !point.on_quadric(tol) {
            return Err(Error::NotOnQuadric);
        }
        Ok(Self { point })
    }

    /// n for a point of Qₙ.
    pub fn n(&self) -> usize {
        self.point.ambient() - 1
    }

    pub fn point(&self) -> &ProjectivePoint<S> {
        &self.point
    }

    pub fn into_point(self) -> ProjectivePoint<S> {
        self.point
    }
}

/// Random point of ℙᴺ with independent complex Gaussian coordinates.
pub fn random_projective_point<R: Rng + ?Sized>(rng: &mut R, ambient: usize) -> FloatPoint {
    loop {
        let coords: Vec<Complex64> = (0..=ambient)
            .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
            .collect();
        if let Ok(p) = FloatPoint::new(coords) {
            return p;
        }
    }
}

fn unit_vector<R: Rng + ?Sized>(rng: &mut R, len: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..len).map(|_| rng.sample(StandardNormal)).collect();
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-6 {
            return v.into_iter().map(|x| x / norm).collect();
        }
    }
}

/// Random point of Qₙ as z = x + iy with x uniform on the unit sphere of
/// ℝⁿ⁺² and y uniform on the unit sphere of x⊥.
pub fn random_quadric_point<R: Rng + ?Sized>(rng: &mut R, n: usize) -> QuadricPoint<Complex64> {
    let len = n + 2;
    let x = unit_vector(rng, len);
    let y = loop {
        let mut y: Vec<f64> = (0..len).map(|_| rng.sample(StandardNormal)).collect();
        let dot: f64 = x.iter().zip(&y).map(|(a, b)| a * b).sum();
        for (yi, xi) in y.iter_mut().zip(&x) {
            *yi -= dot * xi;
        }
        let norm = y.iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm > 1e-6 {
            break y.into_iter().map(|v| v / norm).collect::<Vec<_>>();
        }
    };
    let coords = x.iter().zip(&y).map(|(a, b)| Complex64::new(*a, *b)).collect();
    QuadricPoint { point: ProjectivePoint { coords } }
}

fn random_gauss_int<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> GaussRational {
    GaussRational::from_ints(rng.random_range(-bound..=bound), rng.random_range(-bound..=bound))
}

/// Random point of ℙᴺ with Gaussian-integer coordinates in [-bound, bound].
pub fn random_exact_point<R: Rng + ?Sized>(rng: &mut R, ambient: usize, bound: i64) -> ExactPoint {
    loop {
        let coords = (0..=ambient).map(|_| random_gauss_int(rng, bound)).collect();
        if let Ok(p) = ExactPoint::new(coords) {
            return p;
        }
    }
}

/// Random point of Qₙ with Gaussian-integer coordinates: the image of the
/// isotropic vector p₀ = (1, i, 0, ...) under z = (v·v)p₀ − 2(p₀·v)v, which
/// is isotropic for every v.
pub fn random_exact_quadric_point<R: Rng + ?Sized>(rng: &mut R, n: usize, bound: i64) -> QuadricPoint<GaussRational> {
    let len = n + 2;
    let mut p0 = vec![GaussRational::zero(); len];
    p0[0] = GaussRational::one();
    p0[1] = GaussRational::i();
    loop {
        let v: Vec<GaussRational> = (0..len).map(|_| random_gauss_int(rng, bound)).collect();
        let vv = v.iter().fold(GaussRational::zero(), |acc, x| acc + x * x);
        let pv = p0.iter().zip(&v).fold(GaussRational::zero(), |acc, (a, b)| acc + a * b);
        let two_pv = &pv * &GaussRational::from_ints(2, 0);
        let coords: Vec<GaussRational> = p0.iter().zip(&v).map(|(a, b)| &(a * &vv) - &(&two_pv * b)).collect();
        if let Ok(p) = ExactPoint::new(coords) {
            return QuadricPoint { point: p };
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn ep(s: &str) -> ExactPoint {
        s.parse().unwrap()
    }

    #[test]
    fn quadric_membership() {
        let tol = Tolerances::default();
        assert!(ep("1:i:0:0").on_quadric(&tol));
        assert!(!ep("1:0:0:0").on_quadric(&tol));
        assert!(ep("1:0:0:0:i:0:0:0").on_quadric(&tol));
        assert!(ep("3:3i:0").scaled(&"2-5i".parse().unwrap()).unwrap().on_quadric(&tol));
    }

    #[test]
    fn projective_reality() {
        let tol = Tolerances::default();
        assert!(ep("1:2:3").is_projectively_real(&tol));
        assert!(ep("i:2i:3i").is_projectively_real(&tol));
        assert!(!ep("1:i:0").is_projectively_real(&tol));
        assert!(ep("1+i:2+2i:0").is_projectively_real(&tol));
    }

    #[test]
    fn canonical_form() {
        let p = ep("1:-3i:2");
        let c = p.canonical();
        assert_eq!(c.coords()[1], GaussRational::one());
        assert_eq!(c.canonical(), c);
        // Ties resolve to the lowest index.
        assert_eq!(ep("i:1:0").pivot(), 0);
    }

    #[test]
    fn float_canonical_is_idempotent_on_near_ties() {
        let a = Complex64::new(0.6, 0.8);
        let b = Complex64::new(0.8, -0.6) * (1.0 + 1e-15);
        let p = FloatPoint::new(vec![a, b, Complex64::new(0.1, 0.0)]).unwrap();
        let c = p.canonical();
        let cc = c.canonical();
        assert_eq!(c.pivot(), cc.pivot());
        for (x, y) in c.coords().iter().zip(cc.coords()) {
            assert!((x - y).norm() < 1e-15);
        }
    }

    #[test]
    fn rejects_zero() {
        assert_eq!(ExactPoint::parse("0:0:0").unwrap_err(), Error::ZeroPoint);
        assert!(ExactPoint::parse("1").is_err());
    }

    #[test]
    fn float_quadric_sampler() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let tol = Tolerances::default();
        for _ in 0..50 {
            let q = random_quadric_point(&mut rng, 6);
            let z = q.point().coords();
            let re_im: f64 = z.iter().map(|c| c.re * c.im).sum();
            let re2: f64 = z.iter().map(|c| c.re * c.re).sum();
            let im2: f64 = z.iter().map(|c| c.im * c.im).sum();
            assert!(re_im.abs() < 1e-12);
            assert!((re2 - im2).abs() < 1e-12);
            assert!(q.point().on_quadric(&tol));
        }
        let a = random_quadric_point(&mut ChaCha8Rng::seed_from_u64(3), 4);
        let b = random_quadric_point(&mut ChaCha8Rng::seed_from_u64(3), 4);
        assert_eq!(a, b);
    }

    #[test]
    fn exact_quadric_sampler() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let tol = Tolerances::default();
        for n in 1..8 {
            let q = random_exact_quadric_point(&mut rng, n, 3);
            assert_eq!(q.point().len(), n + 2);
            assert!(q.point().quadric_value().is_zero());
            assert!(QuadricPoint::new(q.point().clone(), &tol).is_ok());
        }
    }

    #[test]
    fn json_round_trip() {
        let p = ep("1/2:-i:3+4i");
        assert_eq!(ExactPoint::from_json(&p.to_json()).unwrap(), p);
        let f = p.to_float();
        assert_eq!(FloatPoint::from_json(&f.to_json()).unwrap(), f);
    }
}
