// SPDX-License-Identifier: Apache-2.0

//! Real orbit dimensions from the infinitesimal action on an affine chart.

use num::Zero;

use crate::error::{Error, Result};
use crate::flag::ProjectivePoint;
use crate::lie::{cached_real_form_basis, Classical, LieBasis, RealFormSpec};
use crate::matrix::CMatrix;
use crate::scalar::{Scalar, Tolerances};

/// Real tangent vectors of the orbit through a point, in the chart where the
/// pivot coordinate equals 1.
#[derive(Debug, Clone)]
pub struct TangentSpan<S: Scalar> {
    pub pivot: usize,
    /// One vector per basis element, real coordinates with the pivot slot
    /// removed (length 2N).
    pub vectors: Vec<Vec<S::Real>>,
    pub rank: usize,
}

/// Image of X at z in the chart {z_pivot = 1}: v = (Xz − μz)/z_pivot with
/// μ = (Xz)_pivot / z_pivot, so the pivot slot of v is zero.
pub fn tangent_vector<S: Scalar>(x: &CMatrix<S>, z: &ProjectivePoint<S>, pivot: usize) -> Result<Vec<S>> {
    if x.dim() != z.len() {
        return Err(Error::DimensionMismatch { expected: z.len(), got: x.dim() });
    }
    let zp = z.coords().get(pivot).ok_or(Error::DimensionMismatch { expected: z.len(), got: pivot + 1 })?;
    let inv = zp.inv().ok_or_else(|| Error::Domain(format!("chart coordinate {pivot} vanishes")))?;
    let xz = x.apply(z.coords());
    let mu = xz[pivot].clone() * inv.clone();
    let mut v: Vec<S> = xz
        .into_iter()
        .zip(z.coords())
        .map(|(a, b)| (a - mu.clone() * b.clone()) * inv.clone())
        .collect();
    v[pivot] = S::zero();
    Ok(v)
}

fn chart_coords<S: Scalar>(v: &[S], pivot: usize) -> Vec<S::Real> {
    v.iter()
        .enumerate()
        .filter(|(j, _)| *j != pivot)
        .flat_map(|(_, a)| [a.re(), a.im()])
        .collect()
}

/// Tangent span of the real algebra spanned by `basis` at z.
pub fn tangent_span<S: Scalar>(
    basis: &[CMatrix<S>],
    z: &ProjectivePoint<S>,
    pivot: usize,
    tol: &Tolerances,
) -> Result<TangentSpan<S>> {
    let vectors = basis
        .iter()
        .map(|x| tangent_vector(x, z, pivot).map(|v| chart_coords(&v, pivot)))
        .collect::<Result<Vec<_>>>()?;
    let rank = S::real_rank(&vectors, tol);
    Ok(TangentSpan { pivot, vectors, rank })
}

/// Converts an exact basis into the requested scalar mode.
pub fn basis_in<S: Scalar>(basis: &LieBasis) -> Vec<CMatrix<S>> {
    basis.elements.iter().map(CMatrix::<S>::convert).collect()
}

/// Real dimension of the orbit of the real form through z.
pub fn orbit_dimension<S: Scalar>(spec: &RealFormSpec, z: &ProjectivePoint<S>, tol: &Tolerances) -> Result<usize> {
    let basis = cached_real_form_basis(spec)?;
    if z.len() != basis.k {
        return Err(Error::DimensionMismatch { expected: basis.k, got: z.len() });
    }
    if spec.ambient().kind == Classical::So && !z.on_quadric(tol) {
        return Err(Error::NotOnQuadric);
    }
    orbit_dimension_with(&basis_in::<S>(&basis), z, tol)
}

/// Orbit dimension for an already converted basis, charted at the largest
/// coordinate.
pub fn orbit_dimension_with<S: Scalar>(basis: &[CMatrix<S>], z: &ProjectivePoint<S>, tol: &Tolerances) -> Result<usize> {
    if z.norm_sqr().is_zero() {
        return Err(Error::ZeroPoint);
    }
    Ok(tangent_span(basis, z, z.pivot(), tol)?.rank)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::explorer::expm::expm;
    use crate::flag::{ExactPoint, FloatPoint};
    use crate::matrix::{ExactMatrix, FloatMatrix};
    use crate::scalar::{Complex64, GaussRational};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn ep(s: &str) -> ExactPoint {
        s.parse().unwrap()
    }

    #[test]
    fn torus_fixes_basis_vector() {
        let x = ExactMatrix::diag(&[GaussRational::from_ints(2, 0), GaussRational::from_ints(-1, 0), GaussRational::from_ints(-1, 0)]);
        let v = tangent_vector(&x, &ep("1:0:0"), 0).unwrap();
        assert!(v.iter().all(|a| a.is_zero()));
    }

    #[test]
    fn elementary_moves_along_e2() {
        let x = ExactMatrix::unit(3, 1, 0);
        let v = tangent_vector(&x, &ep("1:0:0"), 0).unwrap();
        assert_eq!(v, vec![GaussRational::zero(), GaussRational::one(), GaussRational::zero()]);
    }

    #[test]
    fn matches_finite_difference() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let k = 4;
            let x = FloatMatrix::from_fn(k, |_, _| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)));
            let z = FloatPoint::new((0..k).map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).collect()).unwrap();
            let piv = z.pivot();
            let v = tangent_vector(&x, &z, piv).unwrap();
            let h = 1e-5;
            let chart = |m: &FloatMatrix| {
                let w = m.apply(z.coords());
                let d = w[piv];
                w.into_iter().map(|a| a / d).collect::<Vec<_>>()
            };
            let plus = chart(&expm(&x.scale(&Complex64::new(h, 0.0))));
            let minus = chart(&expm(&x.scale(&Complex64::new(-h, 0.0))));
            for j in 0..k {
                let fd = (plus[j] - minus[j]) / (2.0 * h);
                assert!((fd - v[j]).norm() < 1e-8, "slot {j}: {fd} vs {}", v[j]);
            }
        }
    }

    #[test]
    fn anchor_dimensions() {
        let tol = Tolerances::default();
        assert_eq!(orbit_dimension(&RealFormSpec::su(2, 1), &ep("1:0:1"), &tol).unwrap(), 3);
        assert_eq!(orbit_dimension(&RealFormSpec::SlReal { k: 4 }, &ep("1:0:0:0"), &tol).unwrap(), 3);
        let gamma = ep("1:0:0:0:i:0:0:0");
        assert_eq!(orbit_dimension(&RealFormSpec::so_twisted(5, 3, 1), &gamma, &tol).unwrap(), 9);
    }

    #[test]
    fn chart_independence() {
        let tol = Tolerances::default();
        let spec = RealFormSpec::SpPq { p: 1, q: 1 };
        let basis = basis_in::<GaussRational>(&cached_real_form_basis(&spec).unwrap());
        let z = ep("1:1:0:0");
        let ranks: Vec<usize> = (0..2).map(|p| tangent_span(&basis, &z, p, &tol).unwrap().rank).collect();
        assert_eq!(ranks, vec![5, 5]);
    }

    #[test]
    fn rejects_points_off_the_quadric() {
        let tol = Tolerances::default();
        assert_eq!(orbit_dimension(&RealFormSpec::so(3, 2), &ep("1:0:0:0:0"), &tol), Err(Error::NotOnQuadric));
    }
}
