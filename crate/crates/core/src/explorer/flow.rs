// SPDX-License-Identifier: Apache-2.0

//! One-parameter subgroup flows and label-invariance checks.

use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use super::expm::expm;
use crate::error::{Error, Result};
use crate::flag::FloatPoint;
use crate::geometry::basis_in;
use crate::invariants::{classify, Classification, OrbitLabel};
use crate::lie::{cached_real_form_basis, float_in_real_span, Classical, RealFormSpec};
use crate::matrix::FloatMatrix;
use crate::scalar::{Complex64, Tolerances};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct FlowConfig {
    pub seed: u64,
    /// Random generators per point.
    pub trials: usize,
    /// Flow horizon T; times are sampled on a uniform grid in [-T, T].
    pub horizon: f64,
    pub grid: usize,
    /// Frobenius norm of the random generators.
    pub generator_norm: f64,
    /// Orbit dimensions are recorded for at most this many samples per label.
    pub dim_checks: usize,
    pub tol: Tolerances,
}

impl Default for FlowConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            trials: 100,
            horizon: 1.0,
            grid: 20,
            generator_norm: 2.0,
            dim_checks: 40,
            tol: Tolerances::default(),
        }
    }
}

impl FlowConfig {
    pub fn validate(&self) -> Result<()> {
        let t = &self.tol;
        let positive = [self.horizon, self.generator_norm, t.zero_form, t.uncertain_factor, t.rank, t.residual];
        if positive.iter().any(|x| !(x.is_finite() && *x > 0.0)) || self.grid < 2 {
            return Err(Error::Domain("flow tolerances and horizon must be positive, grid >= 2".into()));
        }
        Ok(())
    }

    pub fn times(&self) -> Vec<f64> {
        let h = self.horizon;
        (0..self.grid).map(|i| -h + 2.0 * h * i as f64 / (self.grid - 1) as f64).collect()
    }
}

/// Random element of the real form: Gaussian coefficients on the real basis,
/// rescaled to the configured norm.
pub fn random_generator<R: Rng + ?Sized>(rng: &mut R, basis: &[FloatMatrix], norm: f64) -> FloatMatrix {
    let k = basis[0].dim();
    let mut x = FloatMatrix::zeros(k);
    for b in basis {
        let c: f64 = rng.sample(StandardNormal);
        x = x.add(&b.scale(&Complex64::new(c, 0.0)));
    }
    let f = x.entries().iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if f == 0.0 {
        return x;
    }
    x.scale(&Complex64::new(norm / f, 0.0))
}

/// exp(tX)·z, canonicalized. X must lie in the real form.
pub fn flow_point(spec: &RealFormSpec, z: &FloatPoint, x: &FloatMatrix, t: f64, tol: &Tolerances) -> Result<FloatPoint> {
    let basis = cached_real_form_basis(spec)?;
    if x.dim() != basis.k || z.len() != basis.k {
        return Err(Error::DimensionMismatch { expected: basis.k, got: x.dim().max(z.len()) });
    }
    if !float_in_real_span(&basis, x, tol.residual) {
        return Err(Error::NotInRealForm(spec.to_string()));
    }
    Ok(flow_unchecked(z, x, t))
}

pub(crate) fn flow_unchecked(z: &FloatPoint, x: &FloatMatrix, t: f64) -> FloatPoint {
    let g = expm(&x.scale(&Complex64::new(t, 0.0)));
    FloatPoint::new(g.apply(z.coords())).expect("group elements are invertible").canonical()
}

/// |Σ zⱼ²| / |z|².
pub fn quadric_residual(z: &FloatPoint) -> f64 {
    z.quadric_value().norm() / z.norm_sqr()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LabelChange {
    pub trial: usize,
    pub t: f64,
    pub label: OrbitLabel,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StabilityReport {
    pub spec: RealFormSpec,
    pub start: Classification,
    pub trials: usize,
    pub steps: usize,
    pub changes: Vec<LabelChange>,
    /// Points along the flow whose reading fell in the uncertainty band.
    pub uncertain: usize,
    pub max_quadric_residual: Option<f64>,
    /// |form|/|z|² along the flow, tracked when the start lies on the zero set.
    pub max_zero_form_residual: Option<f64>,
}

impl StabilityReport {
    pub fn passed(&self) -> bool {
        self.changes.is_empty()
    }
}

fn form_magnitude(c: &Classification) -> Option<f64> {
    c.form_value.as_ref().and_then(|v| v.as_f64()).map(f64::abs)
}

/// Flows z along `cfg.trials` random generators over the time grid and
/// reports any label change.
pub fn invariant_stability_test<R: Rng + ?Sized>(
    spec: &RealFormSpec,
    z: &FloatPoint,
    cfg: &FlowConfig,
    rng: &mut R,
) -> Result<StabilityReport> {
    cfg.validate()?;
    let tol = &cfg.tol;
    let start = classify(spec, z, tol)?;
    if start.boundary_uncertain {
        return Err(Error::Domain("starting point is boundary-uncertain".into()));
    }
    let basis = basis_in::<Complex64>(&*cached_real_form_basis(spec)?);
    let on_quadric = spec.ambient().kind == Classical::So;
    let on_zero_set = start.form_value.is_some() && !start.label.is_open();
    let mut report = StabilityReport {
        spec: *spec,
        start: start.clone(),
        trials: cfg.trials,
        steps: 0,
        changes: Vec::new(),
        uncertain: 0,
        max_quadric_residual: on_quadric.then_some(0.0),
        max_zero_form_residual: on_zero_set.then_some(0.0),
    };
    let times = cfg.times();
    for trial in 0..cfg.trials {
        let x = random_generator(rng, &basis, cfg.generator_norm);
        for &t in &times {
            let w = flow_unchecked(z, &x, t);
            report.steps += 1;
            if let Some(r) = report.max_quadric_residual.as_mut() {
                *r = r.max(quadric_residual(&w));
            }
            let c = classify(spec, &w, tol)?;
            if let (Some(r), Some(v)) = (report.max_zero_form_residual.as_mut(), form_magnitude(&c)) {
                *r = r.max(v / w.norm_sqr());
            }
            if c.boundary_uncertain {
                report.uncertain += 1;
            } else if c.label != start.label {
                report.changes.push(LabelChange { trial, t, label: c.label });
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flag::ExactPoint;
    use crate::geometry::orbit_dimension;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn fp(s: &str) -> FloatPoint {
        s.parse::<ExactPoint>().unwrap().to_float()
    }

    fn cfg(trials: usize) -> FlowConfig {
        FlowConfig { trials, ..Default::default() }
    }

    #[test]
    fn time_zero_and_inverse() {
        let spec = RealFormSpec::su(2, 1);
        let basis = basis_in::<Complex64>(&cached_real_form_basis(&spec).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let x = random_generator(&mut rng, &basis, 2.0);
        let z = fp("1:2i:-1");
        let tol = Tolerances::default();
        let same = flow_point(&spec, &z, &x, 0.0, &tol).unwrap();
        let back = flow_point(&spec, &flow_point(&spec, &z, &x, 0.7, &tol).unwrap(), &x, -0.7, &tol).unwrap();
        let c = z.canonical();
        for j in 0..3 {
            assert!((same.coords()[j] - c.coords()[j]).norm() < 1e-14);
            assert!((back.coords()[j] - c.coords()[j]).norm() < 1e-9);
        }
    }

    #[test]
    fn rejects_generators_outside_the_form() {
        let spec = RealFormSpec::su(2, 1);
        let x = FloatMatrix::unit(3, 0, 1);
        assert!(matches!(flow_point(&spec, &fp("1:0:0"), &x, 0.5, &Tolerances::default()), Err(Error::NotInRealForm(_))));
    }

    #[test]
    fn su21_ball_is_stable() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let r = invariant_stability_test(&RealFormSpec::su(2, 1), &fp("1:0:0"), &cfg(100), &mut rng).unwrap();
        assert!(r.passed());
        assert_eq!(r.start.name, "B+_{2,1}");
        assert_eq!(r.steps, 2000);
    }

    #[test]
    fn sigma_stays_sigma() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let r = invariant_stability_test(&RealFormSpec::SpReal { k: 4 }, &fp("1:0:0:i"), &cfg(30), &mut rng).unwrap();
        assert!(r.passed(), "{:?}", r.changes.first());
        assert_eq!(r.start.name, "Sigma_3");
        assert!(r.max_zero_form_residual.unwrap() <= 1e-9);
    }

    #[test]
    fn quadric_is_preserved() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let spec = RealFormSpec::so(5, 3);
        let r = invariant_stability_test(&spec, &fp("1:i:0:0:0:0:0:0"), &cfg(20), &mut rng).unwrap();
        assert!(r.passed());
        assert!(r.max_quadric_residual.unwrap() <= 1e-9);
    }

    #[test]
    fn gamma_keeps_dimension_nine() {
        let spec = RealFormSpec::so_twisted(5, 3, 1);
        let basis = basis_in::<Complex64>(&cached_real_form_basis(&spec).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let tol = Tolerances::default();
        let z = fp("1:0:0:0:i:0:0:0");
        for _ in 0..10 {
            let x = random_generator(&mut rng, &basis, 2.0);
            let w = flow_point(&spec, &z, &x, 0.8, &tol).unwrap();
            assert_eq!(orbit_dimension(&spec, &w, &tol).unwrap(), 9);
        }
    }
}
