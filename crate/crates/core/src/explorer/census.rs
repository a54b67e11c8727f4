// SPDX-License-Identifier: Apache-2.0

//! Empirical orbit census: random points for the open orbits, flowed base
//! points for the lower-dimensional ones.

use std::collections::{BTreeMap, BTreeSet};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::flow::{flow_unchecked, random_generator, FlowConfig};
use crate::error::Result;
use crate::flag::{random_projective_point, random_quadric_point, ExactPoint, FloatPoint, ProjectivePoint};
use crate::geometry::{basis_in, orbit_dimension_with};
use crate::invariants::{classify, orbit_labels, OrbitLabel};
use crate::lie::{a_matrix, cached_real_form_basis, Classical, RealFormSpec};
use crate::matrix::FloatMatrix;
use crate::scalar::{Complex64, GaussRational, Scalar};

/// Stream offset separating constructed-point trials from random samples.
const CONSTRUCTED_STREAM: u64 = 1 << 40;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelStats {
    pub count: usize,
    pub min_dim: usize,
    pub max_dim: usize,
    pub expected_dim: usize,
    pub uncertain: usize,
}

impl LabelStats {
    fn record(&mut self, dim: usize, uncertain: bool) {
        self.count += 1;
        self.min_dim = self.min_dim.min(dim);
        self.max_dim = self.max_dim.max(dim);
        self.uncertain += uncertain as usize;
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CensusReport {
    pub spec: RealFormSpec,
    pub name: String,
    /// Dimension of the flag manifold.
    pub n: usize,
    pub seed: u64,
    pub samples: usize,
    pub constructed_per_orbit: usize,
    pub sampled: BTreeMap<String, LabelStats>,
    pub constructed: BTreeMap<String, LabelStats>,
    pub expected: Vec<String>,
    pub mismatches: Vec<String>,
}

impl CensusReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }

    /// Labels seen by either method.
    pub fn observed(&self) -> BTreeSet<String> {
        self.sampled.keys().chain(self.constructed.keys()).cloned().collect()
    }
}

fn unit(k: usize, j: usize) -> Vec<GaussRational> {
    let mut v = vec![GaussRational::zero(); k];
    v[j] = GaussRational::one();
    v
}

fn point(v: Vec<GaussRational>) -> ExactPoint {
    ProjectivePoint::new(v).expect("nonzero base point")
}

/// 𝒜(1:0:…:0:1) and 𝒜(1:i:0:…:0:i:1).
fn s_points(p: usize, q: usize) -> (ExactPoint, Option<ExactPoint>) {
    let k = p + q;
    let a = a_matrix(p, q);
    let mut s1 = unit(k, 0);
    s1[k - 1] = GaussRational::one();
    let s2 = (q >= 2).then(|| {
        let mut v = unit(k, 0);
        v[k - 1] = GaussRational::one();
        v[1] = GaussRational::i();
        v[k - 2] = GaussRational::i();
        point(a.apply(&v))
    });
    (point(a.apply(&s1)), s2)
}

/// One exact point in every orbit of positive codimension.
pub fn base_points(spec: &RealFormSpec) -> Result<Vec<(OrbitLabel, ExactPoint)>> {
    spec.validate()?;
    let k = spec.k();
    let i = GaussRational::i;
    let mut pts = Vec::new();
    match *spec {
        RealFormSpec::Su { q, .. } if q > 0 => {
            let mut v = unit(k, 0);
            v[k - 1] = GaussRational::one();
            pts.push(point(v));
        }
        RealFormSpec::SlReal { .. } => pts.push(point(unit(k, 0))),
        RealFormSpec::SpPq { p, q } if q > 0 => {
            let mut v = unit(k, 0);
            v[p] = GaussRational::one();
            pts.push(point(v));
        }
        RealFormSpec::SpReal { .. } => {
            pts.push(point(unit(k, 0)));
            if k >= 4 {
                let mut v = unit(k, 0);
                v[k - 1] = i();
                pts.push(point(v));
            }
        }
        RealFormSpec::So { p, q, twist } => match (twist, p, q) {
            (0, _, 1..) | (_, 4, 4) => {
                let (s1, s2) = s_points(p, q);
                pts.push(s1);
                pts.extend(s2);
            }
            (_, 6, 2) => {
                let mut v = unit(k, 0);
                v[2] = i();
                pts.push(point(v));
            }
            (_, 5, 3) => {
                let mut v = unit(k, 0);
                v[4] = i();
                pts.push(point(v));
            }
            _ => {}
        },
        RealFormSpec::SoStar { .. } => {
            let mut v = unit(k, 0);
            v[1] = i();
            pts.push(point(v));
        }
        _ => {}
    }
    let tol = Default::default();
    pts.into_iter().map(|z| Ok((classify(spec, &z, &tol)?.label, z))).collect()
}

/// Extra Γ points (c, i d) and (c, i c̄) for the twisted so(5,3) action.
fn gamma_family<R: Rng + ?Sized>(rng: &mut R) -> FloatPoint {
    let gauss = |rng: &mut R, n: usize| -> Vec<f64> {
        let v: Vec<f64> = (0..n).map(|_| rng.sample(StandardNormal)).collect();
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        v.into_iter().map(|x| x / norm).collect()
    };
    let c = gauss(rng, 4);
    let coords: Vec<Complex64> = if rng.random_bool(0.5) {
        let d = gauss(rng, 4);
        c.iter().map(|x| Complex64::new(*x, 0.0)).chain(d.iter().map(|y| Complex64::new(0.0, *y))).collect()
    } else {
        // c = a + ib with a ⊥ b makes Σ cⱼ² real.
        let mut b = gauss(rng, 4);
        let dot: f64 = c.iter().zip(&b).map(|(x, y)| x * y).sum();
        b.iter_mut().zip(&c).for_each(|(y, x)| *y -= dot * x);
        let s: f64 = rng.random_range(0.1..1.0);
        let cc: Vec<Complex64> = c.iter().zip(&b).map(|(x, y)| Complex64::new(*x, s * y)).collect();
        cc.iter().copied().chain(cc.iter().map(|z| Complex64::i() * z.conj())).collect()
    };
    FloatPoint::new(coords).expect("nonzero")
}

fn is_quadric(spec: &RealFormSpec) -> bool {
    spec.ambient().kind == Classical::So
}

/// Dimension of the flag manifold the form acts on.
pub fn flag_dimension(spec: &RealFormSpec) -> usize {
    if is_quadric(spec) {
        spec.k() - 2
    } else {
        spec.k() - 1
    }
}

fn trial_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

struct Observation {
    label: OrbitLabel,
    dim: usize,
    uncertain: bool,
    expected: Option<OrbitLabel>,
}

fn observe(spec: &RealFormSpec, basis: &[FloatMatrix], z: &FloatPoint, cfg: &FlowConfig, expected: Option<OrbitLabel>) -> Result<Observation> {
    let c = classify(spec, z, &cfg.tol)?;
    let dim = orbit_dimension_with(basis, z, &cfg.tol)?;
    Ok(Observation { label: c.label, dim, uncertain: c.boundary_uncertain, expected })
}

/// Classifies `samples` random points plus `constructed` flowed copies of each
/// base point, and compares the labels with the orbit list.
pub fn empirical_orbit_census(spec: &RealFormSpec, samples: usize, constructed: usize, cfg: &FlowConfig) -> Result<CensusReport> {
    cfg.validate()?;
    let n = flag_dimension(spec);
    let basis = basis_in::<Complex64>(&*cached_real_form_basis(spec)?);
    let quadric = is_quadric(spec);
    let sampled: Vec<Observation> = (0..samples as u64)
        .into_par_iter()
        .map(|t| {
            let mut rng = trial_rng(cfg.seed, t);
            let z = if quadric { random_quadric_point(&mut rng, n).into_point() } else { random_projective_point(&mut rng, n) };
            observe(spec, &basis, &z, cfg, None)
        })
        .collect::<Result<_>>()?;

    let bases = base_points(spec)?;
    let gamma = *spec == RealFormSpec::so_twisted(5, 3, 1);
    let jobs: Vec<(usize, usize)> = (0..bases.len()).flat_map(|b| (0..constructed).map(move |j| (b, j))).collect();
    let built: Vec<Observation> = jobs
        .par_iter()
        .map(|&(b, j)| {
            let mut rng = trial_rng(cfg.seed, CONSTRUCTED_STREAM + (b * constructed + j) as u64);
            let (label, base) = &bases[b];
            let start = if gamma && j % 2 == 1 { gamma_family(&mut rng) } else { base.to_float() };
            let x = random_generator(&mut rng, &basis, cfg.generator_norm);
            let t = rng.random_range(-cfg.horizon..=cfg.horizon);
            observe(spec, &basis, &flow_unchecked(&start, &x, t), cfg, Some(*label))
        })
        .collect::<Result<_>>()?;

    let mut report = CensusReport {
        spec: *spec,
        name: spec.to_string(),
        n,
        seed: cfg.seed,
        samples,
        constructed_per_orbit: constructed,
        sampled: BTreeMap::new(),
        constructed: BTreeMap::new(),
        expected: Vec::new(),
        mismatches: Vec::new(),
    };
    let tally = |map: &mut BTreeMap<String, LabelStats>, o: &Observation| {
        map.entry(o.label.name())
            .or_insert(LabelStats { count: 0, min_dim: usize::MAX, max_dim: 0, expected_dim: o.label.expected_dim(), uncertain: 0 })
            .record(o.dim, o.uncertain);
    };
    for o in &sampled {
        tally(&mut report.sampled, o);
    }
    for o in &built {
        tally(&mut report.constructed, o);
        if let Some(e) = o.expected.filter(|e| *e != o.label) {
            report.mismatches.push(format!("constructed point of {e} classified as {}", o.label));
        }
    }

    let labels = orbit_labels(spec)?;
    report.expected = labels.iter().map(OrbitLabel::name).collect();
    for l in &labels {
        let name = l.name();
        let (map, how) = if l.is_open() { (&report.sampled, "sampling") } else { (&report.constructed, "base points") };
        if !map.contains_key(&name) {
            report.mismatches.push(format!("{name} not reached by {how}"));
        }
    }
    for (name, stats) in report.sampled.iter().chain(&report.constructed) {
        if !report.expected.contains(name) {
            report.mismatches.push(format!("unexpected label {name}"));
        }
        if stats.min_dim != stats.expected_dim || stats.max_dim != stats.expected_dim {
            report.mismatches.push(format!(
                "{name}: orbit dimensions {}..{} but expected {}",
                stats.min_dim, stats.max_dim, stats.expected_dim
            ));
        }
    }
    // Generic samples land on a lower-dimensional orbit with probability zero.
    if let Some(o) = sampled.iter().find(|o| !o.label.is_open()) {
        report.mismatches.push(format!("random sample classified into {}", o.label));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(seed: u64) -> FlowConfig {
        FlowConfig { seed, ..Default::default() }
    }

    #[test]
    fn su21_census() {
        let r = empirical_orbit_census(&RealFormSpec::su(2, 1), 2000, 20, &cfg(7)).unwrap();
        assert!(r.passed(), "{:?}", r.mismatches);
        assert_eq!(r.sampled.keys().cloned().collect::<Vec<_>>(), ["B+_{2,1}", "B-_{2,1}"]);
        assert_eq!(r.constructed.keys().cloned().collect::<Vec<_>>(), ["Q_{2,1}"]);
        assert_eq!(r.sampled.values().map(|s| s.count).sum::<usize>(), 2000);
    }

    #[test]
    fn deterministic_in_seed() {
        let spec = RealFormSpec::SpReal { k: 4 };
        let a = empirical_orbit_census(&spec, 300, 5, &cfg(11)).unwrap();
        let b = empirical_orbit_census(&spec, 300, 5, &cfg(11)).unwrap();
        assert_eq!(a, b);
        assert!(a.passed(), "{:?}", a.mismatches);
    }

    #[test]
    fn so71_twisted_is_transitive() {
        let r = empirical_orbit_census(&RealFormSpec::so_twisted(7, 1, 1), 200, 5, &cfg(3)).unwrap();
        assert!(r.passed(), "{:?}", r.mismatches);
        assert_eq!(r.sampled["transitive"].max_dim, 12);
    }

    #[test]
    fn so53_twisted_has_gamma() {
        let r = empirical_orbit_census(&RealFormSpec::so_twisted(5, 3, 1), 200, 20, &cfg(5)).unwrap();
        assert!(r.passed(), "{:?}", r.mismatches);
        assert_eq!(r.constructed["Gamma"].max_dim, 9);
    }

    #[test]
    fn base_points_cover_lower_orbits() {
        for spec in crate::lie::all_real_forms(8) {
            let Ok(labels) = orbit_labels(&spec) else { continue };
            let lower: BTreeSet<_> = labels.iter().filter(|l| !l.is_open()).copied().collect();
            let got: BTreeSet<_> = base_points(&spec).unwrap().into_iter().map(|(l, _)| l).collect();
            assert_eq!(got, lower, "{spec}");
        }
    }
}
