// SPDX-License-Identifier: Apache-2.0

use num::{BigRational, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use realforms::explorer::base_points;
use realforms::flag::{random_exact_point, random_exact_quadric_point};
use realforms::geometry::{basis_in, orbit_dimension, tangent_span};
use realforms::lie::{a_matrix, cached_real_form_basis, Classical};
use realforms::{
    check_conditions, classify, Classification, Complex64, ExactMatrix, ExactPoint, FloatPoint, GaussRational,
    OrbitLabel, RealFormSpec, Scalar, Series, SeriesTag, Tolerances,
};

fn specs() -> Vec<RealFormSpec> {
    let cx = |series, k| RealFormSpec::ComplexAsReal { tag: SeriesTag::new(series, k).unwrap() };
    vec![
        RealFormSpec::su(2, 1),
        RealFormSpec::su(3, 0),
        RealFormSpec::su(2, 2),
        RealFormSpec::su(3, 1),
        RealFormSpec::SlReal { k: 3 },
        RealFormSpec::SlReal { k: 4 },
        RealFormSpec::SlQuat { k: 4 },
        RealFormSpec::SpPq { p: 1, q: 1 },
        RealFormSpec::SpPq { p: 2, q: 1 },
        RealFormSpec::SpReal { k: 4 },
        RealFormSpec::SpReal { k: 6 },
        RealFormSpec::so(3, 2),
        RealFormSpec::so(4, 1),
        RealFormSpec::so(5, 2),
        RealFormSpec::so(4, 3),
        RealFormSpec::so(6, 1),
        RealFormSpec::SoStar { k: 6 },
        RealFormSpec::SoStar { k: 10 },
        RealFormSpec::so(6, 2),
        RealFormSpec::so_twisted(6, 2, 1),
        RealFormSpec::so_twisted(5, 3, 1),
        RealFormSpec::so_twisted(4, 4, 2),
        RealFormSpec::so_twisted(7, 1, 1),
        cx(Series::A, 3),
        cx(Series::B, 5),
        cx(Series::D, 8),
    ]
}

fn on_quadric(spec: &RealFormSpec) -> bool {
    spec.ambient().kind == Classical::So
}

/// A random point of the flag manifold, or a base point of a lower orbit.
fn point(spec: &RealFormSpec, seed: u64, use_base: bool) -> ExactPoint {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if use_base {
        let base = base_points(spec).unwrap();
        if !base.is_empty() {
            return base[seed as usize % base.len()].1.clone();
        }
    }
    let k = spec.k();
    if on_quadric(spec) {
        random_exact_quadric_point(&mut rng, k - 2, 3).into_point()
    } else {
        random_exact_point(&mut rng, k - 1, 3)
    }
}

fn gauss() -> impl Strategy<Value = GaussRational> {
    (-9i64..=9, -9i64..=9, 1i64..=7)
        .prop_filter("nonzero", |(a, b, _)| *a != 0 || *b != 0)
        .prop_map(|(a, b, d)| {
            let den = BigRational::from_integer(d.into());
            GaussRational::new(BigRational::from_integer(a.into()) / &den, BigRational::from_integer(b.into()) / den)
        })
}

fn scaled(z: &ExactPoint, l: &GaussRational) -> ExactPoint {
    ExactPoint::new(z.coords().iter().map(|c| c * l).collect()).unwrap()
}

fn case() -> impl Strategy<Value = (RealFormSpec, u64, bool)> {
    (0..specs().len(), any::<u64>(), any::<bool>()).prop_map(|(i, s, b)| (specs()[i], s, b))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 96, ..ProptestConfig::default() })]

    #[test]
    fn exact_labels_are_scaling_invariant((spec, seed, base) in case(), l in gauss()) {
        let tol = Tolerances::default();
        let z = point(&spec, seed, base);
        let a = classify(&spec, &z, &tol).unwrap();
        let b = classify(&spec, &scaled(&z, &l), &tol).unwrap();
        prop_assert_eq!(a.label, b.label);
        prop_assert!(!a.boundary_uncertain);
    }

    #[test]
    fn float_labels_are_scaling_invariant((spec, seed, base) in case(), mag in -3.0f64..3.0, arg in 0.0f64..6.3) {
        let tol = Tolerances::default();
        let z = point(&spec, seed, base).to_float();
        let l = Complex64::from_polar(10f64.powf(mag), arg);
        let w = FloatPoint::new(z.coords().iter().map(|c| c * l).collect()).unwrap();
        let (a, b) = (classify(&spec, &z, &tol).unwrap(), classify(&spec, &w, &tol).unwrap());
        if !a.boundary_uncertain && !b.boundary_uncertain {
            prop_assert_eq!(a.label, b.label);
        }
    }

    #[test]
    fn float_agrees_with_exact((spec, seed, base) in case()) {
        let tol = Tolerances::default();
        let z = point(&spec, seed, base);
        let exact = classify(&spec, &z, &tol).unwrap();
        let float = classify(&spec, &z.to_float(), &tol).unwrap();
        if !float.boundary_uncertain {
            prop_assert_eq!(exact.label, float.label);
        }
    }

    #[test]
    fn canonicalization((spec, seed, base) in case(), l in gauss()) {
        let z = point(&spec, seed, base);
        let c = z.canonical();
        prop_assert_eq!(c.canonical(), c.clone());
        prop_assert_eq!(scaled(&z, &l).canonical(), c);
        let f = z.to_float().canonical();
        let ff = f.canonical();
        for (a, b) in f.coords().iter().zip(ff.coords()) {
            prop_assert!((a - b).norm() <= 1e-15);
        }
    }

    #[test]
    fn on_quadric_is_scaling_invariant((spec, seed, base) in case(), l in gauss()) {
        let tol = Tolerances::default();
        let z = point(&spec, seed, base);
        prop_assert_eq!(z.on_quadric(&tol), scaled(&z, &l).on_quadric(&tol));
        prop_assert_eq!(z.on_quadric(&tol), on_quadric(&spec) || z.quadric_value().is_zero());
    }

    #[test]
    fn label_dimension_matches_orbit_dimension((spec, seed, base) in case()) {
        let tol = Tolerances::default();
        let z = point(&spec, seed, base);
        let c = classify(&spec, &z, &tol).unwrap();
        prop_assert_eq!(orbit_dimension(&spec, &z, &tol).unwrap(), c.expected_dim, "{} {}", spec, c.name);
    }

    #[test]
    fn rank_does_not_depend_on_the_chart((spec, seed, base) in case()) {
        let tol = Tolerances::default();
        let z = point(&spec, seed, base);
        let basis = basis_in::<GaussRational>(&cached_real_form_basis(&spec).unwrap());
        let ranks: Vec<usize> = (0..z.len())
            .filter(|&j| !z.coords()[j].is_zero())
            .map(|j| tangent_span(&basis, &z, j, &tol).unwrap().rank)
            .collect();
        prop_assert!(ranks.windows(2).all(|w| w[0] == w[1]), "{:?}", ranks);
    }

    #[test]
    fn point_json_round_trips((spec, seed, base) in case()) {
        let z = point(&spec, seed, base);
        prop_assert_eq!(ExactPoint::from_json(&z.to_json()).unwrap(), z.clone());
        let f = z.to_float();
        prop_assert_eq!(FloatPoint::from_json(&f.to_json()).unwrap(), f);
        let c = classify(&spec, &z, &Tolerances::default()).unwrap();
        let back: Classification = serde_json::from_value(serde_json::to_value(&c).unwrap()).unwrap();
        prop_assert_eq!(back, c.clone());
        let label: OrbitLabel = serde_json::from_str(&serde_json::to_string(&c.label).unwrap()).unwrap();
        prop_assert_eq!(label, c.label);
        let s: RealFormSpec = serde_json::from_str(&serde_json::to_string(&spec).unwrap()).unwrap();
        prop_assert_eq!(s, spec);
    }

    #[test]
    fn conditions_force_the_equality(i in 0..specs().len(), n in 2usize..=12) {
        let spec = specs()[i];
        let Ok(r) = check_conditions(&spec, n) else { return Ok(()) };
        prop_assert!(!r.condition_equal || r.condition_greater);
        if r.is_admissible() {
            let offset = if r.tag.series.is_projective() { 1 } else { 2 };
            prop_assert_eq!(r.k, n + offset);
            prop_assert!(r.models.iter().all(|m| m.dim() == n));
        } else {
            prop_assert!(r.models.is_empty());
        }
    }
}

/// On Qₙ, w = 𝒜⁻¹z satisfies [Re w, Re w] = [Im w, Im w] and [Re w, Im w] = 0.
#[test]
fn quadric_identities_exact() {
    let form = |x: &[BigRational], y: &[BigRational], p: usize| -> BigRational {
        x.iter().zip(y).enumerate().fold(BigRational::zero(), |acc, (j, (a, b))| if j < p { acc + a * b } else { acc - a * b })
    };
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (p, q) in [(3, 2), (5, 2), (4, 4), (6, 2), (5, 3), (7, 1), (4, 3)] {
        let a = a_matrix(p, q);
        for _ in 0..50 {
            let z = random_exact_quadric_point(&mut rng, p + q - 2, 4).into_point();
            // Solve 𝒜w = z column by column: 𝒜 is diagonal.
            let w: Vec<GaussRational> =
                z.coords().iter().enumerate().map(|(j, c)| c * &a.get(j, j).inv().unwrap()).collect();
            assert_eq!(a.apply(&w), z.coords());
            let re: Vec<BigRational> = w.iter().map(|c| c.re()).collect();
            let im: Vec<BigRational> = w.iter().map(|c| c.im()).collect();
            assert_eq!(form(&re, &re, p), form(&im, &im, p));
            assert!(form(&re, &im, p).is_zero());
        }
    }
}

#[test]
fn basis_json_round_trips() {
    for spec in specs() {
        for x in &cached_real_form_basis(&spec).unwrap().elements {
            assert_eq!(&ExactMatrix::from_json(&x.to_json()).unwrap(), x);
        }
    }
}
