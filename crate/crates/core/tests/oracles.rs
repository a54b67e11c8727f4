// SPDX-License-Identifier: Apache-2.0

//! Checks against independently computed values.

mod common;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use realforms::explorer::base_points;
use realforms::flag::random_quadric_point;
use realforms::geometry::orbit_dimension;
use realforms::lie::{build_complex_algebra, cached_real_form_basis, Classical, ClassicalAlgebra};
use realforms::{classify, ExactPoint, GaussRational, RealFormSpec, Series, SeriesTag, Tolerances};

fn anchors() -> Vec<(RealFormSpec, &'static str)> {
    vec![
        (RealFormSpec::su(2, 1), "1:0:1"),
        (RealFormSpec::su(2, 1), "1:2:i"),
        (RealFormSpec::SlReal { k: 4 }, "1:0:0:0"),
        (RealFormSpec::SlReal { k: 4 }, "1:i:0:0"),
        (RealFormSpec::SpReal { k: 4 }, "1:0:0:i"),
        (RealFormSpec::SpReal { k: 6 }, "1:0:0:0:0:i"),
        (RealFormSpec::SpPq { p: 2, q: 1 }, "1:0:0:0:1:0"),
        (RealFormSpec::so(5, 2), "1:0:0:0:0:0:i"),
        (RealFormSpec::SoStar { k: 10 }, "1:i:0:0:0:0:0:0:0:0"),
        (RealFormSpec::so_twisted(5, 3, 1), "1:0:0:0:i:0:0:0"),
        (RealFormSpec::so_twisted(6, 2, 1), "1:0:i:0:0:0:0:0"),
        (RealFormSpec::so_twisted(4, 4, 1), "1:0:0:0:0:0:0:i"),
        (RealFormSpec::so_twisted(4, 4, 1), "1:i:0:0:0:0:-1:i"),
    ]
}

#[test]
fn exact_rank_matches_finite_differences() {
    let tol = Tolerances::default();
    for (spec, s) in anchors() {
        let z: ExactPoint = s.parse().unwrap();
        let exact = orbit_dimension(&spec, &z, &tol).unwrap();
        let fd = common::finite_difference_orbit_dim(&spec, z.to_float().coords());
        assert_eq!(exact, fd, "{spec} at {s}");
    }
}

#[test]
fn base_points_match_finite_differences() {
    let tol = Tolerances::default();
    for spec in [RealFormSpec::so(4, 3), RealFormSpec::SpReal { k: 6 }, RealFormSpec::so_twisted(6, 2, 2), RealFormSpec::SoStar { k: 10 }] {
        for (label, z) in base_points(&spec).unwrap() {
            let fd = common::finite_difference_orbit_dim(&spec, z.to_float().coords());
            assert_eq!(fd, label.expected_dim(), "{spec} {label}");
            assert_eq!(classify(&spec, &z, &tol).unwrap().label, label);
        }
    }
}

#[test]
fn so71_twisted_is_transitive_by_finite_differences() {
    let spec = RealFormSpec::so_twisted(7, 1, 1);
    let mut rng = ChaCha8Rng::seed_from_u64(71);
    for _ in 0..5 {
        let z = random_quadric_point(&mut rng, 6).into_point();
        assert_eq!(common::finite_difference_orbit_dim(&spec, z.coords()), 12);
    }
}

/// dim sl_k = k² − 1, dim so_k = k(k−1)/2, dim sp_{2l} = 2l² + l, by
/// exact rank of the generated bases.
#[test]
fn complex_dimensions_by_formula() {
    let rank = |alg: ClassicalAlgebra| {
        let rows: Vec<Vec<GaussRational>> = alg.basis().iter().map(|m| m.entries().to_vec()).collect();
        realforms::linalg::rank(&rows)
    };
    for k in 2..=10 {
        assert_eq!(rank(ClassicalAlgebra { kind: Classical::Sl, k }), k * k - 1);
    }
    for k in 3..=12 {
        assert_eq!(rank(ClassicalAlgebra { kind: Classical::So, k }), k * (k - 1) / 2);
    }
    for l in 1..=6 {
        assert_eq!(rank(ClassicalAlgebra { kind: Classical::Sp, k: 2 * l }), 2 * l * l + l);
    }
    for (series, k) in [(Series::A, 5), (Series::B, 7), (Series::C, 6), (Series::D, 10)] {
        let tag = SeriesTag::new(series, k).unwrap();
        assert_eq!(build_complex_algebra(tag).unwrap().complex_rank(), tag.complex_dim());
    }
}

/// Real dimensions from the classical formulas for the families.
#[test]
fn real_dimensions_by_formula() {
    let cases = [
        (RealFormSpec::su(3, 2), 24),
        (RealFormSpec::SlReal { k: 5 }, 24),
        (RealFormSpec::SlQuat { k: 6 }, 35),
        (RealFormSpec::SpPq { p: 2, q: 1 }, 21),
        (RealFormSpec::SpReal { k: 8 }, 36),
        (RealFormSpec::so(5, 2), 21),
        (RealFormSpec::SoStar { k: 10 }, 45),
        (RealFormSpec::so_twisted(5, 3, 1), 28),
        (RealFormSpec::so_twisted(6, 2, 2), 28),
        (RealFormSpec::ComplexAsReal { tag: SeriesTag::new(Series::A, 4).unwrap() }, 30),
    ];
    for (spec, dim) in cases {
        let b = cached_real_form_basis(&spec).unwrap();
        assert_eq!(b.real_rank(), dim, "{spec}");
        assert_eq!(b.len(), dim, "{spec}");
    }
}
