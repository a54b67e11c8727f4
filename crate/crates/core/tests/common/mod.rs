// SPDX-License-Identifier: Apache-2.0

#![allow(dead_code)]

use std::path::PathBuf;

use realforms::RealFormSpec;
use serde::Deserialize;

#[derive(Debug, Deserialize)]
pub struct GoldenCase {
    pub spec: RealFormSpec,
    pub n: usize,
    pub models: Vec<String>,
    /// Entries of the generic list that are empty or coincide with another
    /// model for these parameters.
    pub collapsed: Vec<String>,
}

#[derive(Debug, Deserialize)]
pub struct GoldenTable {
    pub table: String,
    pub cases: Vec<GoldenCase>,
}

pub fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

pub fn golden_tables() -> Vec<GoldenTable> {
    let mut paths: Vec<_> = std::fs::read_dir(golden_dir())
        .expect("golden dir")
        .map(|e| e.expect("entry").path())
        .filter(|p| p.extension().is_some_and(|e| e == "json"))
        .collect();
    paths.sort();
    paths
        .iter()
        .map(|p| serde_json::from_str(&std::fs::read_to_string(p).expect("readable")).expect("golden json"))
        .collect()
}

/// Real dimension of the orbit through z, from central finite differences of
/// t ↦ exp(Σ tᵢXᵢ)·z in the affine chart of the largest coordinate.
pub fn finite_difference_orbit_dim(spec: &RealFormSpec, z: &[num::complex::Complex64]) -> usize {
    use nalgebra::DMatrix;
    use num::complex::Complex64;
    use realforms::explorer::expm::expm;
    use realforms::lie::cached_real_form_basis;

    let basis = cached_real_form_basis(spec).expect("basis");
    let k = z.len();
    let pivot = (0..k).max_by(|&a, &b| z[a].norm().total_cmp(&z[b].norm())).unwrap();
    let chart = |w: &[Complex64]| -> Vec<f64> {
        (0..k).filter(|&j| j != pivot).flat_map(|j| {
            let c = w[j] / w[pivot];
            [c.re, c.im]
        }).collect()
    };
    let h = 1e-5;
    let cols: Vec<Vec<f64>> = basis
        .elements
        .iter()
        .map(|x| {
            let x = x.to_float();
            let push = |t: f64| chart(&expm(&x.scale(&Complex64::new(t, 0.0))).apply(z));
            let (a, b) = (push(h), push(-h));
            a.iter().zip(&b).map(|(p, m)| (p - m) / (2.0 * h)).collect()
        })
        .collect();
    let m = DMatrix::from_fn(2 * (k - 1), cols.len(), |r, c| cols[c][r]);
    let sv = m.singular_values();
    let top = sv.max();
    sv.iter().filter(|&&s| s > 1e-6 * top.max(1.0)).count()
}
