// SPDX-License-Identifier: Apache-2.0

//! Stabilizers of the model isotropic subspaces, maximal parabolic classes,
//! and the dimension conditions relating k and n.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lie::{build_complex_algebra, RealFormSpec, Series, SeriesTag};
use crate::linalg::{self, Echelon};
use crate::matrix::ExactMatrix;
use crate::scalar::{GaussRational, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Variant {
    #[serde(rename = "L1")]
    L1,
    #[serde(rename = "L2")]
    L2,
    #[serde(rename = "L3")]
    L3,
    #[serde(rename = "L4")]
    L4,
    #[serde(rename = "L4'")]
    L4Prime,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::L1 => "L1",
            Variant::L2 => "L2",
            Variant::L3 => "L3",
            Variant::L4 => "L4",
            Variant::L4Prime => "L4'",
        })
    }
}

/// An m-dimensional model subspace of ℂᵏ.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SubspaceSpec {
    pub tag: SeriesTag,
    pub m: usize,
    pub variant: Variant,
    #[serde(skip)]
    pub vectors: Vec<Vec<GaussRational>>,
}

impl SubspaceSpec {
    pub fn new(tag: SeriesTag, m: usize, variant: Variant) -> Result<Self> {
        let k = tag.k;
        let l = k / 2;
        let ok = match (tag.series, variant) {
            (Series::A, Variant::L1) => (1..k).contains(&m),
            (Series::C, Variant::L2) | (Series::B, Variant::L3) | (Series::D, Variant::L4) => (1..=l).contains(&m),
            (Series::D, Variant::L4Prime) => m == l,
            _ => false,
        };
        if !ok {
            return Err(Error::Domain(format!("no subspace {variant} with m = {m} for {tag}")));
        }
        let unit = |j: usize| {
            let mut v = vec![GaussRational::zero(); k];
            v[j] = GaussRational::one();
            v
        };
        let vectors = match variant {
            Variant::L1 | Variant::L2 => (0..m).map(unit).collect(),
            Variant::L3 | Variant::L4 | Variant::L4Prime => (0..m)
                .map(|j| {
                    let mut v = vec![GaussRational::zero(); k];
                    v[2 * j] = if variant == Variant::L4Prime && j == 0 { -GaussRational::one() } else { GaussRational::one() };
                    v[2 * j + 1] = GaussRational::i();
                    v
                })
                .collect(),
        };
        Ok(Self { tag, m, variant, vectors })
    }

    /// Every candidate subspace for the series, in sweep order.
    pub fn candidates(tag: SeriesTag) -> Vec<Self> {
        let k = tag.k;
        let l = k / 2;
        let (variant, range) = match tag.series {
            Series::A => (Variant::L1, 1..k),
            Series::C => (Variant::L2, 1..l + 1),
            Series::B => (Variant::L3, 1..l + 1),
            Series::D => (Variant::L4, 1..l + 1),
        };
        let mut out: Vec<Self> = range.map(|m| Self::new(tag, m, variant).expect("in range")).collect();
        if tag.series == Series::D {
            out.push(Self::new(tag, l, Variant::L4Prime).expect("in range"));
        }
        out
    }

    pub fn label(&self) -> String {
        format!("{}_{}", self.variant, self.m)
    }

    /// Exact isotropy for the series' bilinear form (trivially true for A).
    pub fn is_isotropic(&self) -> bool {
        let k = self.tag.k;
        let pair = |a: &[GaussRational], b: &[GaussRational]| -> GaussRational {
            match self.tag.series {
                Series::A => GaussRational::zero(),
                Series::C => {
                    let l = k / 2;
                    let mut acc = GaussRational::zero();
                    for j in 0..l {
                        acc = acc + &a[j] * &b[l + j] - &a[l + j] * &b[j];
                    }
                    acc
                }
                Series::B | Series::D => a.iter().zip(b).fold(GaussRational::zero(), |acc, (x, y)| acc + x * y),
            }
        };
        self.vectors.iter().all(|a| self.vectors.iter().all(|b| pair(a, b).is_zero()))
    }

    /// Rows spanning the annihilator {a : Σ aⱼvⱼ = 0 for all v ∈ L}.
    fn annihilator(&self) -> Vec<Vec<GaussRational>> {
        linalg::nullspace(&self.vectors, self.tag.k)
    }

    fn is_stabilized_by(&self, x: &ExactMatrix) -> bool {
        let ann = self.annihilator();
        self.vectors.iter().all(|v| {
            let xv = x.apply(v);
            ann.iter().all(|a| dot(a, &xv).is_zero())
        })
    }
}

fn dot(a: &[GaussRational], b: &[GaussRational]) -> GaussRational {
    a.iter().zip(b).fold(GaussRational::zero(), |acc, (x, y)| acc + x * y)
}

/// ℂ-basis of {X ∈ 𝔤 : X·L ⊆ L}.
pub fn stabilizer_basis(sub: &SubspaceSpec) -> Result<Vec<ExactMatrix>> {
    let basis = build_complex_algebra(sub.tag)?.elements;
    let ann = sub.annihilator();
    // One equation per (annihilator row, spanning vector); unknowns are the
    // coefficients of X in the basis.
    let images: Vec<Vec<Vec<GaussRational>>> =
        basis.iter().map(|b| sub.vectors.iter().map(|v| b.apply(v)).collect()).collect();
    let mut system = Echelon::<GaussRational>::new(basis.len());
    for a in &ann {
        for vi in 0..sub.vectors.len() {
            system.insert(images.iter().map(|img| dot(a, &img[vi])).collect());
        }
    }
    Ok(system
        .nullspace()
        .into_iter()
        .map(|c| {
            c.iter()
                .zip(&basis)
                .filter(|(ci, _)| !Scalar::is_zero(*ci))
                .fold(ExactMatrix::zeros(sub.tag.k), |acc, (ci, b)| acc.add(&b.scale(ci)))
        })
        .collect())
}

/// Complex dimension of the stabilizer subalgebra of L.
pub fn stabilizer_dimension(sub: &SubspaceSpec) -> Result<usize> {
    Ok(stabilizer_basis(sub)?.len())
}

/// Exact check that the stabilizer is a subalgebra.
pub fn stabilizer_is_closed(sub: &SubspaceSpec) -> Result<bool> {
    let basis = stabilizer_basis(sub)?;
    for (i, x) in basis.iter().enumerate() {
        for y in &basis[i + 1..] {
            if !sub.is_stabilized_by(&x.bracket(y)?) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// A flag manifold ℙᴺ or Q_N.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", content = "dim", rename_all = "snake_case")]
pub enum FlagModel {
    Projective(usize),
    Quadric(usize),
}

impl FlagModel {
    pub fn dim(&self) -> usize {
        match *self {
            FlagModel::Projective(n) | FlagModel::Quadric(n) => n,
        }
    }

    pub fn is_quadric(&self) -> bool {
        matches!(self, FlagModel::Quadric(_))
    }
}

impl fmt::Display for FlagModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FlagModel::Projective(n) => write!(f, "P^{n}"),
            FlagModel::Quadric(n) => write!(f, "Q_{n}"),
        }
    }
}

/// One line of the stabilizer sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParabolicRow {
    pub m: usize,
    pub variant: Variant,
    pub dim: usize,
    pub codim: usize,
    pub is_max: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MaxClass {
    pub subspace: SubspaceSpec,
    pub dim: usize,
    pub codim: usize,
    pub quotient: FlagModel,
    /// The group acting effectively on the quotient.
    pub group: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParabolicClassInfo {
    pub tag: SeriesTag,
    pub algebra_dim: usize,
    pub rows: Vec<ParabolicRow>,
    pub classes: Vec<MaxClass>,
    pub expected_class_count: usize,
}

impl ParabolicClassInfo {
    pub fn count_matches(&self) -> bool {
        self.classes.len() == self.expected_class_count
    }
}

/// Number of conjugacy classes of maximal parabolics of maximal dimension.
pub fn expected_class_count(tag: SeriesTag) -> usize {
    match (tag.series, tag.k) {
        (Series::A, _) => 2,
        (Series::C, _) => 1,
        (Series::B, 5) => 2,
        (Series::B, _) => 1,
        (Series::D, 8) => 3,
        (Series::D, _) => 1,
    }
}

fn quotient_of(sub: &SubspaceSpec) -> (FlagModel, String) {
    let k = sub.tag.k;
    match sub.tag.series {
        Series::A => (FlagModel::Projective(k - 1), format!("PSL_{k}(C)")),
        Series::C => (FlagModel::Projective(k - 1), format!("PSp_{k}(C)")),
        Series::B if sub.m == 2 => (FlagModel::Projective(3), "PSp_4(C)".into()),
        Series::B => (FlagModel::Quadric(k - 2), format!("SO_{k}(C)")),
        Series::D => (FlagModel::Quadric(k - 2), format!("PSO_{k}(C)")),
    }
}

/// Sweeps every model subspace and keeps those of maximal stabilizer
/// dimension. `series`/`k` are normalized first (C4 becomes B5, D6 becomes A4).
pub fn max_parabolic_classes(series: Series, k: usize) -> Result<ParabolicClassInfo> {
    let tag = SeriesTag::normalized(series, k)?;
    let algebra_dim = tag.complex_dim();
    let subs = SubspaceSpec::candidates(tag);
    let dims = subs.par_iter().map(stabilizer_dimension).collect::<Result<Vec<_>>>()?;
    let best = dims.iter().copied().max().unwrap_or(0);
    let rows = subs
        .iter()
        .zip(&dims)
        .map(|(s, &dim)| ParabolicRow { m: s.m, variant: s.variant, dim, codim: algebra_dim - dim, is_max: dim == best })
        .collect();
    let classes = subs
        .into_iter()
        .zip(dims)
        .filter(|(_, d)| *d == best)
        .map(|(subspace, dim)| {
            let (quotient, group) = quotient_of(&subspace);
            MaxClass { subspace, dim, codim: algebra_dim - dim, quotient, group }
        })
        .collect();
    Ok(ParabolicClassInfo { tag, algebra_dim, rows, classes, expected_class_count: expected_class_count(tag) })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Admissibility {
    /// Condition (>) fails.
    Inadmissible,
    /// Condition (>) holds but (=) does not: no manifold of this dimension
    /// carries such an action.
    Vacuous,
    Admissible,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AdmissibilityResult {
    pub spec: RealFormSpec,
    pub name: String,
    pub n: usize,
    pub tag: SeriesTag,
    pub k: usize,
    pub condition_greater: bool,
    pub condition_equal: bool,
    pub status: Admissibility,
    pub models: Vec<FlagModel>,
}

impl AdmissibilityResult {
    pub fn is_admissible(&self) -> bool {
        self.status == Admissibility::Admissible
    }
}

/// Decides Conditions (>) and (=) for the pair (𝔤₀, n).
pub fn check_conditions(spec: &RealFormSpec, n: usize) -> Result<AdmissibilityResult> {
    if n < 2 {
        return Err(Error::Domain(format!("n must be at least 2, got {n}")));
    }
    let tag = spec.series_tag()?;
    let k = tag.k;
    let offset = if tag.series.is_projective() { 0 } else { 1 };
    let condition_greater = k > n + offset;
    let condition_equal = k == n + 1 + offset;
    let status = match (condition_greater, condition_equal) {
        (false, _) => Admissibility::Inadmissible,
        (true, false) => Admissibility::Vacuous,
        (true, true) => Admissibility::Admissible,
    };
    let models = if status != Admissibility::Admissible {
        Vec::new()
    } else if tag.series.is_projective() {
        vec![FlagModel::Projective(n)]
    } else if tag == (SeriesTag { series: Series::B, k: 5 }) {
        vec![FlagModel::Projective(3), FlagModel::Quadric(3)]
    } else {
        vec![FlagModel::Quadric(n)]
    };
    Ok(AdmissibilityResult {
        spec: *spec,
        name: spec.to_string(),
        n,
        tag,
        k,
        condition_greater,
        condition_equal,
        status,
        models,
    })
}
