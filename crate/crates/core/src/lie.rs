// SPDX-License-Identifier: Apache-2.0

//! Classical complex matrix algebras and their real forms.
//!
//! Bases are exact. Complex bases use a fixed order:
//! - `sl_k`: `E_rs` for `r != s` (lexicographic), then `E_jj - E_{j+1,j+1}`;
//! - `so_k`: `j_rs = E_rs - E_sr` for `r < s` (lexicographic);
//! - `sp_2l`: with `Ω = [[0, I], [-I, 0]]` and `X = [[A, B], [C, -Aᵀ]]`, the
//!   `A` block `E_ij - E_{l+j,l+i}`, then symmetric `B`, then symmetric `C`.
//!
//! A real form is the fixed algebra of an antilinear involution σ. Its basis
//! is extracted from `(X + σX)/2` and `i(X - σX)/2` over the complex basis.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use num::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, Echelon};
use crate::matrix::{ExactMatrix, MAX_DIM};
use crate::scalar::{GaussRational, Scalar};
use crate::triality;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Series {
    A,
    B,
    C,
    D,
}

impl Series {
    /// A and C act on ℙⁿ; B and D on the quadric.
    pub fn is_projective(self) -> bool {
        matches!(self, Series::A | Series::C)
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Series::A => "A",
            Series::B => "B",
            Series::C => "C",
            Series::D => "D",
        };
        f.write_str(c)
    }
}

impl FromStr for Series {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(Series::A),
            "B" => Ok(Series::B),
            "C" => Ok(Series::C),
            "D" => Ok(Series::D),
            other => Err(Error::Parse(format!("unknown series `{other}`"))),
        }
    }
}

/// A simple classical complex algebra in normalized form: `k` is the size of
/// the defining representation. sp₄(ℂ) is tagged B with k = 5 and so₆(ℂ) is
/// tagged A with k = 4.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SeriesTag {
    pub series: Series,
    pub k: usize,
}

impl SeriesTag {
    /// Validates a tag that is already normalized.
    pub fn new(series: Series, k: usize) -> Result<Self> {
        let ok = match series {
            Series::A => k >= 2,
            Series::B => k >= 5 && k % 2 == 1,
            Series::C => k >= 6 && k.is_multiple_of(2),
            Series::D => k >= 8 && k.is_multiple_of(2),
        };
        if !ok || k > MAX_DIM {
            return Err(Error::Domain(format!("invalid series tag ({series}, {k})")));
        }
        Ok(Self { series, k })
    }

    /// Applies the low-rank isomorphisms before validating.
    pub fn normalized(series: Series, k: usize) -> Result<Self> {
        match (series, k) {
            (Series::C, 2) => Self::new(Series::A, 2),
            (Series::C, 4) => Self::new(Series::B, 5),
            (Series::B, 3) => Self::new(Series::A, 2),
            (Series::D, 6) => Self::new(Series::A, 4),
            _ => Self::new(series, k),
        }
    }

    pub fn ambient(&self) -> ClassicalAlgebra {
        let kind = match self.series {
            Series::A => Classical::Sl,
            Series::B | Series::D => Classical::So,
            Series::C => Classical::Sp,
        };
        ClassicalAlgebra { kind, k: self.k }
    }

    pub fn complex_dim(&self) -> usize {
        self.ambient().dim()
    }
}

impl fmt::Display for SeriesTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.series, self.k)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Classical {
    Sl,
    So,
    Sp,
}

/// A matrix algebra sl_k, so_k or sp_k without normalization, used as the
/// ambient algebra of a real form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ClassicalAlgebra {
    pub kind: Classical,
    pub k: usize,
}

impl ClassicalAlgebra {
    pub fn dim(&self) -> usize {
        let k = self.k;
        match self.kind {
            Classical::Sl => k * k - 1,
            Classical::So => k * (k - 1) / 2,
            Classical::Sp => {
                let l = k / 2;
                2 * l * l + l
            }
        }
    }

    pub fn name(&self) -> String {
        match self.kind {
            Classical::Sl => format!("sl{}", self.k),
            Classical::So => format!("so{}", self.k),
            Classical::Sp => format!("sp{}", self.k),
        }
    }

    pub fn basis(&self) -> Vec<ExactMatrix> {
        let k = self.k;
        match self.kind {
            Classical::Sl => {
                let mut out = Vec::with_capacity(k * k - 1);
                for r in 0..k {
                    for s in 0..k {
                        if r != s {
                            out.push(ExactMatrix::unit(k, r, s));
                        }
                    }
                }
                for j in 0..k - 1 {
                    out.push(ExactMatrix::unit(k, j, j).sub(&ExactMatrix::unit(k, j + 1, j + 1)));
                }
                out
            }
            Classical::So => triality::j_pairs(k).into_iter().map(|(r, s)| ExactMatrix::j(k, r, s)).collect(),
            Classical::Sp => {
                let l = k / 2;
                let e = |r, s| ExactMatrix::unit(k, r, s);
                let mut out = Vec::with_capacity(self.dim());
                for i in 0..l {
                    for j in 0..l {
                        out.push(e(i, j).sub(&e(l + j, l + i)));
                    }
                }
                for i in 0..l {
                    for j in i..l {
                        out.push(if i == j { e(i, l + i) } else { e(i, l + j).add(&e(j, l + i)) });
                    }
                }
                for i in 0..l {
                    for j in i..l {
                        out.push(if i == j { e(l + i, i) } else { e(l + i, j).add(&e(l + j, i)) });
                    }
                }
                out
            }
        }
    }

    /// Exact membership in the complex algebra.
    pub fn contains(&self, x: &ExactMatrix) -> bool {
        if x.dim() != self.k {
            return false;
        }
        match self.kind {
            Classical::Sl => x.trace().is_zero(),
            Classical::So => x.is_antisymmetric(),
            Classical::Sp => {
                let omega = omega(self.k);
                x.transpose().mul(&omega).add(&omega.mul(x)).is_zero()
            }
        }
    }
}

/// `Ω = [[0, I], [-I, 0]]`.
pub fn omega(k: usize) -> ExactMatrix {
    let l = k / 2;
    let mut m = ExactMatrix::zeros(k);
    for i in 0..l {
        m.set(i, l + i, GaussRational::one());
        m.set(l + i, i, -GaussRational::one());
    }
    m
}

/// `J = [[0, -I], [I, 0]]` (equal to `-Ω`).
pub fn quaternionic_j(k: usize) -> ExactMatrix {
    omega(k).neg()
}

/// `diag(I_p, -I_q)`.
pub fn eta(p: usize, q: usize) -> ExactMatrix {
    let mut d = vec![GaussRational::one(); p];
    d.extend(std::iter::repeat_n(-GaussRational::one(), q));
    ExactMatrix::diag(&d)
}

/// `diag(I_p, -I_q, I_p, -I_q)`, the Hermitian form preserved by sp(p,q).
pub fn eta_sp(p: usize, q: usize) -> ExactMatrix {
    let mut d = vec![GaussRational::one(); p];
    d.extend(std::iter::repeat_n(-GaussRational::one(), q));
    let half = d.clone();
    d.extend(half);
    ExactMatrix::diag(&d)
}

/// `𝒜_{p,q} = diag(I_p, i I_q)`.
pub fn a_matrix(p: usize, q: usize) -> ExactMatrix {
    let mut d = vec![GaussRational::one(); p];
    d.extend(std::iter::repeat_n(GaussRational::i(), q));
    ExactMatrix::diag(&d)
}

/// Symbolic descriptor of a real form. `k` always denotes the size of the
/// matrices (the defining complex representation).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum RealFormSpec {
    /// su(p,q) ⊂ sl_{p+q}.
    Su { p: usize, q: usize },
    /// sl(k,ℝ).
    SlReal { k: usize },
    /// sl(k/2,ℍ) ⊂ sl_k.
    SlQuat { k: usize },
    /// sp(p,q) ⊂ sp_{2(p+q)}.
    SpPq { p: usize, q: usize },
    /// sp(k,ℝ) ⊂ sp_k.
    SpReal { k: usize },
    /// so(p,q)ʲ ⊂ so_{p+q}, in the 𝒜-conjugated picture.
    So { p: usize, q: usize, twist: u8 },
    /// so*(k) ⊂ so_k.
    SoStar { k: usize },
    /// A complex simple algebra regarded as a real algebra.
    ComplexAsReal { tag: SeriesTag },
}

impl RealFormSpec {
    pub fn su(p: usize, q: usize) -> Self {
        Self::Su { p, q }
    }
    pub fn so(p: usize, q: usize) -> Self {
        Self::So { p, q, twist: 0 }
    }
    pub fn so_twisted(p: usize, q: usize, twist: u8) -> Self {
        Self::So { p, q, twist }
    }

    /// Size of the matrices.
    pub fn k(&self) -> usize {
        match *self {
            Self::Su { p, q } | Self::So { p, q, .. } => p + q,
            Self::SpPq { p, q } => 2 * (p + q),
            Self::SlReal { k } | Self::SlQuat { k } | Self::SpReal { k } | Self::SoStar { k } => k,
            Self::ComplexAsReal { tag } => tag.k,
        }
    }

    pub fn ambient(&self) -> ClassicalAlgebra {
        let kind = match self {
            Self::Su { .. } | Self::SlReal { .. } | Self::SlQuat { .. } => Classical::Sl,
            Self::SpPq { .. } | Self::SpReal { .. } => Classical::Sp,
            Self::So { .. } | Self::SoStar { .. } => Classical::So,
            Self::ComplexAsReal { tag } => return tag.ambient(),
        };
        ClassicalAlgebra { kind, k: self.k() }
    }

    pub fn is_type_two(&self) -> bool {
        matches!(self, Self::ComplexAsReal { .. })
    }

    pub fn twist(&self) -> u8 {
        match self {
            Self::So { twist, .. } => *twist,
            _ => 0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Domain(msg));
        let k = self.k();
        if k > MAX_DIM {
            return bad(format!("{self}: matrix size {k} exceeds {MAX_DIM}"));
        }
        match *self {
            Self::Su { p, q } if p < q || p + q < 2 => bad(format!("{self}: need p >= q and p + q >= 2")),
            Self::SpPq { p, q } if p < q || p + q < 1 => bad(format!("{self}: need p >= q and p + q >= 1")),
            Self::SlReal { k } if k < 2 => bad(format!("{self}: need k >= 2")),
            Self::SlQuat { k } | Self::SpReal { k } if k < 2 || k % 2 == 1 => bad(format!("{self}: need even k >= 2")),
            Self::SoStar { k } if k < 4 || k % 2 == 1 => bad(format!("{self}: need even k >= 4")),
            Self::So { p, q, twist } => {
                if p < q || p + q < 3 {
                    bad(format!("{self}: need p >= q and p + q >= 3"))
                } else if twist > 2 {
                    bad(format!("{self}: twist must be 0, 1 or 2"))
                } else if twist != 0 && p + q != 8 {
                    bad(format!("{self}: a nonzero twist needs p + q = 8"))
                } else {
                    Ok(())
                }
            }
            Self::ComplexAsReal { tag } => SeriesTag::new(tag.series, tag.k).map(|_| ()),
            _ => Ok(()),
        }
    }

    /// Normalized series tag of the complexification of the simple factor
    /// (for type II, of the complex algebra itself).
    pub fn series_tag(&self) -> Result<SeriesTag> {
        self.validate()?;
        let k = self.k();
        match self {
            Self::Su { .. } | Self::SlReal { .. } | Self::SlQuat { .. } => SeriesTag::new(Series::A, k),
            Self::SpPq { .. } | Self::SpReal { .. } => SeriesTag::normalized(Series::C, k),
            Self::So { .. } | Self::SoStar { .. } => {
                if k == 4 {
                    return Err(Error::Domain(format!("{self} is not simple")));
                }
                let series = if k % 2 == 1 { Series::B } else { Series::D };
                SeriesTag::normalized(series, k)
            }
            Self::ComplexAsReal { tag } => Ok(*tag),
        }
    }

    /// The antilinear involution whose fixed points form this real form.
    /// Not defined for twisted or type-II forms.
    fn sigma(&self, x: &ExactMatrix) -> ExactMatrix {
        match *self {
            Self::Su { p, q } => {
                let h = eta(p, q);
                h.mul(&x.adjoint()).mul(&h).neg()
            }
            Self::SlReal { .. } | Self::SpReal { .. } => x.conj(),
            Self::SlQuat { k } | Self::SoStar { k } => {
                let j = quaternionic_j(k);
                j.mul(&x.conj()).mul(&j.neg())
            }
            Self::SpPq { p, q } => {
                let h = eta_sp(p, q);
                h.mul(&x.adjoint()).mul(&h).neg()
            }
            Self::So { p, q, .. } => {
                let h = eta(p, q);
                h.mul(&x.conj()).mul(&h)
            }
            Self::ComplexAsReal { .. } => unreachable!("type II forms have no σ here"),
        }
    }
}

impl fmt::Display for RealFormSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Self::Su { p, q } => write!(f, "su({p},{q})"),
            Self::SlReal { k } => write!(f, "sl({k},R)"),
            Self::SlQuat { k } => write!(f, "sl({},H)", k / 2),
            Self::SpPq { p, q } => write!(f, "sp({p},{q})"),
            Self::SpReal { k } => write!(f, "sp({k},R)"),
            Self::So { p, q, twist: 0 } => write!(f, "so({p},{q})"),
            Self::So { p, q, twist } => write!(f, "so({p},{q})^{twist}"),
            Self::SoStar { k } => write!(f, "so*({k})"),
            Self::ComplexAsReal { tag } => write!(f, "{}(C)_R", tag.ambient().name()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BasisField {
    Complex,
    Real,
}

/// An ordered list of matrices spanning an algebra over the stated field.
#[derive(Debug, Clone)]
pub struct LieBasis {
    pub name: String,
    pub k: usize,
    pub field: BasisField,
    pub elements: Vec<ExactMatrix>,
}

impl LieBasis {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Rank of the elements over ℝ.
    pub fn real_rank(&self) -> usize {
        let rows: Vec<Vec<BigRational>> = self.elements.iter().map(ExactMatrix::real_coords).collect();
        linalg::rank(&rows)
    }

    /// Rank of the elements over ℂ (the dimension of the complexification
    /// when the basis is real).
    pub fn complex_rank(&self) -> usize {
        let rows: Vec<Vec<GaussRational>> = self.elements.iter().map(|m| m.entries().to_vec()).collect();
        linalg::rank(&rows)
    }

    /// Every bracket of basis elements re-expands in the basis with
    /// coefficients in the stated field. Returns the first failing pair.
    pub fn bracket_closure_failure(&self) -> Option<(usize, usize)> {
        match self.field {
            BasisField::Real => {
                let mut span = Echelon::<BigRational>::new(2 * self.k * self.k);
                for m in &self.elements {
                    span.insert(m.real_coords());
                }
                self.first_failure(|b| span.contains(b.real_coords()))
            }
            BasisField::Complex => {
                let mut span = Echelon::<GaussRational>::new(self.k * self.k);
                for m in &self.elements {
                    span.insert(m.entries().to_vec());
                }
                self.first_failure(|b| span.contains(b.entries().to_vec()))
            }
        }
    }

    fn first_failure(&self, contains: impl Fn(&ExactMatrix) -> bool) -> Option<(usize, usize)> {
        for a in 0..self.elements.len() {
            for b in a + 1..self.elements.len() {
                let br = self.elements[a].bracket(&self.elements[b]).expect("same size");
                if !contains(&br) {
                    return Some((a, b));
                }
            }
        }
        None
    }

    pub fn is_closed(&self) -> bool {
        self.bracket_closure_failure().is_none()
    }
}

/// ℂ-basis of the classical algebra named by `tag`.
pub fn build_complex_algebra(tag: SeriesTag) -> Result<LieBasis> {
    let tag = SeriesTag::new(tag.series, tag.k)?;
    let amb = tag.ambient();
    Ok(LieBasis { name: amb.name(), k: tag.k, field: BasisField::Complex, elements: amb.basis() })
}

fn greedy_real_basis(candidates: impl IntoIterator<Item = ExactMatrix>, k: usize, target: usize) -> Vec<ExactMatrix> {
    let mut span = Echelon::<BigRational>::new(2 * k * k);
    let mut out = Vec::with_capacity(target);
    for c in candidates {
        if out.len() == target {
            break;
        }
        if c.is_zero() {
            continue;
        }
        if span.insert(c.real_coords()) {
            out.push(c);
        }
    }
    out
}

/// ℝ-basis of a real form, embedded in its ambient complex algebra.
pub fn real_form_basis(spec: &RealFormSpec) -> Result<LieBasis> {
    spec.validate()?;
    let amb = spec.ambient();
    let k = amb.k;
    let elements = match *spec {
        RealFormSpec::ComplexAsReal { .. } => {
            let i = GaussRational::i();
            amb.basis().into_iter().flat_map(|x| [x.clone(), x.scale(&i)]).collect::<Vec<_>>()
        }
        RealFormSpec::So { p, q, twist } if twist != 0 => return twisted_real_form(p, q, twist),
        _ => {
            let half = GaussRational::ratio(1, 2);
            let ihalf = GaussRational::new(BigRational::from_integer(0.into()), BigRational::new(1.into(), 2.into()));
            let candidates = amb.basis().into_iter().flat_map(|x| {
                let sx = spec.sigma(&x);
                [x.add(&sx).scale(&half), x.sub(&sx).scale(&ihalf)]
            });
            greedy_real_basis(candidates, k, amb.dim())
        }
    };
    Ok(LieBasis { name: spec.to_string(), k, field: BasisField::Real, elements })
}

/// so(p,q)ʲ = θʲ(so(p,q)⁰) for p + q = 8.
pub fn twisted_real_form(p: usize, q: usize, j: u8) -> Result<LieBasis> {
    let spec = RealFormSpec::So { p, q, twist: j };
    if p + q != 8 {
        return Err(Error::Domain(format!("{spec}: twisted forms need p + q = 8")));
    }
    spec.validate()?;
    let base = real_form_basis(&RealFormSpec::so(p, q))?;
    let elements = base
        .elements
        .iter()
        .map(|x| triality::theta_power(x, j as i32))
        .collect::<Result<Vec<_>>>()?;
    Ok(LieBasis { name: spec.to_string(), k: 8, field: BasisField::Real, elements })
}

/// Cached real-form basis; bases are immutable once built.
pub fn cached_real_form_basis(spec: &RealFormSpec) -> Result<Arc<LieBasis>> {
    static CACHE: OnceLock<Mutex<HashMap<RealFormSpec, Arc<LieBasis>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(b) = cache.lock().expect("basis cache").get(spec) {
        return Ok(b.clone());
    }
    let basis = Arc::new(real_form_basis(spec)?);
    cache.lock().expect("basis cache").insert(*spec, basis.clone());
    Ok(basis)
}

fn is_real_matrix(x: &ExactMatrix) -> bool {
    x.entries().iter().all(GaussRational::is_real)
}

/// True iff X lies in the real form, checked from the defining relations
/// directly (not through σ).
pub fn satisfies_defining_relations(spec: &RealFormSpec, x: &ExactMatrix) -> bool {
    if spec.validate().is_err() || x.dim() != spec.k() {
        return false;
    }
    let amb = spec.ambient();
    match *spec {
        RealFormSpec::Su { p, q } => {
            let h = eta(p, q);
            x.trace().is_zero() && x.adjoint().mul(&h).add(&h.mul(x)).is_zero()
        }
        RealFormSpec::SlReal { .. } => x.trace().is_zero() && is_real_matrix(x),
        RealFormSpec::SlQuat { k } => {
            let j = quaternionic_j(k);
            x.trace().is_zero() && x.mul(&j) == j.mul(&x.conj())
        }
        RealFormSpec::SpPq { p, q } => {
            let h = eta_sp(p, q);
            amb.contains(x) && x.adjoint().mul(&h).add(&h.mul(x)).is_zero()
        }
        RealFormSpec::SpReal { .. } => amb.contains(x) && is_real_matrix(x),
        RealFormSpec::So { p, q, twist: 0 } => {
            // Same-block entries real, mixed-block entries imaginary.
            x.is_antisymmetric()
                && (0..p + q).all(|r| {
                    (0..p + q).all(|c| {
                        let a = x.get(r, c);
                        if (r < p) == (c < p) {
                            a.is_real()
                        } else {
                            a.is_imaginary()
                        }
                    })
                })
        }
        RealFormSpec::So { p, q, twist } => match triality::theta_power(x, -(twist as i32)) {
            Ok(y) => satisfies_defining_relations(&RealFormSpec::so(p, q), &y),
            Err(_) => false,
        },
        RealFormSpec::SoStar { k } => {
            let j = quaternionic_j(k);
            x.is_antisymmetric() && x.mul(&j) == j.mul(&x.conj())
        }
        RealFormSpec::ComplexAsReal { .. } => amb.contains(x),
    }
}

/// Float version of [`satisfies_defining_relations`], used for random
/// combinations of basis elements. Checks membership in the real span.
pub fn float_in_real_span(basis: &LieBasis, x: &crate::matrix::FloatMatrix, tol: f64) -> bool {
    let rows: Vec<Vec<f64>> = basis
        .elements
        .iter()
        .map(|m| m.to_float().real_coords())
        .chain(std::iter::once(x.real_coords()))
        .collect();
    let base: Vec<Vec<f64>> = rows[..rows.len() - 1].to_vec();
    linalg::float_rank(&rows, tol) == linalg::float_rank(&base, tol)
}

/// Every real form family in the tables, for sizes up to `max_k`.
pub fn all_real_forms(max_k: usize) -> Vec<RealFormSpec> {
    let mut out = Vec::new();
    for k in 2..=max_k {
        for q in 0..=k / 2 {
            out.push(RealFormSpec::Su { p: k - q, q });
        }
        out.push(RealFormSpec::SlReal { k });
        if k % 2 == 0 {
            out.push(RealFormSpec::SlQuat { k });
            for q in 0..=k / 4 {
                out.push(RealFormSpec::SpPq { p: k / 2 - q, q });
            }
            out.push(RealFormSpec::SpReal { k });
            if k >= 4 {
                out.push(RealFormSpec::SoStar { k });
            }
        }
        if k >= 3 {
            for q in 0..=k / 2 {
                out.push(RealFormSpec::so(k - q, q));
            }
        }
        if k == 8 {
            for q in 0..=4 {
                for j in 1..=2 {
                    out.push(RealFormSpec::so_twisted(8 - q, q, j));
                }
            }
        }
        for series in [Series::A, Series::B, Series::C, Series::D] {
            if let Ok(tag) = SeriesTag::new(series, k) {
                out.push(RealFormSpec::ComplexAsReal { tag });
            }
        }
    }
    out.retain(|s| s.validate().is_ok());
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tag(s: Series, k: usize) -> SeriesTag {
        SeriesTag::new(s, k).unwrap()
    }

    #[test]
    fn complex_dimensions() {
        assert_eq!(build_complex_algebra(tag(Series::A, 3)).unwrap().len(), 8);
        assert_eq!(build_complex_algebra(tag(Series::C, 6)).unwrap().len(), 21);
        assert_eq!(build_complex_algebra(tag(Series::B, 5)).unwrap().len(), 10);
        assert!(SeriesTag::new(Series::C, 4).is_err());
        assert!(SeriesTag::new(Series::D, 6).is_err());
        assert!(SeriesTag::new(Series::B, 6).is_err());
    }

    #[test]
    fn normalization() {
        assert_eq!(SeriesTag::normalized(Series::C, 4).unwrap(), tag(Series::B, 5));
        assert_eq!(SeriesTag::normalized(Series::D, 6).unwrap(), tag(Series::A, 4));
    }

    #[test]
    fn complex_bases_satisfy_relations() {
        for (kind, k) in [(Classical::Sl, 4), (Classical::So, 7), (Classical::Sp, 6)] {
            let amb = ClassicalAlgebra { kind, k };
            let b = amb.basis();
            assert_eq!(b.len(), amb.dim());
            assert!(b.iter().all(|x| amb.contains(x)));
        }
    }

    #[test]
    fn real_dimensions() {
        assert_eq!(real_form_basis(&RealFormSpec::su(2, 1)).unwrap().len(), 8);
        assert_eq!(real_form_basis(&RealFormSpec::SpPq { p: 1, q: 1 }).unwrap().len(), 10);
        let so10 = real_form_basis(&RealFormSpec::SoStar { k: 10 }).unwrap();
        assert_eq!(so10.len(), 45);
        assert_eq!(so10.complex_rank(), 45);
    }

    #[test]
    fn su21_diagonal_example() {
        let x = ExactMatrix::diag(&[GaussRational::i(), -GaussRational::i(), GaussRational::zero()]);
        assert!(satisfies_defining_relations(&RealFormSpec::su(2, 1), &x));
        for spec in [RealFormSpec::su(2, 1), RealFormSpec::SlReal { k: 3 }, RealFormSpec::so(2, 1)] {
            assert!(!satisfies_defining_relations(&spec, &ExactMatrix::identity(3)));
        }
    }

    #[test]
    fn real_bases_are_self_consistent() {
        let specs = [
            RealFormSpec::su(3, 1),
            RealFormSpec::SlReal { k: 4 },
            RealFormSpec::SlQuat { k: 4 },
            RealFormSpec::SpPq { p: 2, q: 1 },
            RealFormSpec::SpReal { k: 6 },
            RealFormSpec::so(4, 2),
            RealFormSpec::SoStar { k: 6 },
            RealFormSpec::so_twisted(5, 3, 1),
            RealFormSpec::ComplexAsReal { tag: tag(Series::A, 3) },
        ];
        for spec in specs {
            let b = real_form_basis(&spec).unwrap();
            let amb = spec.ambient();
            let expected = if spec.is_type_two() { 2 * amb.dim() } else { amb.dim() };
            assert_eq!(b.len(), expected, "{spec}");
            assert_eq!(b.real_rank(), expected, "{spec}");
            assert_eq!(b.complex_rank(), amb.dim(), "{spec}");
            for x in &b.elements {
                assert!(satisfies_defining_relations(&spec, x), "{spec}");
            }
            assert!(b.is_closed(), "{spec}");
        }
    }

    #[test]
    fn spec_validation() {
        assert!(RealFormSpec::su(1, 2).validate().is_err());
        assert!(RealFormSpec::so_twisted(4, 3, 1).validate().is_err());
        assert!(RealFormSpec::so_twisted(5, 3, 3).validate().is_err());
        assert!(RealFormSpec::SlQuat { k: 5 }.validate().is_err());
        assert!(RealFormSpec::su(7, 6).validate().is_err());
    }
}
