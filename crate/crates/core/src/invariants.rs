// SPDX-License-Identifier: Apache-2.0

//! Invariant forms and orbit labels on ℙⁿ and Qₙ.
//!
//! Every classifier reads the sign of a form that scales by |λ|² under
//! z ↦ λz, so labels depend only on the projective point. In float mode a
//! value within 100× the zero threshold is reported as boundary-uncertain.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num::{BigRational, Zero};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::flag::ProjectivePoint;
use crate::geometry;
use crate::lie::{cached_real_form_basis, RealFormSpec};
use crate::linalg::Echelon;
use crate::matrix::{CMatrix, ExactMatrix};
use crate::scalar::{GaussRational, Real, Scalar, Sign, SignReading, Tolerances};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OrbitKind {
    BPlus,
    BMinus,
    /// The hyperquadric Q_{p,q} in ℙⁿ.
    Hyperquadric,
    BHatPlus,
    BHatMinus,
    QHat,
    DPlus,
    DMinus,
    Sigma,
    RealProjective,
    OpenSl,
    OmegaPlus,
    OmegaMinus,
    S1,
    S2,
    EPlus,
    EMinus,
    FrakS,
    Gamma,
    Open53,
    Transitive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DimClass {
    Open,
    Hypersurface,
    TotallyReal,
    Fixed(usize),
}

impl OrbitKind {
    pub fn dim_class(self) -> DimClass {
        use OrbitKind::*;
        match self {
            BPlus | BMinus | BHatPlus | BHatMinus | DPlus | DMinus | OpenSl | OmegaPlus | OmegaMinus | EPlus
            | EMinus | Open53 | Transitive => DimClass::Open,
            Hyperquadric | QHat | Sigma | S2 | FrakS => DimClass::Hypersurface,
            RealProjective | S1 => DimClass::TotallyReal,
            Gamma => DimClass::Fixed(9),
        }
    }

    fn has_signature(self) -> bool {
        use OrbitKind::*;
        matches!(self, BPlus | BMinus | Hyperquadric | BHatPlus | BHatMinus | QHat | OmegaPlus | OmegaMinus | S1 | S2)
    }
}

/// Orbit identifier with the data needed for its name and dimension.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OrbitLabel {
    pub kind: OrbitKind,
    /// Complex dimension of the ambient flag manifold (ℙⁿ or Qₙ).
    pub n: usize,
    pub p: usize,
    pub q: usize,
}

impl OrbitLabel {
    pub fn new(kind: OrbitKind, n: usize, p: usize, q: usize) -> Self {
        if kind.has_signature() {
            Self { kind, n, p, q }
        } else {
            Self { kind, n, p: 0, q: 0 }
        }
    }

    pub fn expected_dim(&self) -> usize {
        match self.kind.dim_class() {
            DimClass::Open => 2 * self.n,
            DimClass::Hypersurface => 2 * self.n - 1,
            DimClass::TotallyReal => self.n,
            DimClass::Fixed(d) => d,
        }
    }

    pub fn is_open(&self) -> bool {
        self.kind.dim_class() == DimClass::Open
    }

    /// ASCII identifier, e.g. `B+_{2,1}`, `Sigma_5`, `Gamma`.
    pub fn name(&self) -> String {
        use OrbitKind::*;
        let (p, q, n) = (self.p, self.q, self.n);
        match self.kind {
            BPlus => format!("B+_{{{p},{q}}}"),
            BMinus => format!("B-_{{{p},{q}}}"),
            Hyperquadric => format!("Q_{{{p},{q}}}"),
            BHatPlus => format!("Bhat+_{{{p},{q}}}"),
            BHatMinus => format!("Bhat-_{{{p},{q}}}"),
            QHat => format!("Qhat_{{{p},{q}}}"),
            DPlus => format!("D+_{n}"),
            DMinus => format!("D-_{n}"),
            Sigma => format!("Sigma_{n}"),
            RealProjective => format!("RP^{n}"),
            OpenSl => "open_sl".into(),
            OmegaPlus => format!("Omega+_{{{p},{q}}}"),
            OmegaMinus => format!("Omega-_{{{p},{q}}}"),
            S1 => format!("S1_{{{p},{q}}}"),
            S2 => format!("S2_{{{p},{q}}}"),
            EPlus => format!("E+_{n}"),
            EMinus => format!("E-_{n}"),
            FrakS => format!("Sfrak_{n}"),
            Gamma => "Gamma".into(),
            Open53 => "open_53".into(),
            Transitive => "transitive".into(),
        }
    }
}

impl fmt::Display for OrbitLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// Outcome of a point classification.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Classification {
    pub label: OrbitLabel,
    pub name: String,
    /// Which form was read, if any.
    pub form: Option<String>,
    /// Exact values are strings `a/b`; float values are numbers.
    pub form_value: Option<Value>,
    pub expected_dim: usize,
    pub boundary_uncertain: bool,
}

impl Classification {
    fn new(label: OrbitLabel) -> Self {
        Self {
            label,
            name: label.name(),
            form: None,
            form_value: None,
            expected_dim: label.expected_dim(),
            boundary_uncertain: false,
        }
    }

    fn with_form<R: Real>(mut self, form: &str, value: &R, reading: SignReading) -> Self {
        self.form = Some(form.to_owned());
        self.form_value = Some(value.to_json());
        self.boundary_uncertain |= reading.uncertain;
        self
    }
}

fn check_len<S>(z: &[S], expected: usize) -> Result<()> {
    if z.len() != expected {
        return Err(Error::DimensionMismatch { expected, got: z.len() });
    }
    Ok(())
}

/// ⟨z,z⟩_{p,q} = Σ_{j≤p} |z_j|² − Σ_{j>p} |z_j|².
pub fn hermitian_pq<S: Scalar>(z: &[S], p: usize, q: usize) -> Result<S::Real> {
    check_len(z, p + q)?;
    Ok(signed_norms(z, |j| j < p))
}

fn signed_norms<S: Scalar>(z: &[S], positive: impl Fn(usize) -> bool) -> S::Real {
    z.iter().enumerate().fold(S::Real::zero(), |acc, (j, x)| {
        if positive(j) {
            acc + x.norm_sqr()
        } else {
            acc - x.norm_sqr()
        }
    })
}

/// (z,z)_{p,q} on ℂ^{2(p+q)}: signature (p,q) on each half.
pub fn sp_hermitian_pq<S: Scalar>(z: &[S], p: usize, q: usize) -> Result<S::Real> {
    let l = p + q;
    check_len(z, 2 * l)?;
    Ok(signed_norms(z, |j| j % l < p))
}

/// Skew-symmetric bilinear form (z,w) = Σ (z_j w_{l+j} − z_{l+j} w_j).
pub fn skew_form<S: Scalar>(z: &[S], w: &[S]) -> Result<S> {
    if z.len() % 2 == 1 {
        return Err(Error::Domain("skew form needs even length".into()));
    }
    check_len(w, z.len())?;
    let l = z.len() / 2;
    let mut acc = S::zero();
    for j in 0..l {
        acc.mul_add_assign(&z[j], &w[l + j]);
        acc.mul_add_assign(&-z[l + j].clone(), &w[j]);
    }
    Ok(acc)
}

/// (Re z, Im z) for the skew form.
pub fn sp_real_form<S: Scalar>(z: &[S]) -> Result<S::Real> {
    let re: Vec<S> = z.iter().map(|a| S::from_parts(a.re(), S::Real::zero())).collect();
    let im: Vec<S> = z.iter().map(|a| S::from_parts(a.im(), S::Real::zero())).collect();
    Ok(skew_form(&re, &im)?.re())
}

/// [Re w, Re w]_{p,q} for w = 𝒜_{p,q}⁻¹ z, i.e. Σ_{j≤p} (Re z_j)² − Σ_{j>p} (Im z_j)².
/// Defined on the quadric, where it equals ½⟨z,z⟩_{p,q}.
pub fn bracket_form_pq<S: Scalar>(z: &[S], p: usize, q: usize, tol: &Tolerances) -> Result<S::Real> {
    check_len(z, p + q)?;
    if !ProjectivePoint::new(z.to_vec())?.on_quadric(tol) {
        return Err(Error::NotOnQuadric);
    }
    Ok(bracket_parts(z, p).0)
}

/// w = 𝒜⁻¹z and the three real quantities [Re w, Re w], [Im w, Im w],
/// [Re w, Im w] of the form [·,·]_{p,q}.
pub fn bracket_parts<S: Scalar>(z: &[S], p: usize) -> (S::Real, S::Real, S::Real) {
    let mut rr = S::Real::zero();
    let mut ii = S::Real::zero();
    let mut ri = S::Real::zero();
    for (j, zj) in z.iter().enumerate() {
        // w_j = z_j for j < p, w_j = −i z_j otherwise.
        let (re, im) = if j < p { (zj.re(), zj.im()) } else { (zj.im(), -zj.re()) };
        let (a, b, c) = (re.clone() * re.clone(), im.clone() * im.clone(), re * im);
        if j < p {
            rr = rr + a;
            ii = ii + b;
            ri = ri + c;
        } else {
            rr = rr - a;
            ii = ii - b;
            ri = ri - c;
        }
    }
    (rr, ii, ri)
}

/// 𝒜⁻¹ z.
pub fn a_inverse_apply<S: Scalar>(z: &[S], p: usize) -> Vec<S> {
    let minus_i = -S::i();
    z.iter()
        .enumerate()
        .map(|(j, x)| if j < p { x.clone() } else { x.clone() * minus_i.clone() })
        .collect()
}

/// i[z,z] = −2 Σ Im(z_j z̄_{l+j}), real.
pub fn so_star_form<S: Scalar>(z: &[S]) -> Result<S::Real> {
    if z.len() % 2 == 1 {
        return Err(Error::Domain("so* form needs even length".into()));
    }
    let l = z.len() / 2;
    let mut acc = S::Real::zero();
    for j in 0..l {
        let t = (z[j].clone() * z[l + j].conj()).im();
        acc = acc - t.clone() - t;
    }
    Ok(acc)
}

/// z* M z for Hermitian M.
pub fn hermitian_value<S: Scalar>(m: &CMatrix<S>, z: &[S]) -> S::Real {
    let mz = m.apply(z);
    z.iter().zip(&mz).fold(S::Real::zero(), |acc, (a, b)| acc + (a.conj() * b.clone()).re())
}

fn reading<S: Scalar>(value: &S::Real, z: &ProjectivePoint<S>, tol: &Tolerances) -> SignReading {
    S::sign_of(value, &z.norm_sqr(), tol)
}

/// Reality reading: sign Zero when z is projectively real.
fn reality<S: Scalar>(z: &[S], tol: &Tolerances) -> SignReading {
    let scale = z.iter().fold(S::Real::zero(), |acc, x| acc + x.norm_sqr());
    let mut worst = SignReading { sign: Sign::Zero, uncertain: false };
    for a in 0..z.len() {
        for b in a + 1..z.len() {
            let minor = (z[a].conj() * z[b].clone()).im().magnitude();
            let r = S::sign_of(&minor, &scale, tol);
            if r.sign != Sign::Zero {
                worst.sign = Sign::Positive;
                if !r.uncertain {
                    return SignReading { sign: Sign::Positive, uncertain: false };
                }
            }
            worst.uncertain |= r.uncertain;
        }
    }
    worst
}

fn by_sign(sign: Sign, plus: OrbitKind, minus: OrbitKind, zero: OrbitKind) -> OrbitKind {
    match sign {
        Sign::Positive => plus,
        Sign::Negative => minus,
        Sign::Zero => zero,
    }
}

pub fn classify_su<S: Scalar>(z: &ProjectivePoint<S>, p: usize, q: usize, tol: &Tolerances) -> Result<Classification> {
    let v = hermitian_pq(z.coords(), p, q)?;
    let n = z.ambient();
    if q == 0 {
        return Ok(Classification::new(OrbitLabel::new(OrbitKind::BPlus, n, p, q)));
    }
    let r = reading(&v, z, tol);
    let kind = by_sign(r.sign, OrbitKind::BPlus, OrbitKind::BMinus, OrbitKind::Hyperquadric);
    Ok(Classification::new(OrbitLabel::new(kind, n, p, q)).with_form("hermitian_pq", &v, r))
}

pub fn classify_sp_pq<S: Scalar>(z: &ProjectivePoint<S>, p: usize, q: usize, tol: &Tolerances) -> Result<Classification> {
    let v = sp_hermitian_pq(z.coords(), p, q)?;
    let n = z.ambient();
    if q == 0 {
        return Ok(Classification::new(OrbitLabel::new(OrbitKind::BHatPlus, n, p, q)));
    }
    let r = reading(&v, z, tol);
    let kind = by_sign(r.sign, OrbitKind::BHatPlus, OrbitKind::BHatMinus, OrbitKind::QHat);
    Ok(Classification::new(OrbitLabel::new(kind, n, p, q)).with_form("sp_hermitian_pq", &v, r))
}

pub fn classify_sp_r<S: Scalar>(z: &ProjectivePoint<S>, tol: &Tolerances) -> Result<Classification> {
    let v = sp_real_form(z.coords())?;
    let n = z.ambient();
    let r = reading(&v, z, tol);
    let (kind, uncertain) = match r.sign {
        Sign::Positive => (OrbitKind::DPlus, false),
        Sign::Negative => (OrbitKind::DMinus, false),
        Sign::Zero => {
            let real = reality(z.coords(), tol);
            let kind = if real.sign == Sign::Zero { OrbitKind::RealProjective } else { OrbitKind::Sigma };
            (kind, real.uncertain)
        }
    };
    let mut c = Classification::new(OrbitLabel::new(kind, n, 0, 0)).with_form("sp_real", &v, r);
    c.boundary_uncertain |= uncertain;
    Ok(c)
}

pub fn classify_sl_r<S: Scalar>(z: &ProjectivePoint<S>, tol: &Tolerances) -> Result<Classification> {
    let real = reality(z.coords(), tol);
    let kind = if real.sign == Sign::Zero { OrbitKind::RealProjective } else { OrbitKind::OpenSl };
    let mut c = Classification::new(OrbitLabel::new(kind, z.ambient(), 0, 0));
    c.boundary_uncertain = real.uncertain;
    Ok(c)
}

pub fn classify_so_star<S: Scalar>(z: &ProjectivePoint<S>, tol: &Tolerances) -> Result<Classification> {
    if !z.on_quadric(tol) {
        return Err(Error::NotOnQuadric);
    }
    let v = so_star_form(z.coords())?;
    let r = reading(&v, z, tol);
    let kind = by_sign(r.sign, OrbitKind::EPlus, OrbitKind::EMinus, OrbitKind::FrakS);
    Ok(Classification::new(OrbitLabel::new(kind, z.ambient() - 1, 0, 0)).with_form("so_star", &v, r))
}

/// Orbit label for so(p,q)ʲ on Q_{p+q-2}.
pub fn classify_so_pq<S: Scalar>(
    z: &ProjectivePoint<S>,
    p: usize,
    q: usize,
    twist: u8,
    tol: &Tolerances,
) -> Result<Classification> {
    let spec = RealFormSpec::so_twisted(p, q, twist);
    spec.validate()?;
    check_len(z.coords(), p + q)?;
    if !z.on_quadric(tol) {
        return Err(Error::NotOnQuadric);
    }
    let n = p + q - 2;
    if twist != 0 {
        return classify_twisted(&spec, z, tol);
    }
    if q == 0 {
        return Ok(Classification::new(OrbitLabel::new(OrbitKind::OmegaPlus, n, p, q)));
    }
    let s = bracket_parts(z.coords(), p).0;
    let r = reading(&s, z, tol);
    let (kind, uncertain) = match r.sign {
        Sign::Positive => (OrbitKind::OmegaPlus, false),
        Sign::Negative => (OrbitKind::OmegaMinus, false),
        Sign::Zero if q == 1 => (OrbitKind::S1, false),
        Sign::Zero => {
            let real = reality(&a_inverse_apply(z.coords(), p), tol);
            (if real.sign == Sign::Zero { OrbitKind::S1 } else { OrbitKind::S2 }, real.uncertain)
        }
    };
    let mut c = Classification::new(OrbitLabel::new(kind, n, p, q)).with_form("bracket_pq", &s, r);
    c.boundary_uncertain |= uncertain;
    Ok(c)
}

fn classify_twisted<S: Scalar>(spec: &RealFormSpec, z: &ProjectivePoint<S>, tol: &Tolerances) -> Result<Classification> {
    let RealFormSpec::So { p, q, .. } = *spec else { unreachable!() };
    let n = 6;
    match (p, q) {
        (8, 0) | (7, 1) => Ok(Classification::new(OrbitLabel::new(OrbitKind::Transitive, n, 0, 0))),
        (5, 3) => {
            let d = geometry::orbit_dimension(spec, z, tol)?;
            let kind = match d {
                9 => OrbitKind::Gamma,
                12 => OrbitKind::Open53,
                other => return Err(Error::Domain(format!("unexpected orbit dimension {other} for {spec}"))),
            };
            Ok(Classification::new(OrbitLabel::new(kind, n, 0, 0)))
        }
        (6, 2) | (4, 4) => {
            let forms = invariant_hermitian_forms(spec)?;
            let m = forms.first().ok_or_else(|| Error::Domain(format!("{spec} has no invariant Hermitian form")))?;
            let v = hermitian_value(&CMatrix::<S>::convert(m), z.coords());
            let r = reading(&v, z, tol);
            let kind = if (p, q) == (6, 2) {
                by_sign(r.sign, OrbitKind::EPlus, OrbitKind::EMinus, OrbitKind::FrakS)
            } else {
                match r.sign {
                    Sign::Positive => OrbitKind::OmegaPlus,
                    Sign::Negative => OrbitKind::OmegaMinus,
                    Sign::Zero => {
                        if geometry::orbit_dimension(spec, z, tol)? == n {
                            OrbitKind::S1
                        } else {
                            OrbitKind::S2
                        }
                    }
                }
            };
            Ok(Classification::new(OrbitLabel::new(kind, n, p, q)).with_form("invariant_hermitian", &v, r))
        }
        _ => Err(Error::Unsupported(format!("{spec}"))),
    }
}

/// Label of z under the given real form, on the flag manifold it acts on.
pub fn classify<S: Scalar>(spec: &RealFormSpec, z: &ProjectivePoint<S>, tol: &Tolerances) -> Result<Classification> {
    spec.validate()?;
    check_len(z.coords(), spec.k())?;
    match *spec {
        RealFormSpec::Su { p, q } => classify_su(z, p, q, tol),
        RealFormSpec::SlReal { .. } => classify_sl_r(z, tol),
        RealFormSpec::SlQuat { .. } => Ok(Classification::new(OrbitLabel::new(OrbitKind::Transitive, z.ambient(), 0, 0))),
        RealFormSpec::SpPq { p, q } => classify_sp_pq(z, p, q, tol),
        RealFormSpec::SpReal { .. } => classify_sp_r(z, tol),
        RealFormSpec::So { p, q, twist } => classify_so_pq(z, p, q, twist, tol),
        RealFormSpec::SoStar { .. } => classify_so_star(z, tol),
        RealFormSpec::ComplexAsReal { tag } => {
            let n = if tag.series.is_projective() {
                z.ambient()
            } else {
                if !z.on_quadric(tol) {
                    return Err(Error::NotOnQuadric);
                }
                z.ambient() - 1
            };
            Ok(Classification::new(OrbitLabel::new(OrbitKind::Transitive, n, 0, 0)))
        }
    }
}

/// All orbit labels of the action, with the flag-manifold dimension n.
/// Empty orbits (q = 0, q = 1 degeneracies) are omitted.
pub fn orbit_labels(spec: &RealFormSpec) -> Result<Vec<OrbitLabel>> {
    use OrbitKind::*;
    spec.validate()?;
    let k = spec.k();
    let l = |kind, n, p, q| OrbitLabel::new(kind, n, p, q);
    let out = match *spec {
        RealFormSpec::Su { p, q } if q == 0 => vec![l(BPlus, k - 1, p, q)],
        RealFormSpec::Su { p, q } => vec![l(BPlus, k - 1, p, q), l(BMinus, k - 1, p, q), l(Hyperquadric, k - 1, p, q)],
        RealFormSpec::SlReal { .. } => vec![l(OpenSl, k - 1, 0, 0), l(RealProjective, k - 1, 0, 0)],
        RealFormSpec::SlQuat { .. } => vec![l(Transitive, k - 1, 0, 0)],
        RealFormSpec::SpPq { p, q } if q == 0 => vec![l(BHatPlus, k - 1, p, q)],
        RealFormSpec::SpPq { p, q } => vec![l(BHatPlus, k - 1, p, q), l(BHatMinus, k - 1, p, q), l(QHat, k - 1, p, q)],
        // On ℙ¹ the zero set of the form is exactly ℝℙ¹.
        RealFormSpec::SpReal { k: 2 } => vec![l(DPlus, 1, 0, 0), l(DMinus, 1, 0, 0), l(RealProjective, 1, 0, 0)],
        RealFormSpec::SpReal { .. } => {
            let n = k - 1;
            vec![l(DPlus, n, 0, 0), l(DMinus, n, 0, 0), l(Sigma, n, 0, 0), l(RealProjective, n, 0, 0)]
        }
        RealFormSpec::So { p, q, twist } => {
            let n = k - 2;
            match (twist, q) {
                (0, 0) => vec![l(OmegaPlus, n, p, q)],
                (0, 1) => vec![l(OmegaPlus, n, p, q), l(S1, n, p, q)],
                (0, _) => vec![l(OmegaPlus, n, p, q), l(OmegaMinus, n, p, q), l(S1, n, p, q), l(S2, n, p, q)],
                (_, 0) | (_, 1) => vec![l(Transitive, n, 0, 0)],
                (_, 2) => vec![l(EPlus, n, 0, 0), l(EMinus, n, 0, 0), l(FrakS, n, 0, 0)],
                (_, 3) => vec![l(Open53, n, 0, 0), l(Gamma, n, 0, 0)],
                _ => vec![l(OmegaPlus, n, p, q), l(OmegaMinus, n, p, q), l(S1, n, p, q), l(S2, n, p, q)],
            }
        }
        RealFormSpec::SoStar { .. } => {
            let n = k - 2;
            vec![l(EPlus, n, 0, 0), l(EMinus, n, 0, 0), l(FrakS, n, 0, 0)]
        }
        RealFormSpec::ComplexAsReal { tag } => {
            let n = if tag.series.is_projective() { k - 1 } else { k - 2 };
            vec![l(Transitive, n, 0, 0)]
        }
    };
    Ok(out)
}

/// Hermitian matrices M with X*M + MX = 0 for every basis element X of the
/// real form, as an exact basis. Each basis matrix is normalized so its first
/// nonzero entry (row-major) has positive real part, or zero real part and
/// negative imaginary part.
pub fn invariant_hermitian_forms(spec: &RealFormSpec) -> Result<Arc<Vec<ExactMatrix>>> {
    static CACHE: OnceLock<Mutex<HashMap<RealFormSpec, Arc<Vec<ExactMatrix>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(f) = cache.lock().expect("form cache").get(spec) {
        return Ok(f.clone());
    }
    let basis = cached_real_form_basis(spec)?;
    let forms = Arc::new(solve_invariant_forms(&basis.elements, basis.k));
    cache.lock().expect("form cache").insert(*spec, forms.clone());
    Ok(forms)
}

/// Real parameters of a Hermitian k×k matrix: the k diagonal entries, then
/// (Re, Im) of each entry above the diagonal.
fn hermitian_from_params(k: usize, params: &[BigRational]) -> ExactMatrix {
    let mut m = ExactMatrix::zeros(k);
    for (i, d) in params[..k].iter().enumerate() {
        m.set(i, i, GaussRational::real(d.clone()));
    }
    let mut idx = k;
    for r in 0..k {
        for c in r + 1..k {
            let v = GaussRational::new(params[idx].clone(), params[idx + 1].clone());
            m.set(c, r, v.conj());
            m.set(r, c, v);
            idx += 2;
        }
    }
    m
}

fn solve_invariant_forms(basis: &[ExactMatrix], k: usize) -> Vec<ExactMatrix> {
    let width = k * k;
    // Image of each parameter direction under M ↦ X*M + MX is linear, so
    // build the constraint rows column by column.
    let units: Vec<ExactMatrix> = (0..width)
        .map(|i| {
            let mut p = vec![BigRational::zero(); width];
            p[i] = BigRational::from_integer(1.into());
            hermitian_from_params(k, &p)
        })
        .collect();
    let mut system = Echelon::<BigRational>::new(width);
    for x in basis {
        let xa = x.adjoint();
        let images: Vec<ExactMatrix> = units.iter().map(|u| xa.mul(u).add(&u.mul(x))).collect();
        for r in 0..k {
            for c in 0..k {
                for part in 0..2 {
                    let row: Vec<BigRational> = images
                        .iter()
                        .map(|img| {
                            let e = img.get(r, c);
                            if part == 0 { e.re.clone() } else { e.im.clone() }
                        })
                        .collect();
                    system.insert(row);
                }
            }
        }
    }
    system
        .nullspace()
        .into_iter()
        .map(|params| normalize_sign(hermitian_from_params(k, &params)))
        .collect()
}

fn normalize_sign(m: ExactMatrix) -> ExactMatrix {
    let first = m.entries().iter().find(|e| !Scalar::is_zero(*e)).cloned();
    match first {
        Some(e) if e.re < BigRational::zero() || (e.re.is_zero() && e.im > BigRational::zero()) => m.neg(),
        _ => m,
    }
}
