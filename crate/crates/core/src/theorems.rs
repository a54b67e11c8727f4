// SPDX-License-Identifier: Apache-2.0

//! Classification tables: for an admissible pair (𝔤₀, n), the complex
//! manifolds X that can carry an almost effective 𝔤₀-action, each realized
//! as an invariant open subset of ℙⁿ or Qₙ.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::flag::ProjectivePoint;
use crate::invariants::{classify, orbit_labels, OrbitKind, OrbitLabel};
use crate::lie::{RealFormSpec, Series};
use crate::parabolic::{check_conditions, Admissibility, FlagModel};
use crate::scalar::{Scalar, Tolerances};

/// Which classification table produced a result.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TableId {
    SuPq,
    SlReal,
    SlQuat,
    SpPq,
    SpReal,
    SoPq,
    SoPqDim3,
    SoStar,
    So62,
    So71,
    So53,
    TypeTwo,
}

impl TableId {
    pub const ALL: [TableId; 12] = [
        TableId::SuPq,
        TableId::SlReal,
        TableId::SlQuat,
        TableId::SpPq,
        TableId::SpReal,
        TableId::SoPq,
        TableId::SoPqDim3,
        TableId::SoStar,
        TableId::So62,
        TableId::So71,
        TableId::So53,
        TableId::TypeTwo,
    ];
}

/// How to decide whether a point lies in a model.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Membership {
    /// The whole flag manifold.
    Ambient,
    /// A union of orbits of `acting`, read off by [`classify`].
    Orbits { acting: RealFormSpec, orbits: Vec<OrbitLabel> },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelSpace {
    pub name: String,
    pub ambient: FlagModel,
    pub compact: bool,
    pub membership: Membership,
    /// Defining condition in words, e.g. `<z,z>_{3,1} > 0`.
    pub descriptor: String,
}

impl ModelSpace {
    fn compact(ambient: FlagModel) -> Self {
        Self {
            name: ambient.to_string(),
            ambient,
            compact: true,
            membership: Membership::Ambient,
            descriptor: match ambient {
                FlagModel::Projective(_) => "all points".into(),
                FlagModel::Quadric(_) => "z_1^2 + ... + z_k^2 = 0".into(),
            },
        }
    }

    fn orbits(name: String, ambient: FlagModel, acting: RealFormSpec, orbits: Vec<OrbitLabel>, descriptor: String) -> Self {
        Self { name, ambient, compact: false, membership: Membership::Orbits { acting, orbits }, descriptor }
    }

    /// Complement of the given orbits among all orbits of `acting`.
    fn complement(name: String, ambient: FlagModel, acting: RealFormSpec, removed: &[OrbitKind], descriptor: String) -> Self {
        let orbits = orbit_labels(&acting)
            .expect("valid acting form")
            .into_iter()
            .filter(|l| !removed.contains(&l.kind))
            .collect();
        Self::orbits(name, ambient, acting, orbits, descriptor)
    }

    /// Membership test. Errors if z is not a point of the ambient manifold.
    pub fn contains<S: Scalar>(&self, z: &ProjectivePoint<S>, tol: &Tolerances) -> Result<bool> {
        let (k, quadric) = match self.ambient {
            FlagModel::Projective(n) => (n + 1, false),
            FlagModel::Quadric(n) => (n + 2, true),
        };
        if z.len() != k {
            return Err(Error::DimensionMismatch { expected: k, got: z.len() });
        }
        if quadric && !z.on_quadric(tol) {
            return Err(Error::NotOnQuadric);
        }
        match &self.membership {
            Membership::Ambient => Ok(true),
            Membership::Orbits { acting, orbits } => {
                let c = classify(acting, z, tol)?;
                Ok(orbits.contains(&c.label))
            }
        }
    }
}

impl fmt::Display for ModelSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassificationResult {
    pub spec: RealFormSpec,
    pub name: String,
    pub n: usize,
    pub table: TableId,
    pub models: Vec<ModelSpace>,
    pub notes: Vec<String>,
}

impl ClassificationResult {
    pub fn model_names(&self) -> Vec<String> {
        self.models.iter().map(|m| m.name.clone()).collect()
    }

    /// One-line summary of the model list, followed by the notes.
    pub fn statement(&self) -> String {
        let mut s = format!("{} acting on complex {}-folds: {}", self.name, self.n, self.model_names().join(", "));
        for note in &self.notes {
            s.push_str("\n  note: ");
            s.push_str(note);
        }
        s
    }
}

fn l(kind: OrbitKind, n: usize, p: usize, q: usize) -> OrbitLabel {
    OrbitLabel::new(kind, n, p, q)
}

fn su_models(acting: RealFormSpec, p: usize, q: usize, n: usize) -> Vec<ModelSpace> {
    let amb = FlagModel::Projective(n);
    let mut out = vec![ModelSpace::compact(amb)];
    if q > 0 {
        out.push(ModelSpace::orbits(
            format!("B+_{{{p},{q}}}"),
            amb,
            acting,
            vec![l(OrbitKind::BPlus, n, p, q)],
            format!("<z,z>_{{{p},{q}}} > 0"),
        ));
        out.push(ModelSpace::orbits(
            format!("B-_{{{p},{q}}}"),
            amb,
            acting,
            vec![l(OrbitKind::BMinus, n, p, q)],
            format!("<z,z>_{{{p},{q}}} < 0"),
        ));
    }
    out
}

fn sl_real_models(acting: RealFormSpec, n: usize) -> Vec<ModelSpace> {
    let amb = FlagModel::Projective(n);
    vec![
        ModelSpace::compact(amb),
        ModelSpace::complement(format!("P^{n} \\ RP^{n}"), amb, acting, &[OrbitKind::RealProjective], "z not projectively real".into()),
    ]
}

fn sp_pq_models(acting: RealFormSpec, p: usize, q: usize, n: usize) -> Vec<ModelSpace> {
    let amb = FlagModel::Projective(n);
    let mut out = vec![ModelSpace::compact(amb)];
    if q > 0 {
        let (a, b) = (2 * p, 2 * q);
        out.push(ModelSpace::orbits(
            format!("B+_{{{a},{b}}}"),
            amb,
            acting,
            vec![l(OrbitKind::BHatPlus, n, p, q)],
            format!("(z,z)_{{{p},{q}}} > 0"),
        ));
        out.push(ModelSpace::orbits(
            format!("B-_{{{a},{b}}}"),
            amb,
            acting,
            vec![l(OrbitKind::BHatMinus, n, p, q)],
            format!("(z,z)_{{{p},{q}}} < 0"),
        ));
    }
    out
}

fn sp_real_models(acting: RealFormSpec, n: usize) -> Vec<ModelSpace> {
    let amb = FlagModel::Projective(n);
    let h = n.div_ceil(2);
    vec![
        ModelSpace::compact(amb),
        ModelSpace::complement(format!("P^{n} \\ RP^{n}"), amb, acting, &[OrbitKind::RealProjective], "z not projectively real".into()),
        ModelSpace::orbits(
            format!("B+_{{{h},{h}}}"),
            amb,
            acting,
            vec![l(OrbitKind::DPlus, n, 0, 0)],
            "(Re z, Im z) > 0; the domain (Re z, Im z) < 0 is biholomorphic to it".into(),
        ),
    ]
}

fn omega(sign: char, p: usize, q: usize, n: usize, acting: RealFormSpec) -> ModelSpace {
    let kind = if sign == '+' { OrbitKind::OmegaPlus } else { OrbitKind::OmegaMinus };
    let rel = if sign == '+' { '>' } else { '<' };
    ModelSpace::orbits(
        format!("Omega{sign}_{{{p},{q}}}"),
        FlagModel::Quadric(n),
        acting,
        vec![l(kind, n, p, q)],
        format!("[Re w, Re w]_{{{p},{q}}} {rel} 0 for w = A^-1 z"),
    )
}

fn q_minus_s1(p: usize, q: usize, n: usize, acting: RealFormSpec) -> ModelSpace {
    ModelSpace::complement(
        format!("Q_{n} \\ S1_{{{p},{q}}}"),
        FlagModel::Quadric(n),
        acting,
        &[OrbitKind::S1],
        "z outside the totally real orbit S1".into(),
    )
}

/// so(p,q) list with the q = 0 and q = 1 degeneracies resolved.
fn so_pq_models(p: usize, q: usize, n: usize, notes: &mut Vec<String>) -> Vec<ModelSpace> {
    let acting = RealFormSpec::so(p, q);
    let mut out = vec![ModelSpace::compact(FlagModel::Quadric(n))];
    match q {
        0 => notes.push(format!("so({p},0) is transitive on Q_{n}; the remaining entries coincide with Q_{n} or are empty")),
        1 => {
            out.push(q_minus_s1(p, q, n, acting));
            notes.push(format!("Omega-_{{{p},1}} is empty and Omega+_{{{p},1}} = Q_{n} \\ S1_{{{p},1}}"));
        }
        _ => {
            out.push(q_minus_s1(p, q, n, acting));
            out.push(omega('+', p, q, n, acting));
            out.push(omega('-', p, q, n, acting));
        }
    }
    out
}

fn e_models(n: usize, acting: RealFormSpec) -> [ModelSpace; 2] {
    let amb = FlagModel::Quadric(n);
    [
        ModelSpace::orbits(format!("E+_{n}"), amb, acting, vec![l(OrbitKind::EPlus, n, 0, 0)], "i[z,z] > 0".into()),
        ModelSpace::orbits(format!("E-_{n}"), amb, acting, vec![l(OrbitKind::EMinus, n, 0, 0)], "i[z,z] < 0".into()),
    ]
}

/// so(p,q) with p + q = 5 together with its sp partner on ℙ³.
fn so5_models(p: usize) -> Vec<ModelSpace> {
    let (p3, q3) = (FlagModel::Projective(3), FlagModel::Quadric(3));
    let mut out = vec![ModelSpace::compact(p3), ModelSpace::compact(q3)];
    match p {
        5 => {}
        4 => {
            let sp = RealFormSpec::SpPq { p: 1, q: 1 };
            out.push(ModelSpace::orbits(
                "B+_{2,2}".into(),
                p3,
                sp,
                vec![l(OrbitKind::BHatPlus, 3, 1, 1)],
                "(z,z)_{1,1} > 0".into(),
            ));
            out.push(omega('+', 4, 1, 3, RealFormSpec::so(4, 1)));
        }
        _ => {
            let sp = RealFormSpec::SpReal { k: 4 };
            let so = RealFormSpec::so(3, 2);
            out.push(ModelSpace::complement("P^3 \\ RP^3".into(), p3, sp, &[OrbitKind::RealProjective], "z not projectively real".into()));
            out.push(q_minus_s1(3, 2, 3, so));
            out.push(ModelSpace::orbits("B+_{2,2}".into(), p3, sp, vec![l(OrbitKind::DPlus, 3, 0, 0)], "(Re z, Im z) > 0".into()));
            out.push(omega('+', 3, 2, 3, so));
            out.push(omega('-', 3, 2, 3, so));
        }
    }
    out
}

/// The A-series form isomorphic to a form of so₆(ℂ).
fn so6_partner(spec: &RealFormSpec) -> Option<RealFormSpec> {
    match *spec {
        RealFormSpec::So { p: 6, q: 0, .. } => Some(RealFormSpec::su(4, 0)),
        RealFormSpec::So { p: 5, q: 1, .. } => Some(RealFormSpec::SlQuat { k: 4 }),
        RealFormSpec::So { p: 4, q: 2, .. } => Some(RealFormSpec::su(2, 2)),
        RealFormSpec::So { p: 3, q: 3, .. } => Some(RealFormSpec::SlReal { k: 4 }),
        RealFormSpec::SoStar { k: 6 } => Some(RealFormSpec::su(3, 1)),
        _ => None,
    }
}

/// The so₅ form isomorphic to a form of sp₄(ℂ).
fn sp4_partner(spec: &RealFormSpec) -> Option<usize> {
    match *spec {
        RealFormSpec::SpPq { p: 2, q: 0 } => Some(5),
        RealFormSpec::SpPq { p: 1, q: 1 } => Some(4),
        RealFormSpec::SpReal { k: 4 } => Some(3),
        _ => None,
    }
}

/// The model list for an admissible pair. Inadmissible and vacuous pairs
/// are errors; so*(8) is rejected in favour of the isomorphic so(6,2).
pub fn classify_manifolds(spec: &RealFormSpec, n: usize) -> Result<ClassificationResult> {
    if let RealFormSpec::SoStar { k: 8 } = spec {
        return Err(Error::Unsupported("so*(8) is isomorphic to so(6,2); query so(6,2) with n = 6 instead".into()));
    }
    let adm = check_conditions(spec, n)?;
    match adm.status {
        Admissibility::Admissible => {}
        Admissibility::Inadmissible => {
            return Err(Error::Inadmissible(format!(
                "{spec} with n = {n}: k = {} fails the strict inequality; see check_conditions",
                adm.k
            )))
        }
        Admissibility::Vacuous => {
            return Err(Error::Inadmissible(format!(
                "{spec} with n = {n}: k = {} satisfies the inequality but not the forced equality, so no such \
                 manifold exists; see check_conditions",
                adm.k
            )))
        }
    }
    let mut notes = Vec::new();
    let (table, models) = if let RealFormSpec::ComplexAsReal { tag } = *spec {
        let models = adm.models.iter().map(|m| ModelSpace::compact(*m)).collect();
        if tag.series == Series::B && tag.k == 5 {
            notes.push("so5(C) = sp4(C) acts on both P^3 and Q_3".into());
        }
        (TableId::TypeTwo, models)
    } else if let Some(partner) = so6_partner(spec) {
        notes.push(format!("{spec} is isomorphic to {partner}; models are those of {partner}"));
        table_for(&partner, n, &mut notes)?
    } else if let Some(p) = sp4_partner(spec) {
        notes.push(format!("{spec} is isomorphic to so({p},{})", 5 - p));
        (TableId::SoPqDim3, so5_models(p))
    } else {
        table_for(spec, n, &mut notes)?
    };
    Ok(ClassificationResult { spec: *spec, name: spec.to_string(), n, table, models, notes })
}

fn table_for(spec: &RealFormSpec, n: usize, notes: &mut Vec<String>) -> Result<(TableId, Vec<ModelSpace>)> {
    Ok(match *spec {
        RealFormSpec::Su { p, q } => {
            if q == 0 {
                notes.push(format!("B+_{{{p},0}} = P^{n} and B-_{{{p},0}} is empty"));
            }
            (TableId::SuPq, su_models(*spec, p, q, n))
        }
        RealFormSpec::SlReal { .. } => (TableId::SlReal, sl_real_models(*spec, n)),
        RealFormSpec::SlQuat { .. } => (TableId::SlQuat, vec![ModelSpace::compact(FlagModel::Projective(n))]),
        RealFormSpec::SpPq { p, q } => {
            if q == 0 {
                notes.push(format!("B+_{{{},0}} = P^{n} and B-_{{{},0}} is empty", 2 * p, 2 * p));
            }
            (TableId::SpPq, sp_pq_models(*spec, p, q, n))
        }
        RealFormSpec::SpReal { .. } => (TableId::SpReal, sp_real_models(*spec, n)),
        RealFormSpec::So { p, q, twist } => {
            if twist != 0 {
                notes.push(format!(
                    "the list depends only on the abstract algebra so({p},{q}); descriptors use the standard embedding \
                     except where a twisted one is named"
                ));
            }
            match (n, p) {
                (3, _) => (TableId::SoPqDim3, so5_models(p)),
                (6, 6) => {
                    let mut m = so_pq_models(6, 2, 6, notes);
                    m.extend(e_models(6, RealFormSpec::so_twisted(6, 2, 1)));
                    (TableId::So62, m)
                }
                (6, 7) => (TableId::So71, so_pq_models(7, 1, 6, notes)),
                (6, 5) => {
                    let mut m = so_pq_models(5, 3, 6, notes);
                    let twisted = RealFormSpec::so_twisted(5, 3, 1);
                    m.push(ModelSpace::orbits(
                        "Q_6 \\ Gamma".into(),
                        FlagModel::Quadric(6),
                        twisted,
                        vec![l(OrbitKind::Open53, 6, 0, 0)],
                        "orbit dimension 12 under so(5,3)^1".into(),
                    ));
                    (TableId::So53, m)
                }
                _ => (TableId::SoPq, so_pq_models(p, q, n, notes)),
            }
        }
        RealFormSpec::SoStar { .. } => {
            let mut m = vec![ModelSpace::compact(FlagModel::Quadric(n))];
            m.extend(e_models(n, *spec));
            (TableId::SoStar, m)
        }
        RealFormSpec::ComplexAsReal { .. } => unreachable!("handled by the caller"),
    })
}

/// Every (spec, n) with a non-empty table, for matrices up to size `max_k`.
pub fn admissible_pairs(max_k: usize) -> Vec<(RealFormSpec, usize)> {
    crate::lie::all_real_forms(max_k)
        .into_iter()
        .filter_map(|spec| {
            let k = spec.series_tag().ok()?.k;
            let n = (2..=k).find(|&n| check_conditions(&spec, n).map(|r| r.is_admissible()).unwrap_or(false))?;
            classify_manifolds(&spec, n).ok().map(|_| (spec, n))
        })
        .collect()
}
