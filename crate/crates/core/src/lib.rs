// SPDX-License-Identifier: Apache-2.0

//! Classical complex Lie algebras, their real forms as explicit matrix
//! algebras, and the orbit structure of those real forms on projective
//! space ℙⁿ and on the quadric Qₙ.

pub mod error;
pub mod explorer;
pub mod flag;
pub mod geometry;
pub mod invariants;
pub mod lie;
pub mod linalg;
pub mod matrix;
pub mod parabolic;
pub mod scalar;
pub mod theorems;
pub mod triality;

pub use error::{Error, Result};
pub use matrix::{CMatrix, ExactMatrix, FloatMatrix};
pub use scalar::{Complex64, GaussRational, Scalar, Sign, SignReading, Tolerances};
pub use lie::{LieBasis, RealFormSpec, Series, SeriesTag};
pub use flag::{ExactPoint, FloatPoint, ProjectivePoint, QuadricPoint};
pub use invariants::{classify, Classification, OrbitKind, OrbitLabel};
pub use parabolic::{check_conditions, max_parabolic_classes, Admissibility, AdmissibilityResult, FlagModel};
pub use theorems::{classify_manifolds, ClassificationResult, Membership, ModelSpace, TableId};
