// SPDX-License-Identifier: Apache-2.0

//! The triality automorphism θ of so₈(ℂ), the outer automorphism given by
//! conjugation with ℛ = diag(-1, 1, ..., 1), and the twisted real forms
//! so(p,q)ʲ = θʲ(so(p,q)⁰).

use std::sync::OnceLock;

use num::{BigRational, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{self, Echelon};
use crate::matrix::ExactMatrix;
use crate::scalar::{GaussRational, Scalar};

/// Number of `j_rs` basis elements of so₈(ℂ).
pub const SO8_DIM: usize = 28;

/// θ(j_rs) = sign · (Σ ± j_ab) / 2. One line per basis element, in
/// lexicographic order of (r,s).
const THETA_TABLE: &str = "
12 + +12 -34 +56 -78
13 + +13 +24 +57 +68
14 - +14 -23 -58 +67
15 + +18 -27 +36 -45
16 + +17 +28 +35 +46
17 - +16 +25 -38 -47
18 - +15 -26 -37 +48
23 - +14 -23 +58 -67
24 - +13 +24 -57 -68
25 + +17 +28 -35 -46
26 - +18 -27 -36 +45
27 + +15 -26 +37 -48
28 - +16 +25 +38 +47
34 + +12 -34 -56 +78
35 - +16 -25 -38 +47
36 - +15 +26 -37 -48
37 - +18 +27 +36 +45
38 - +17 -28 +35 -46
45 - +15 +26 +37 +48
46 + +16 -25 +38 -47
47 + +17 -28 -35 +46
48 - +18 +27 -36 -45
56 + +12 +34 -56 -78
57 + +13 -24 -57 +68
58 - +14 +23 -58 -67
67 + +14 +23 +58 +67
68 + +13 -24 +57 -68
78 - +12 +34 +56 +78
";

/// Index of `j_rs` (0-based r < s) in the lexicographic basis of so_k.
pub fn j_index(k: usize, r: usize, s: usize) -> usize {
    debug_assert!(r < s && s < k);
    r * (2 * k - r - 1) / 2 + (s - r - 1)
}

/// The pairs (r,s), 0-based, in lexicographic order.
pub fn j_pairs(k: usize) -> Vec<(usize, usize)> {
    (0..k).flat_map(|r| (r + 1..k).map(move |s| (r, s))).collect()
}

/// Coordinates of an antisymmetric matrix in the `j_rs` basis.
pub fn j_coords(x: &ExactMatrix) -> Result<Vec<GaussRational>> {
    if !x.is_antisymmetric() {
        return Err(Error::Domain("matrix is not antisymmetric".into()));
    }
    Ok(j_pairs(x.dim()).into_iter().map(|(r, s)| x.get(r, s).clone()).collect())
}

pub fn from_j_coords(k: usize, coords: &[GaussRational]) -> ExactMatrix {
    let mut m = ExactMatrix::zeros(k);
    for ((r, s), c) in j_pairs(k).into_iter().zip(coords) {
        m.set(r, s, c.clone());
        m.set(s, r, -c.clone());
    }
    m
}

/// θ as a 28×28 rational matrix: column `c` holds the coordinates of
/// θ(j_c). Every nonzero entry is ±1/2.
#[derive(Debug, Clone)]
pub struct ThetaMap {
    pub columns: Vec<Vec<BigRational>>,
}

impl ThetaMap {
    fn parse() -> Self {
        let half = BigRational::new(1.into(), 2.into());
        let mut columns = vec![vec![BigRational::zero(); SO8_DIM]; SO8_DIM];
        let mut seen = [false; SO8_DIM];
        for line in THETA_TABLE.lines().filter(|l| !l.trim().is_empty()) {
            let mut it = line.split_whitespace();
            let (r, s) = digits(it.next().expect("source index"));
            let outer = if it.next() == Some("-") { -half.clone() } else { half.clone() };
            let col = j_index(8, r, s);
            assert!(!seen[col], "duplicate θ row for j{}{}", r + 1, s + 1);
            seen[col] = true;
            for term in it {
                let sign = if term.starts_with('-') { -outer.clone() } else { outer.clone() };
                let (a, b) = digits(&term[1..]);
                columns[col][j_index(8, a, b)] += sign;
            }
        }
        assert!(seen.iter().all(|x| *x), "θ table incomplete");
        Self { columns }
    }

    /// Entry in row `row`, column `col`.
    pub fn coeff(&self, row: usize, col: usize) -> &BigRational {
        &self.columns[col][row]
    }

    /// Applies the linear map to a coordinate vector.
    pub fn apply_coords(&self, coords: &[GaussRational]) -> Vec<GaussRational> {
        let mut out = vec![GaussRational::zero(); SO8_DIM];
        for (col, c) in coords.iter().enumerate() {
            if Scalar::is_zero(c) {
                continue;
            }
            for (row, t) in self.columns[col].iter().enumerate() {
                if !t.is_zero() {
                    let term = GaussRational::new(&c.re * t, &c.im * t);
                    out[row] += &term;
                }
            }
        }
        out
    }

    /// Exact inverse, or `None` when singular.
    pub fn inverse(&self) -> Option<ThetaMap> {
        // Solve [A | I] by reducing the augmented row system.
        let n = SO8_DIM;
        let mut e = Echelon::<BigRational>::new(2 * n);
        for row in 0..n {
            let mut v = Vec::with_capacity(2 * n);
            for col in 0..n {
                v.push(self.columns[col][row].clone());
            }
            for j in 0..n {
                v.push(if j == row { BigRational::from_integer(1.into()) } else { BigRational::zero() });
            }
            e.insert(v);
        }
        if e.pivots().iter().take(n).copied().ne(0..n) {
            return None;
        }
        // The reduced system is [I | A^{-1}].
        let mut columns = vec![vec![BigRational::zero(); n]; n];
        for (i, (_, row)) in e.rows().iter().enumerate() {
            for j in 0..n {
                columns[j][i] = row[n + j].clone();
            }
        }
        Some(ThetaMap { columns })
    }

    pub fn compose(&self, other: &ThetaMap) -> ThetaMap {
        let n = SO8_DIM;
        let mut columns = vec![vec![BigRational::zero(); n]; n];
        for (j, col) in other.columns.iter().enumerate() {
            for (m, t) in col.iter().enumerate() {
                if t.is_zero() {
                    continue;
                }
                for (i, a) in self.columns[m].iter().enumerate() {
                    if !a.is_zero() {
                        columns[j][i] += a * t;
                    }
                }
            }
        }
        ThetaMap { columns }
    }

    pub fn is_identity(&self) -> bool {
        self.columns.iter().enumerate().all(|(j, col)| {
            col.iter()
                .enumerate()
                .all(|(i, x)| if i == j { *x == BigRational::from_integer(1.into()) } else { x.is_zero() })
        })
    }

    pub fn apply(&self, x: &ExactMatrix) -> Result<ExactMatrix> {
        if x.dim() != 8 {
            return Err(Error::DimensionMismatch { expected: 8, got: x.dim() });
        }
        Ok(from_j_coords(8, &self.apply_coords(&j_coords(x)?)))
    }
}

fn digits(s: &str) -> (usize, usize) {
    let b = s.as_bytes();
    assert_eq!(b.len(), 2, "bad index `{s}`");
    ((b[0] - b'1') as usize, (b[1] - b'1') as usize)
}

struct Tables {
    theta: ThetaMap,
    theta_inv: ThetaMap,
}

fn tables() -> &'static Tables {
    static T: OnceLock<Tables> = OnceLock::new();
    T.get_or_init(|| {
        let theta = ThetaMap::parse();
        let theta_inv = theta.inverse().expect("θ is invertible");
        Tables { theta, theta_inv }
    })
}

pub fn theta_map() -> &'static ThetaMap {
    &tables().theta
}

pub fn theta_inverse_map() -> &'static ThetaMap {
    &tables().theta_inv
}

/// θ(X) for antisymmetric 8×8 X.
pub fn theta(x: &ExactMatrix) -> Result<ExactMatrix> {
    theta_map().apply(x)
}

pub fn theta_inverse(x: &ExactMatrix) -> Result<ExactMatrix> {
    theta_inverse_map().apply(x)
}

/// θʲ(X) for any integer j (negative powers use θ⁻¹).
pub fn theta_power(x: &ExactMatrix, j: i32) -> Result<ExactMatrix> {
    let mut out = x.clone();
    let step = if j >= 0 { theta_map() } else { theta_inverse_map() };
    for _ in 0..j.unsigned_abs() {
        out = step.apply(&out)?;
    }
    Ok(out)
}

/// ℛ_m = diag(-1, 1, ..., 1).
pub fn r_matrix(m: usize) -> ExactMatrix {
    let mut d = vec![GaussRational::one(); m];
    d[0] = -GaussRational::one();
    ExactMatrix::diag(&d)
}

/// ℛ_m X ℛ_m⁻¹, i.e. X with the signs of its first row and column flipped
/// (the corner entry is unchanged).
pub fn conjugate_by_r(x: &ExactMatrix, m: usize) -> Result<ExactMatrix> {
    if x.dim() != m {
        return Err(Error::DimensionMismatch { expected: m, got: x.dim() });
    }
    let r = r_matrix(m);
    Ok(r.mul(x).mul(&r))
}

#[derive(Debug, Clone, Serialize)]
pub struct PairFailure {
    pub left: String,
    pub right: String,
    pub lhs: Vec<String>,
    pub rhs: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct TrialityReport {
    pub pairs_checked: usize,
    pub pairs_passed: usize,
    pub failures: Vec<PairFailure>,
    pub invertible: bool,
    pub inverse_round_trip: bool,
    pub cube_is_automorphism: bool,
    pub nonzero_coefficients_are_halves: bool,
}

impl TrialityReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
            && self.pairs_passed == self.pairs_checked
            && self.invertible
            && self.inverse_round_trip
            && self.cube_is_automorphism
            && self.nonzero_coefficients_are_halves
    }
}

pub fn j_name(r: usize, s: usize) -> String {
    format!("j{}{}", r + 1, s + 1)
}

fn is_automorphism_on_pairs(
    map: &ThetaMap,
    basis: &[ExactMatrix],
    images: &[ExactMatrix],
    failures: &mut Vec<PairFailure>,
) -> usize {
    let names: Vec<String> = j_pairs(8).into_iter().map(|(r, s)| j_name(r, s)).collect();
    let mut passed = 0;
    for a in 0..basis.len() {
        for b in a + 1..basis.len() {
            let lhs = map.apply(&basis[a].bracket(&basis[b]).expect("same size")).expect("antisymmetric");
            let rhs = images[a].bracket(&images[b]).expect("same size");
            if lhs == rhs {
                passed += 1;
            } else {
                failures.push(PairFailure {
                    left: names[a].clone(),
                    right: names[b].clone(),
                    lhs: lhs.to_string().lines().map(str::to_owned).collect(),
                    rhs: rhs.to_string().lines().map(str::to_owned).collect(),
                });
            }
        }
    }
    passed
}

/// Exhaustive exact check that θ preserves brackets on all 378 pairs, is
/// invertible, and that θ³ is again an automorphism.
pub fn verify_theta_automorphism() -> TrialityReport {
    let map = theta_map();
    let basis: Vec<ExactMatrix> = j_pairs(8).into_iter().map(|(r, s)| ExactMatrix::j(8, r, s)).collect();
    let images: Vec<ExactMatrix> = basis.iter().map(|x| map.apply(x).expect("antisymmetric")).collect();
    let mut failures = Vec::new();
    let pairs_passed = is_automorphism_on_pairs(map, &basis, &images, &mut failures);

    let inverse = map.inverse();
    let invertible = inverse.is_some();
    let inverse_round_trip = inverse
        .as_ref()
        .map(|inv| map.compose(inv).is_identity() && inv.compose(map).is_identity())
        .unwrap_or(false);

    let cube = map.compose(map).compose(map);
    let cube_images: Vec<ExactMatrix> = basis.iter().map(|x| cube.apply(x).expect("antisymmetric")).collect();
    let mut cube_failures = Vec::new();
    let cube_ok = is_automorphism_on_pairs(&cube, &basis, &cube_images, &mut cube_failures) == 378;

    let half = BigRational::new(1.into(), 2.into());
    let halves = map
        .columns
        .iter()
        .flatten()
        .all(|x| x.is_zero() || *x == half || *x == -half.clone());

    TrialityReport {
        pairs_checked: 378,
        pairs_passed,
        failures,
        invertible,
        inverse_round_trip,
        cube_is_automorphism: cube_ok,
        nonzero_coefficients_are_halves: halves,
    }
}

/// Real-linear functionals on antisymmetric 8×8 matrices, one per displayed
/// condition for so(5,3)¹. Each functional is a list of
/// (part, r, s, coefficient) with part 0 = Re, 1 = Im, indices 1-based.
fn so53_conditions() -> Vec<Vec<(u8, usize, usize, i64)>> {
    let re = |terms: &[(usize, i64)]| terms.iter().map(|&(rs, c)| (0u8, rs / 10, rs % 10, c)).collect::<Vec<_>>();
    let im = |terms: &[(usize, i64)]| terms.iter().map(|&(rs, c)| (1u8, rs / 10, rs % 10, c)).collect::<Vec<_>>();
    // A chain x0 = s1 x1 = s2 x2 = s3 x3 expands to three equations.
    let chain = |xs: [(usize, i64); 4]| -> Vec<Vec<(u8, usize, usize, i64)>> {
        (1..4).map(|t| re(&[(xs[0].0, xs[0].1), (xs[t].0, -xs[t].1)])).collect()
    };
    let mut out = vec![
        re(&[(12, 1), (34, 1), (56, -1), (78, -1)]),
        re(&[(14, 1), (23, 1), (58, -1), (67, -1)]),
        re(&[(13, 1), (24, -1), (57, -1), (68, 1)]),
    ];
    out.extend(chain([(15, 1), (26, 1), (37, 1), (48, 1)]));
    out.extend(chain([(18, 1), (27, -1), (36, 1), (45, -1)]));
    out.extend(chain([(16, 1), (25, -1), (38, -1), (47, 1)]));
    out.extend(chain([(17, 1), (28, 1), (35, -1), (46, -1)]));
    out.push(im(&[(17, 1), (28, 1), (35, -1), (46, -1)]));
    out.push(im(&[(18, 1), (27, -1), (36, 1), (45, -1)]));
    out.push(im(&[(16, 1), (25, -1), (38, -1), (47, 1)]));
    out.push(im(&[(15, 1), (26, 1), (37, 1), (48, 1)]));
    out
}

/// Number of displayed conditions.
pub fn so53_condition_count() -> usize {
    so53_conditions().len()
}

/// True iff antisymmetric X satisfies every displayed so(5,3)¹ condition.
pub fn check_so53_conditions(x: &ExactMatrix) -> bool {
    if x.dim() != 8 || !x.is_antisymmetric() {
        return false;
    }
    so53_conditions().iter().all(|cond| {
        let mut acc = BigRational::zero();
        for &(part, r, s, c) in cond {
            let a = x.get(r - 1, s - 1);
            let v = if part == 0 { &a.re } else { &a.im };
            acc += v * BigRational::from_integer(c.into());
        }
        acc.is_zero()
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct So53Audit {
    pub conditions: usize,
    pub independent_conditions: usize,
    /// Real dimension of antisymmetric 8×8 complex matrices.
    pub ambient_real_dim: usize,
    pub solution_real_dim: usize,
    pub twisted_form_real_dim: usize,
    pub twisted_basis_satisfies_all: bool,
    pub violations: Vec<String>,
}

/// Containment of θ(so(5,3)⁰) in the solution set, plus the dimension of
/// that solution set over ℝ.
pub fn audit_so53_conditions() -> So53Audit {
    let conds = so53_conditions();
    // Real coordinates of an antisymmetric matrix: (Re a_rs, Im a_rs) per pair.
    let width = 2 * SO8_DIM;
    let rows: Vec<Vec<BigRational>> = conds
        .iter()
        .map(|cond| {
            let mut v = vec![BigRational::zero(); width];
            for &(part, r, s, c) in cond {
                v[2 * j_index(8, r - 1, s - 1) + part as usize] += BigRational::from_integer(c.into());
            }
            v
        })
        .collect();
    let independent = linalg::rank(&rows);
    let basis = crate::lie::twisted_real_form(5, 3, 1).expect("valid signature");
    let mut violations = Vec::new();
    for (i, x) in basis.elements.iter().enumerate() {
        if !check_so53_conditions(x) {
            violations.push(format!("basis element {i}"));
        }
    }
    So53Audit {
        conditions: conds.len(),
        independent_conditions: independent,
        ambient_real_dim: width,
        solution_real_dim: width - independent,
        twisted_form_real_dim: basis.real_rank(),
        twisted_basis_satisfies_all: violations.is_empty(),
        violations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn j(r: usize, s: usize) -> ExactMatrix {
        ExactMatrix::j(8, r - 1, s - 1)
    }

    fn half_sum(terms: &[(i64, usize, usize)]) -> ExactMatrix {
        let mut m = ExactMatrix::zeros(8);
        for &(c, r, s) in terms {
            m = m.add(&j(r, s).scale(&GaussRational::from_ints(c, 0)));
        }
        m.scale(&GaussRational::ratio(1, 2))
    }

    #[test]
    fn index_is_lexicographic() {
        for (i, (r, s)) in j_pairs(8).into_iter().enumerate() {
            assert_eq!(j_index(8, r, s), i);
        }
        assert_eq!(j_pairs(8).len(), SO8_DIM);
    }

    #[test]
    fn first_and_last_images() {
        assert_eq!(theta(&j(1, 2)).unwrap(), half_sum(&[(1, 1, 2), (-1, 3, 4), (1, 5, 6), (-1, 7, 8)]));
        assert_eq!(theta(&j(7, 8)).unwrap(), half_sum(&[(-1, 1, 2), (-1, 3, 4), (-1, 5, 6), (-1, 7, 8)]));
    }

    #[test]
    fn theta_is_linear() {
        let a = GaussRational::ratio(3, 7);
        let b: GaussRational = "-2/5+1/3i".parse().unwrap();
        let x = j(1, 5).add(&j(2, 7).scale(&GaussRational::i()));
        let y = j(3, 8);
        let lhs = theta(&x.scale(&a).add(&y.scale(&b))).unwrap();
        let rhs = theta(&x).unwrap().scale(&a).add(&theta(&y).unwrap().scale(&b));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn single_pair_probe() {
        let lhs = theta(&j(1, 2).bracket(&j(1, 3)).unwrap()).unwrap();
        let rhs = theta(&j(1, 2)).unwrap().bracket(&theta(&j(1, 3)).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn inverse_round_trips_on_basis() {
        for (r, s) in j_pairs(8) {
            let x = ExactMatrix::j(8, r, s);
            assert_eq!(theta_inverse(&theta(&x).unwrap()).unwrap(), x);
        }
    }

    #[test]
    fn rejects_non_antisymmetric_input() {
        assert!(theta(&ExactMatrix::identity(8)).is_err());
        assert!(theta(&ExactMatrix::zeros(7)).is_err());
    }

    #[test]
    fn r_conjugation() {
        let d = ExactMatrix::diag(&(1..=8).map(|v| GaussRational::from_ints(v, 0)).collect::<Vec<_>>());
        assert_eq!(conjugate_by_r(&d, 8).unwrap(), d);
        assert_eq!(conjugate_by_r(&j(1, 2), 8).unwrap(), j(1, 2).neg());
        assert_eq!(conjugate_by_r(&j(2, 3), 8).unwrap(), j(2, 3));
        let x = j(1, 4).add(&j(5, 6).scale(&GaussRational::i()));
        assert_eq!(conjugate_by_r(&conjugate_by_r(&x, 8).unwrap(), 8).unwrap(), x);
        assert!(conjugate_by_r(&x, 7).is_err());
    }

    #[test]
    fn so53_conditions_basic() {
        assert_eq!(so53_condition_count(), 19);
        assert!(check_so53_conditions(&ExactMatrix::zeros(8)));
        assert!(!check_so53_conditions(&j(1, 5)));
    }
}
