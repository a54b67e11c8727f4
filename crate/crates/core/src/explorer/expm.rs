// SPDX-License-Identifier: Apache-2.0

//! Matrix exponential by scaling and squaring with a degree-13 Padé
//! approximant (Higham 2005).

use nalgebra::DMatrix;

use crate::matrix::FloatMatrix;
use crate::scalar::Complex64;

const THETA_13: f64 = 5.371920351148152;

const PADE_13: [f64; 14] = [
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
];

fn to_dmatrix(m: &FloatMatrix) -> DMatrix<Complex64> {
    let k = m.dim();
    DMatrix::from_fn(k, k, |r, c| *m.get(r, c))
}

fn from_dmatrix(m: &DMatrix<Complex64>) -> FloatMatrix {
    FloatMatrix::from_fn(m.nrows(), |r, c| m[(r, c)])
}

fn one_norm(m: &DMatrix<Complex64>) -> f64 {
    (0..m.ncols())
        .map(|c| m.column(c).iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// exp(A) for a square complex matrix.
pub fn expm(a: &FloatMatrix) -> FloatMatrix {
    from_dmatrix(&expm_dense(&to_dmatrix(a)))
}

pub fn expm_dense(a: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    let k = a.nrows();
    let norm = one_norm(a);
    let s = if norm > THETA_13 { (norm / THETA_13).log2().ceil() as i32 } else { 0 };
    let a = a.scale(0.5f64.powi(s));
    let b = |i: usize| Complex64::new(PADE_13[i], 0.0);
    let id = DMatrix::<Complex64>::identity(k, k);
    let a2 = &a * &a;
    let a4 = &a2 * &a2;
    let a6 = &a4 * &a2;
    let u_inner = &a6 * (&a6 * b(13) + &a4 * b(11) + &a2 * b(9)) + &a6 * b(7) + &a4 * b(5) + &a2 * b(3) + &id * b(1);
    let u = &a * u_inner;
    let v = &a6 * (&a6 * b(12) + &a4 * b(10) + &a2 * b(8)) + &a6 * b(6) + &a4 * b(4) + &a2 * b(2) + &id * b(0);
    let p = &v + &u;
    let q = &v - &u;
    let mut r = q.lu().solve(&p).expect("Padé denominator is invertible for scaled input");
    for _ in 0..s {
        r = &r * &r;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_and_nilpotent() {
        let d = FloatMatrix::diag(&[Complex64::new(1.0, 0.0), Complex64::new(0.0, std::f64::consts::PI)]);
        let e = expm(&d);
        assert!((e.get(0, 0) - Complex64::new(std::f64::consts::E, 0.0)).norm() < 1e-13);
        assert!((e.get(1, 1) + Complex64::new(1.0, 0.0)).norm() < 1e-13);
        let n = FloatMatrix::unit(3, 0, 1);
        let e = expm(&n.scale(&Complex64::new(2.5, 0.0)));
        assert!((e.get(0, 1) - Complex64::new(2.5, 0.0)).norm() < 1e-14);
        assert!((e.get(0, 0) - Complex64::new(1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn rotation_generator_large_angle() {
        // exp(t j12) is a rotation by -t in the (1,2) plane for j12 = E12 - E21.
        let t = 37.0;
        let j = FloatMatrix::j(2, 0, 1).scale(&Complex64::new(t, 0.0));
        let e = expm(&j);
        assert!((e.get(0, 0).re - t.cos()).abs() < 1e-12);
        assert!((e.get(0, 1).re - t.sin()).abs() < 1e-12);
    }

    #[test]
    fn inverse_is_exp_of_negative() {
        let a = FloatMatrix::from_fn(5, |r, c| Complex64::new((r as f64 - c as f64) * 0.3, (r * c) as f64 * 0.1));
        let prod = expm(&a).mul(&expm(&a.neg()));
        let id = FloatMatrix::identity(5);
        for r in 0..5 {
            for c in 0..5 {
                assert!((prod.get(r, c) - id.get(r, c)).norm() < 1e-12);
            }
        }
    }
}
