// Copyright 2026 liedexp contributors
// SPDX-License-Identifier: Apache-2.0

//! The function `φ(z) = (1 - e^{-z}) / z`, with `φ(0) = 1`.
//!
//! The matrix version uses scaling, a Taylor kernel on `‖B‖ ≤ 1`, and the
//! doubling relations
//!
//! ```text
//! φ(2B)    = ½ φ(B) (I + e^{-B})
//! e^{-2B}  = (e^{-B})²
//! ```
//!
//! which follow from `1 - e^{-2B} = (1 - e^{-B})(1 + e^{-B})`. No
//! eigendecomposition is involved, so defective matrices are fine.

use nalgebra::{Complex, DMatrix};

use crate::error::{Error, Result};
use crate::linalg::op_norm;

/// Below this modulus the scalar uses its Taylor series.
pub const SERIES_SWITCH: f64 = 0.1;
const MAX_TAYLOR_TERMS: usize = 25;

fn expm1_complex(z: Complex<f64>) -> Complex<f64> {
    if z.im == 0.0 {
        return Complex::new(z.re.exp_m1(), 0.0);
    }
    let half = (0.5 * z.im).sin();
    let re = z.re.exp_m1() * z.im.cos() - 2.0 * half * half;
    let im = z.re.exp() * z.im.sin();
    Complex::new(re, im)
}

/// `(1 - e^{-z}) / z` for complex `z`, equal to 1 at the origin.
pub fn phi_scalar(z: Complex<f64>) -> Complex<f64> {
    if z.norm() < SERIES_SWITCH {
        // Σ (-z)^k / (k+1)!
        let mut sum = Complex::new(0.0, 0.0);
        let mut term = Complex::new(1.0, 0.0);
        for k in 0..30 {
            let contrib = term / factorial(k + 1);
            sum += contrib;
            if contrib.norm() <= f64::EPSILON * 1e-3 * sum.norm() {
                break;
            }
            term *= -z;
        }
        sum
    } else {
        -expm1_complex(-z) / z
    }
}

/// Real-argument `φ`.
pub fn phi_real(x: f64) -> f64 {
    phi_scalar(Complex::new(x, 0.0)).re
}

/// `(e^u - 1) / u = φ(-u)`, the growth factor in the power-series norm bound.
pub fn growth_factor(u: f64) -> f64 {
    phi_real(-u)
}

/// `ln((e^u - 1) / u)` for `u ≥ 0`, finite for arbitrarily large `u`.
pub fn ln_growth_factor(u: f64) -> f64 {
    if u < 1.0 {
        growth_factor(u).ln()
    } else {
        u + (-(-u).exp()).ln_1p() - u.ln()
    }
}

fn factorial(k: usize) -> f64 {
    (1..=k).fold(1.0, |acc, i| acc * i as f64)
}

/// `φ(A)` for a real square matrix.
#[derive(Debug, Clone)]
pub struct PhiOperator {
    pub matrix: DMatrix<f64>,
    /// `e^{-A}`, produced alongside `φ(A)`.
    pub exp_neg: DMatrix<f64>,
    pub scaling_steps: u32,
    pub series_terms: usize,
}

pub fn phi_matrix(a: &DMatrix<f64>) -> Result<PhiOperator> {
    if !a.is_square() {
        return Err(Error::Structural(format!(
            "phi_matrix needs a square matrix, got {}x{}",
            a.nrows(),
            a.ncols()
        )));
    }
    let n = a.nrows();
    let norm = op_norm(a);
    let mut steps = 0u32;
    if norm > 1.0 {
        steps = norm.log2().ceil() as u32;
        while norm / 2f64.powi(steps as i32) > 1.0 {
            steps += 1;
        }
    }
    let neg_b = a * (-1.0 / 2f64.powi(steps as i32));

    let identity = DMatrix::<f64>::identity(n, n);
    let mut phi = identity.clone();
    let mut exp_neg = identity.clone();
    let mut power = identity;
    let mut terms = 1;
    let mut inv_fact = 1.0; // 1/k!
    for k in 1..MAX_TAYLOR_TERMS {
        power = &power * &neg_b;
        inv_fact /= k as f64;
        let size = power.norm() * inv_fact;
        if size == 0.0 {
            break;
        }
        exp_neg += &power * inv_fact;
        phi += &power * (inv_fact / (k + 1) as f64);
        terms = k + 1;
        if size <= f64::EPSILON * 1e-2 {
            break;
        }
    }

    for _ in 0..steps {
        let plus = &exp_neg + DMatrix::<f64>::identity(n, n);
        phi = (&phi * plus) * 0.5;
        exp_neg = &exp_neg * &exp_neg;
    }
    Ok(PhiOperator {
        matrix: phi,
        exp_neg,
        scaling_steps: steps,
        series_terms: terms,
    })
}

/// `e^A` by plain Taylor with scaling and squaring on the 1-norm.
///
/// Deliberately shares nothing with [`phi_matrix`]; it backs the quadrature
/// oracle and the defining-identity checks.
pub fn expm_taylor(a: &DMatrix<f64>) -> DMatrix<f64> {
    let n = a.nrows();
    let one_norm = (0..a.ncols())
        .map(|j| a.column(j).iter().map(|v| v.abs()).sum::<f64>())
        .fold(0.0, f64::max);
    let squarings = if one_norm > 0.5 {
        (one_norm / 0.5).log2().ceil() as i32
    } else {
        0
    };
    let b = a / 2f64.powi(squarings);
    let mut result = DMatrix::<f64>::identity(n, n);
    let mut term = DMatrix::<f64>::identity(n, n);
    for k in 1..40 {
        term = &term * &b / k as f64;
        result += &term;
        if term.amax() <= 1e-18 * result.amax() {
            break;
        }
    }
    for _ in 0..squarings {
        result = &result * &result;
    }
    result
}

/// Gauss–Legendre nodes and weights on `[0, 1]`.
pub fn gauss_legendre_unit(m: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; m];
    let mut weights = vec![0.0; m];
    for i in 0..m.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (m as f64 + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            // Three-term recurrence for P_m and its derivative.
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=m {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            let pm = if m == 0 {
                1.0
            } else if m == 1 {
                x
            } else {
                p1
            };
            let pm1 = if m == 1 { 1.0 } else { p0 };
            dp = m as f64 * (x * pm - pm1) / (x * x - 1.0);
            let dx = pm / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = 0.5 * (1.0 - x);
        nodes[m - 1 - i] = 0.5 * (1.0 + x);
        weights[i] = 0.5 * w;
        weights[m - 1 - i] = 0.5 * w;
    }
    (nodes, weights)
}

/// Independent evaluation of `φ(A) = ∫₀¹ e^{-tA} dt` by Gauss–Legendre
/// quadrature, doubling the node count until successive results agree to
/// `1e-11` relative.
pub fn phi_quadrature_oracle(a: &DMatrix<f64>) -> DMatrix<f64> {
    let n = a.nrows();
    let integrate = |m: usize| {
        let (nodes, weights) = gauss_legendre_unit(m);
        let mut acc = DMatrix::<f64>::zeros(n, n);
        for (t, w) in nodes.iter().zip(&weights) {
            acc += expm_taylor(&(a * -*t)) * *w;
        }
        acc
    };
    let mut m = 8;
    let mut prev = integrate(m);
    while m < 1024 {
        m *= 2;
        let next = integrate(m);
        let change = (&next - &prev).norm();
        prev = next;
        if change < 1e-11 * (1.0 + prev.norm()) {
            break;
        }
    }
    prev
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::DVector;
    use std::f64::consts::{LN_2, PI};

    #[test]
    fn phi_at_zero_is_one() {
        assert_eq!(phi_scalar(Complex::new(0.0, 0.0)), Complex::new(1.0, 0.0));
    }

    #[test]
    fn phi_vanishes_at_two_pi_i() {
        assert!(phi_scalar(Complex::new(0.0, 2.0 * PI)).norm() < 1e-15);
        assert!(phi_scalar(Complex::new(0.0, -4.0 * PI)).norm() < 1e-15);
    }

    #[test]
    fn phi_at_ln_two() {
        // (1 - 1/2) / ln 2
        let v = phi_real(LN_2);
        assert!((v - 0.5 / LN_2).abs() < 1e-15);
        assert!((v - 0.721348).abs() < 1e-6);
    }

    #[test]
    fn phi_continuous_across_switch() {
        for dir in [
            Complex::new(1.0, 0.0),
            Complex::new(-1.0, 0.0),
            Complex::new(0.6, 0.8),
            Complex::new(0.0, -1.0),
        ] {
            let below = phi_scalar(dir * f64::from_bits(SERIES_SWITCH.to_bits() - 1));
            let above = phi_scalar(dir * SERIES_SWITCH);
            assert!((below - above).norm() <= 1e-14 * above.norm(), "{dir}");
        }
    }

    #[test]
    fn growth_factor_log_matches_linear() {
        for u in [1e-6, 0.3, 1.0, 5.0, 40.0] {
            assert!((ln_growth_factor(u) - growth_factor(u).ln()).abs() < 1e-13 * (1.0 + u));
        }
        assert!(ln_growth_factor(2000.0).is_finite());
    }

    #[test]
    fn phi_matrix_of_zero_is_identity() {
        let p = phi_matrix(&DMatrix::zeros(4, 4)).unwrap();
        assert_eq!(p.matrix, DMatrix::identity(4, 4));
        assert_eq!(p.scaling_steps, 0);
    }

    #[test]
    fn phi_matrix_nilpotent_truncates() {
        let mut a = DMatrix::zeros(3, 3);
        a[(2, 1)] = 1.0;
        let p = phi_matrix(&a).unwrap();
        let expected = DMatrix::identity(3, 3) - &a * 0.5;
        assert!((p.matrix - expected).amax() < 1e-16);
    }

    #[test]
    fn phi_matrix_diagonal_uses_scalar() {
        for t in [0.05, 1.0, 3.7, 12.0] {
            let a = DMatrix::from_diagonal(&DVector::from_vec(vec![2.0 * t, -2.0 * t, 0.0]));
            let p = phi_matrix(&a).unwrap();
            let want = [phi_real(2.0 * t), phi_real(-2.0 * t), 1.0];
            for i in 0..3 {
                assert!((p.matrix[(i, i)] - want[i]).abs() <= 1e-13 * want[i].abs().max(1.0));
            }
            assert_eq!(p.matrix[(0, 1)], 0.0);
        }
    }

    #[test]
    fn phi_matrix_rejects_nonsquare() {
        assert!(matches!(phi_matrix(&DMatrix::zeros(2, 3)), Err(Error::Structural(_))));
    }

    #[test]
    fn gauss_legendre_integrates_polynomials() {
        let (x, w) = gauss_legendre_unit(5);
        let sum: f64 = w.iter().sum();
        assert!((sum - 1.0).abs() < 1e-15);
        // ∫₀¹ t^9 dt = 1/10, exact for 5 nodes.
        let int: f64 = x.iter().zip(&w).map(|(t, w)| w * t.powi(9)).sum();
        assert!((int - 0.1).abs() < 1e-15);
    }

    #[test]
    fn oracle_on_zero_and_nilpotent() {
        assert!((phi_quadrature_oracle(&DMatrix::zeros(3, 3)) - DMatrix::identity(3, 3)).amax() < 1e-15);
        let mut a = DMatrix::zeros(3, 3);
        a[(2, 1)] = 1.0;
        let expected = DMatrix::identity(3, 3) - &a * 0.5;
        assert!((phi_quadrature_oracle(&a) - expected).amax() < 1e-11);
    }

    #[test]
    fn expm_of_rotation_generator() {
        let a = DMatrix::from_row_slice(2, 2, &[0.0, -1.0, 1.0, 0.0]) * PI;
        let e = expm_taylor(&a);
        assert!((e + DMatrix::identity(2, 2)).amax() < 1e-13);
    }
}
