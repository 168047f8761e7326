// Copyright 2026 liedexp contributors
// SPDX-License-Identifier: Apache-2.0

//! Small dense helpers shared across modules.

use nalgebra::{Complex, DMatrix, DVector};

pub type CMatrix = DMatrix<Complex<f64>>;

/// Spectral norm (largest singular value). Zero for empty matrices.
pub fn op_norm(a: &DMatrix<f64>) -> f64 {
    if a.is_empty() {
        return 0.0;
    }
    a.singular_values().iter().cloned().fold(0.0, f64::max)
}

pub fn op_norm_complex(a: &CMatrix) -> f64 {
    if a.is_empty() {
        return 0.0;
    }
    a.singular_values().iter().cloned().fold(0.0, f64::max)
}

pub fn to_complex(a: &DMatrix<f64>) -> CMatrix {
    a.map(|v| Complex::new(v, 0.0))
}

/// `a^k` by repeated multiplication (k is small in every caller).
pub fn mat_pow(a: &DMatrix<f64>, k: usize) -> DMatrix<f64> {
    let mut out = DMatrix::identity(a.nrows(), a.ncols());
    for _ in 0..k {
        out = &out * a;
    }
    out
}

fn first_primes(count: usize) -> Vec<u64> {
    let mut primes = Vec::with_capacity(count);
    let mut candidate = 2u64;
    while primes.len() < count {
        if primes
            .iter()
            .take_while(|&&p| p * p <= candidate)
            .all(|&p| candidate % p != 0)
        {
            primes.push(candidate);
        }
        candidate += 1;
    }
    primes
}

fn radical_inverse(mut index: u64, base: u64) -> f64 {
    let inv = 1.0 / base as f64;
    let mut scale = inv;
    let mut acc = 0.0;
    while index > 0 {
        acc += (index % base) as f64 * scale;
        index /= base;
        scale *= inv;
    }
    acc
}

/// Deterministic low-discrepancy points on the unit sphere of `R^dim`.
///
/// Halton points in the cube `(-1, 1)^dim`, radially projected. Points too
/// close to the origin are skipped, so exactly `count` vectors are returned.
pub fn halton_sphere(dim: usize, count: usize) -> Vec<DVector<f64>> {
    let primes = first_primes(dim.max(1));
    let mut points = Vec::with_capacity(count);
    let mut index = 1u64;
    while points.len() < count {
        let v = DVector::from_fn(dim, |i, _| 2.0 * radical_inverse(index, primes[i]) - 1.0);
        index += 1;
        let norm = v.norm();
        if norm > 1e-3 {
            points.push(v / norm);
        }
    }
    points
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn halton_points_are_unit_and_distinct() {
        let pts = halton_sphere(4, 50);
        assert_eq!(pts.len(), 50);
        for p in &pts {
            assert!((p.norm() - 1.0).abs() < 1e-14);
        }
        assert!((&pts[0] - &pts[1]).norm() > 1e-6);
    }

    #[test]
    fn radical_inverse_base_two() {
        assert_eq!(radical_inverse(1, 2), 0.5);
        assert_eq!(radical_inverse(2, 2), 0.25);
        assert_eq!(radical_inverse(3, 2), 0.75);
    }

    #[test]
    fn op_norm_of_diagonal() {
        let a = DMatrix::from_diagonal(&DVector::from_vec(vec![3.0, -5.0, 1.0]));
        assert!((op_norm(&a) - 5.0).abs() < 1e-14);
    }
}
