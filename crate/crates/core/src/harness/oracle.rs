// Copyright 2026 liedexp contributors
// SPDX-License-Identifier: Apache-2.0

//! SVD-free extremes of `|Ay|` over the unit sphere.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::linalg::halton_sphere;

/// `(min, max)` of `|Ay|` over unit `y`, found without any SVD.
///
/// A deterministic low-discrepancy sphere mesh picks the starting vectors;
/// each is then refined by power iteration on `AᵀA` (for the max) or on the
/// shifted `cI - AᵀA` (for the min). Every `refine_steps` squares the
/// iteration operator, so step `k` amounts to `2^k` power iterations.
/// Reported values are always `|Ay|` for an explicit unit `y`, hence lie in
/// `[sₙ, s₁]`.
pub fn brute_force_extremes(a: &DMatrix<f64>, mesh: usize, refine_steps: usize) -> Result<(f64, f64)> {
    if mesh < 100 {
        return Err(Error::Domain(format!("mesh must have at least 100 points, got {mesh}")));
    }
    if !a.is_square() || a.is_empty() {
        return Err(Error::Structural(
            "brute_force_extremes needs a nonempty square matrix".into(),
        ));
    }
    let n = a.ncols();
    let value = |y: &DVector<f64>| (a * y).norm();

    let mut points = halton_sphere(n, mesh);
    points.extend((0..n).map(|i| DVector::from_fn(n, |k, _| f64::from(u8::from(k == i)))));
    let (mut best_max, mut arg_max) = (f64::NEG_INFINITY, points[0].clone());
    let (mut best_min, mut arg_min) = (f64::INFINITY, points[0].clone());
    for p in &points {
        let v = value(p);
        if v > best_max {
            best_max = v;
            arg_max = p.clone();
        }
        if v < best_min {
            best_min = v;
            arg_min = p.clone();
        }
    }

    let gram = a.transpose() * a;
    let shift = gram.norm();
    let descend = DMatrix::<f64>::identity(n, n) * shift - &gram;

    let refine = |op: &DMatrix<f64>, start: &DVector<f64>, better: &dyn Fn(f64, f64) -> bool, best: &mut f64| {
        let mut power = op.clone();
        for _ in 0..refine_steps {
            let scale = power.amax();
            if scale == 0.0 {
                break;
            }
            power /= scale;
            let mut candidates: Vec<DVector<f64>> = vec![&power * start];
            // The column of largest norm covers starts orthogonal to the target.
            let widest = (0..n)
                .max_by(|&i, &j| power.column(i).norm().total_cmp(&power.column(j).norm()))
                .unwrap_or(0);
            candidates.push(power.column(widest).into_owned());
            for c in candidates {
                let norm = c.norm();
                if norm > 0.0 && norm.is_finite() {
                    let v = value(&(c / norm));
                    if better(v, *best) {
                        *best = v;
                    }
                }
            }
            power = &power * &power;
        }
    };
    refine(&gram, &arg_max, &|v, b| v > b, &mut best_max);
    refine(&descend, &arg_min, &|v, b| v < b, &mut best_min);
    Ok((best_min, best_max))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_extremes() {
        let (lo, hi) = brute_force_extremes(&DMatrix::identity(3, 3), 100, 10).unwrap();
        assert!((lo - 1.0).abs() < 1e-15 && (hi - 1.0).abs() < 1e-15);
    }

    #[test]
    fn diagonal_extremes() {
        let d = DMatrix::from_diagonal(&DVector::from_vec(vec![3.0, 1.0, 0.5]));
        let (lo, hi) = brute_force_extremes(&d, 200, 40).unwrap();
        assert!((lo - 0.5).abs() < 1e-6 && (hi - 3.0).abs() < 1e-6);
    }

    #[test]
    fn heisenberg_phi_extremes() {
        let mut m = DMatrix::identity(3, 3);
        m[(2, 1)] = -0.5;
        let (lo, hi) = brute_force_extremes(&m, 400, 50).unwrap();
        assert!((lo - 0.780776).abs() < 1e-5, "{lo}");
        assert!((hi - 1.280776).abs() < 1e-5, "{hi}");
    }

    #[test]
    fn small_mesh_rejected() {
        assert!(brute_force_extremes(&DMatrix::identity(2, 2), 10, 5).is_err());
    }
}
