// Copyright 2026 liedexp contributors
// SPDX-License-Identifier: Apache-2.0

//! Eigenvalues, singular values and eigenbasis conditioning for small dense
//! real matrices, plus runtime checks of the classical relations between
//! them (Weyl's product inequality, the determinant identity, the minimax
//! characterisation of the extreme singular values).

use nalgebra::{Complex, DMatrix, DVector};
use rand::Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{op_norm, to_complex, CMatrix};

const SOLVER_EPS: f64 = f64::EPSILON;
const SOLVER_MAX_ITER: usize = 10_000;

/// Default ceiling on `κ(P)` for a matrix to count as diagonalizable.
pub const DEFAULT_KAPPA_TOL: f64 = 1e8;

/// Orders eigenvalues by non-increasing modulus, then descending real part,
/// then descending imaginary part.
pub fn sort_eigenvalues(eigs: &mut [Complex<f64>]) {
    eigs.sort_by(|a, b| {
        b.norm()
            .total_cmp(&a.norm())
            .then(b.re.total_cmp(&a.re))
            .then(b.im.total_cmp(&a.im))
    });
}

pub fn eigenvalues(a: &DMatrix<f64>) -> Result<Vec<Complex<f64>>> {
    if !a.is_square() {
        return Err(Error::Structural(format!(
            "eigenvalues need a square matrix, got {}x{}",
            a.nrows(),
            a.ncols()
        )));
    }
    if a.is_empty() {
        return Ok(Vec::new());
    }
    if a.iter().any(|v| !v.is_finite()) {
        return Err(Error::Numerical("matrix has non-finite entries".into()));
    }
    let schur = a.clone().try_schur(SOLVER_EPS, SOLVER_MAX_ITER).ok_or_else(|| {
        Error::Numerical(format!(
            "Schur iteration did not converge in {SOLVER_MAX_ITER} sweeps (n = {}, ‖A‖_F = {:e})",
            a.nrows(),
            a.norm()
        ))
    })?;
    let mut eigs: Vec<Complex<f64>> = schur.complex_eigenvalues().iter().cloned().collect();
    sort_eigenvalues(&mut eigs);
    Ok(eigs)
}

/// Singular values in non-increasing order.
pub fn singular_values(a: &DMatrix<f64>) -> Result<Vec<f64>> {
    if !a.is_square() {
        return Err(Error::Structural(format!(
            "singular values need a square matrix, got {}x{}",
            a.nrows(),
            a.ncols()
        )));
    }
    if a.iter().any(|v| !v.is_finite()) {
        return Err(Error::Numerical("matrix has non-finite entries".into()));
    }
    let svd = a
        .clone()
        .try_svd(false, false, SOLVER_EPS, SOLVER_MAX_ITER)
        .ok_or_else(|| Error::Numerical(format!("SVD did not converge (n = {})", a.nrows())))?;
    let mut s: Vec<f64> = svd.singular_values.iter().cloned().collect();
    s.sort_by(|x, y| y.total_cmp(x));
    Ok(s)
}

/// Result of a diagonalizability test.
#[derive(Debug, Clone)]
pub struct Diagonalization {
    pub diagonalizable: bool,
    /// Unit-norm eigenvector columns, in the order of [`eigenvalues`].
    pub eigenvectors: Option<CMatrix>,
    /// `κ(P) = s₁(P)/sₙ(P)`; `+∞` for a defective matrix.
    pub kappa: f64,
}

/// Builds an eigenvector matrix and certifies diagonalizability through its
/// condition number.
///
/// Eigenvalues closer than `1e-6·max(1, ‖A‖)` are grouped; a group of size
/// `m` must have an `m`-dimensional numerical kernel of `A - μI`
/// (singular values below `1e-8·max(1, ‖A‖)`), otherwise the matrix is
/// reported defective.
pub fn diagonalizability(a: &DMatrix<f64>, kappa_tol: f64) -> Result<Diagonalization> {
    let eigs = eigenvalues(a)?;
    let n = a.nrows();
    if n == 0 {
        return Ok(Diagonalization {
            diagonalizable: true,
            eigenvectors: Some(CMatrix::zeros(0, 0)),
            kappa: 1.0,
        });
    }
    let scale = op_norm(a).max(1.0);
    let radius = 1e-6 * scale;
    let kernel_tol = 1e-8 * scale;
    let ac = to_complex(a);

    let mut assigned = vec![false; n];
    let mut columns: Vec<(usize, DVector<Complex<f64>>)> = Vec::with_capacity(n);
    for start in 0..n {
        if assigned[start] {
            continue;
        }
        let members: Vec<usize> = (start..n)
            .filter(|&j| !assigned[j] && (eigs[j] - eigs[start]).norm() <= radius)
            .collect();
        for &j in &members {
            assigned[j] = true;
        }
        let mu = members.iter().map(|&j| eigs[j]).sum::<Complex<f64>>() / members.len() as f64;
        let shifted = &ac - CMatrix::identity(n, n) * mu;
        let svd = shifted
            .try_svd(false, true, SOLVER_EPS, SOLVER_MAX_ITER)
            .ok_or_else(|| Error::Numerical("SVD of shifted matrix did not converge".into()))?;
        let v_t = svd.v_t.expect("requested V");
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&x, &y| svd.singular_values[x].total_cmp(&svd.singular_values[y]));
        let m = members.len();
        if m > 1 {
            let nullity = order.iter().filter(|&&i| svd.singular_values[i] <= kernel_tol).count();
            if nullity < m {
                return Ok(Diagonalization {
                    diagonalizable: false,
                    eigenvectors: None,
                    kappa: f64::INFINITY,
                });
            }
        }
        for (&slot, &idx) in members.iter().zip(order.iter()) {
            let v: DVector<Complex<f64>> = v_t.row(idx).adjoint();
            columns.push((slot, v.normalize()));
        }
    }
    columns.sort_by_key(|(slot, _)| *slot);
    let p = CMatrix::from_columns(&columns.into_iter().map(|(_, v)| v).collect::<Vec<_>>());
    let s = p.singular_values();
    let s_max = s.iter().cloned().fold(0.0, f64::max);
    let s_min = s.iter().cloned().fold(f64::INFINITY, f64::min);
    let kappa = if s_min > 0.0 { s_max / s_min } else { f64::INFINITY };
    let diagonalizable = kappa.is_finite() && kappa <= kappa_tol;
    Ok(Diagonalization {
        diagonalizable,
        eigenvectors: Some(p),
        kappa,
    })
}

/// Spectral data of one operator.
#[derive(Debug, Clone, Serialize)]
pub struct SpectralSummary {
    #[serde(serialize_with = "serialize_complex_list")]
    pub eigenvalues: Vec<Complex<f64>>,
    pub singular_values: Vec<f64>,
    pub eigvec_condition: f64,
    pub diagonalizable: bool,
}

fn serialize_complex_list<S: serde::Serializer>(v: &[Complex<f64>], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for z in v {
        seq.serialize_element(&[z.re, z.im])?;
    }
    seq.end()
}

impl SpectralSummary {
    pub fn of(a: &DMatrix<f64>, kappa_tol: f64) -> Result<Self> {
        let eigenvalues = eigenvalues(a)?;
        let singular_values = singular_values(a)?;
        let diag = diagonalizability(a, kappa_tol)?;
        Ok(Self {
            eigenvalues,
            singular_values,
            eigvec_condition: diag.kappa,
            diagonalizable: diag.diagonalizable,
        })
    }
}

/// Residuals of the eigenvalue/singular-value relations for one matrix.
#[derive(Debug, Clone, Serialize)]
pub struct WeylCheck {
    /// `max_r (Π_{k≤r}|λ_k| - Π_{k≤r} s_k) / Π_{k≤r} s_k`.
    pub weyl_worst: f64,
    /// `|Π s_k - |det A|| / |det A|` (absolute when `det A = 0`).
    pub det_singular_residual: f64,
    /// `|Π |λ_k| - |det A|| / |det A|`.
    pub det_eigen_residual: f64,
    /// `|λ₁| - s₁`.
    pub top_residual: f64,
    /// `sₙ - |λₙ|`.
    pub bottom_residual: f64,
}

impl WeylCheck {
    pub fn evaluate(a: &DMatrix<f64>) -> Result<Self> {
        let eigs = eigenvalues(a)?;
        let s = singular_values(a)?;
        let det = a.clone().determinant().abs();
        Ok(Self::from_parts(&eigs, &s, det))
    }

    pub fn from_parts(eigs: &[Complex<f64>], s: &[f64], abs_det: f64) -> Self {
        let n = s.len();
        let mut weyl_worst = f64::NEG_INFINITY;
        let (mut pe, mut ps) = (1.0, 1.0);
        let floor = f64::MIN_POSITIVE;
        for r in 0..n {
            pe *= eigs[r].norm();
            ps *= s[r];
            let rel = (pe - ps) / ps.max(floor);
            weyl_worst = weyl_worst.max(rel);
        }
        let rel_to_det = |v: f64| {
            if abs_det > 0.0 {
                (v - abs_det).abs() / abs_det
            } else {
                v.abs()
            }
        };
        Self {
            weyl_worst: if n == 0 { 0.0 } else { weyl_worst },
            det_singular_residual: rel_to_det(ps),
            det_eigen_residual: rel_to_det(pe),
            top_residual: if n == 0 { 0.0 } else { eigs[0].norm() - s[0] },
            bottom_residual: if n == 0 { 0.0 } else { s[n - 1] - eigs[n - 1].norm() },
        }
    }

    pub fn holds(&self) -> bool {
        self.weyl_worst <= 1e-9
            && self.det_singular_residual <= 1e-9
            && self.det_eigen_residual <= 1e-9
            && self.top_residual <= 1e-10
            && self.bottom_residual <= 1e-10
    }
}

pub fn is_normal(a: &DMatrix<f64>) -> bool {
    let at = a.transpose();
    let comm = &at * a - a * &at;
    comm.amax() <= 1e-12 * a.norm_squared().max(f64::MIN_POSITIVE)
}

/// Greedy nearest-neighbour matching of two multisets of complex numbers.
///
/// Returns the largest matched distance, or `None` if the sizes differ.
pub fn greedy_match_distance(a: &[Complex<f64>], b: &[Complex<f64>]) -> Option<f64> {
    if a.len() != b.len() {
        return None;
    }
    let mut used = vec![false; b.len()];
    let mut worst = 0.0f64;
    for za in a {
        let (idx, dist) = b
            .iter()
            .enumerate()
            .filter(|(i, _)| !used[*i])
            .map(|(i, zb)| (i, (za - zb).norm()))
            .fold(
                (usize::MAX, f64::INFINITY),
                |acc, cur| if cur.1 < acc.1 { cur } else { acc },
            );
        used[idx] = true;
        worst = worst.max(dist);
    }
    Some(worst)
}

/// Sampled check of `sₙ ≤ |Ay| ≤ s₁` over unit `y`.
#[derive(Debug, Clone, Serialize)]
pub struct MinimaxReport {
    pub s_max: f64,
    pub s_min: f64,
    pub sampled_max: f64,
    pub sampled_min: f64,
    /// Best value found near the top right singular vector.
    pub refined_max: f64,
    /// Best value found near the bottom right singular vector.
    pub refined_min: f64,
    pub samples: usize,
    /// Samples that left `[sₙ - 1e-10, s₁ + 1e-10]`.
    pub out_of_range: usize,
    pub worst_excess: f64,
}

impl MinimaxReport {
    pub fn holds(&self) -> bool {
        let tol = 1e-9 * (1.0 + self.s_max);
        self.out_of_range == 0
            && (self.refined_max - self.s_max).abs() <= tol
            && (self.refined_min - self.s_min).abs() <= tol
    }
}

pub fn minimax_check<R: Rng + ?Sized>(a: &DMatrix<f64>, sample_budget: usize, rng: &mut R) -> Result<MinimaxReport> {
    if !a.is_square() || a.is_empty() {
        return Err(Error::Structural("minimax_check needs a nonempty square matrix".into()));
    }
    if sample_budget < 100 {
        return Err(Error::Domain(format!(
            "minimax_check needs at least 100 samples, got {sample_budget}"
        )));
    }
    let n = a.nrows();
    let svd = a
        .clone()
        .try_svd(false, true, SOLVER_EPS, SOLVER_MAX_ITER)
        .ok_or_else(|| Error::Numerical("SVD did not converge".into()))?;
    let v_t = svd.v_t.expect("requested V");
    let imax = svd.singular_values.imax();
    let imin = svd.singular_values.imin();
    let s_max = svd.singular_values[imax];
    let s_min = svd.singular_values[imin];
    let lo = s_min - 1e-10;
    let hi = s_max + 1e-10;

    let mut out_of_range = 0;
    let mut worst_excess = f64::NEG_INFINITY;
    let mut sampled_max = f64::NEG_INFINITY;
    let mut sampled_min = f64::INFINITY;
    let mut record = |value: f64| {
        let excess = (value - hi).max(lo - value);
        worst_excess = worst_excess.max(excess);
        if excess > 0.0 {
            out_of_range += 1;
        }
    };

    let random_unit = |rng: &mut R| loop {
        let v = DVector::from_fn(n, |_, _| rng.sample::<f64, _>(StandardNormal));
        let norm = v.norm();
        if norm > 1e-12 {
            return v / norm;
        }
    };

    let uniform = sample_budget * 3 / 4;
    for _ in 0..uniform {
        let y = random_unit(rng);
        let value = (a * &y).norm();
        sampled_max = sampled_max.max(value);
        sampled_min = sampled_min.min(value);
        record(value);
    }

    let top = v_t.row(imax).transpose();
    let bottom = v_t.row(imin).transpose();
    let mut refined_max = (a * &top).norm();
    let mut refined_min = (a * &bottom).norm();
    record(refined_max);
    record(refined_min);
    let local = sample_budget - uniform;
    for i in 0..local {
        let radius = 1e-3 * 0.5f64.powi((i % 8) as i32);
        let center = if i % 2 == 0 { &top } else { &bottom };
        let y = (center + random_unit(rng) * radius).normalize();
        let value = (a * &y).norm();
        record(value);
        sampled_max = sampled_max.max(value);
        sampled_min = sampled_min.min(value);
        if i % 2 == 0 {
            refined_max = refined_max.max(value);
        } else {
            refined_min = refined_min.min(value);
        }
    }

    Ok(MinimaxReport {
        s_max,
        s_min,
        sampled_max,
        sampled_min,
        refined_max,
        refined_min,
        samples: sample_budget,
        out_of_range,
        worst_excess,
    })
}
