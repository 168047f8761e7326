// Copyright 2026 liedexp contributors
// SPDX-License-Identifier: Apache-2.0

//! Exact extremes of `|d exp_x(y)|` over unit `y` and the analytic bounds
//! that bracket them.
//!
//! With `t = |x|`, `x̂ = x/t` and `λ_j` the nonzero eigenvalues of `ad_{x̂}`:
//!
//! - eigenvalue bounds for diagonalizable `ad_{x̂}`:
//!   `λ̃_min/κ(P) ≤ sₙ(φ(ad_x))` and `s₁(φ(ad_x)) ≤ κ(P)·λ̃_max`, where
//!   `λ̃_{min,max}` range over `{1} ∪ {|φ(λ_j t)|}` and `P` is the unit-column
//!   eigenvector matrix;
//! - the general two-sided bound
//!   `g^{1-n} Π_j |φ(λ_j t)| ≤ |d exp_x(y)| ≤ g` with `g = (e^{δ₀t}-1)/(δ₀t)`;
//! - the sandwich `sₙ ≤ λ̃_min`, `λ̃_max ≤ s₁`;
//! - for nilpotent `ad_x` with `ad_x^p = 0`: `Q₁(t)^{1-n} ≤ sₙ`, `s₁ ≤ Q₁(t)`
//!   with `Q₁(t) = Σ_{k<p} (δ₀t)^k/(k+1)!`.

use std::collections::BTreeMap;

use nalgebra::{Complex, DMatrix, DVector};
use serde::Serialize;

use crate::algebra::LieAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{mat_pow, op_norm, to_complex, CMatrix};
use crate::matfunc::{growth_factor, ln_growth_factor, phi_matrix, phi_scalar};
use crate::spectral::{diagonalizability, eigenvalues, singular_values, DEFAULT_KAPPA_TOL};

/// Numerical thresholds, overridable from the command line.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Tolerances {
    /// Largest `κ(P)` still certified as diagonalizable.
    pub kappa_max: f64,
    /// Modulus below which an eigenvalue of `ad_{x̂}` counts as zero.
    pub nonzero_eigenvalue: f64,
    /// Relative size of `‖ad_x^k‖ / ‖ad_x‖^k` accepted as zero.
    pub nilpotent_rel: f64,
    /// Relative slack when comparing a bound with an exact extreme.
    pub bound_rel: f64,
    /// Sphere samples for the `δ₀` estimate.
    pub delta0_budget: usize,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            kappa_max: DEFAULT_KAPPA_TOL,
            nonzero_eigenvalue: 1e-9,
            nilpotent_rel: 1e-10,
            bound_rel: 1e-9,
            delta0_budget: 256,
        }
    }
}

impl Tolerances {
    pub const KEYS: [&'static str; 5] = [
        "kappa_max",
        "nonzero_eigenvalue",
        "nilpotent_rel",
        "bound_rel",
        "delta0_budget",
    ];

    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let parse = |v: &str| -> Result<f64> {
            let x: f64 = v
                .trim()
                .parse()
                .map_err(|_| Error::Domain(format!("`{v}` is not a number")))?;
            if x.is_finite() && x > 0.0 {
                Ok(x)
            } else {
                Err(Error::Domain(format!("tolerance `{key}` must be positive and finite")))
            }
        };
        match key.trim() {
            "kappa_max" => self.kappa_max = parse(value)?,
            "nonzero_eigenvalue" => self.nonzero_eigenvalue = parse(value)?,
            "nilpotent_rel" => self.nilpotent_rel = parse(value)?,
            "bound_rel" => self.bound_rel = parse(value)?,
            "delta0_budget" => {
                self.delta0_budget =
                    value.trim().parse().ok().filter(|&b: &usize| b > 0).ok_or_else(|| {
                        Error::Domain(format!("delta0_budget must be a positive integer, got `{value}`"))
                    })?
            }
            other => {
                return Err(Error::Domain(format!(
                    "unknown tolerance `{other}` (expected one of {})",
                    Self::KEYS.join(", ")
                )))
            }
        }
        Ok(())
    }

    /// Applies a list of `key=value` pairs.
    pub fn apply_overrides<'a>(&mut self, pairs: impl IntoIterator<Item = &'a str>) -> Result<()> {
        for pair in pairs {
            let (k, v) = pair
                .split_once('=')
                .ok_or_else(|| Error::Domain(format!("override `{pair}` is not key=value")))?;
            self.set(k, v)?;
        }
        Ok(())
    }
}

/// `(min, max)` of `{1} ∪ {|φ(λ_j t)|}`.
pub fn lambda_tilde_extremes(unit_eigs: &[Complex<f64>], t: f64) -> Result<(f64, f64)> {
    if !(t > 0.0) {
        return Err(Error::Domain(format!("t must be positive, got {t}")));
    }
    Ok(unit_eigs
        .iter()
        .map(|&lam| phi_scalar(lam * t).norm())
        .fold((1.0f64, 1.0f64), |(lo, hi), v| (lo.min(v), hi.max(v))))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Thm1Bounds {
    pub lower: f64,
    pub upper: f64,
    /// `1/κ(P)`.
    pub c: f64,
    /// `κ(P)`.
    pub d: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Thm2Bounds {
    pub lower: f64,
    pub lower_log: f64,
    pub upper: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NilpotencyCertificate {
    /// Step bounded by the exact lower central series of integer constants.
    Exact,
    /// `‖ad_x^k‖ ≤ tol·‖ad_x‖^k`.
    Numerical,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NilpotentBounds {
    /// Minimal `p` with `ad_x^p = 0`.
    pub p_step: usize,
    /// `Q₁(|x|)`.
    pub upper: f64,
    /// `1/Q(|x|) = Q₁(|x|)^{1-n}`.
    pub lower: f64,
    pub lower_log: f64,
    pub certificate: NilpotencyCertificate,
}

/// Minimal `p` with `ad^p = 0`, if `ad` is nilpotent.
pub fn nilpotency_step(
    alg: &LieAlgebra,
    ad: &DMatrix<f64>,
    tol: &Tolerances,
) -> Option<(usize, NilpotencyCertificate)> {
    let n = ad.nrows();
    let norm = op_norm(ad);
    if norm == 0.0 {
        return Some((1, NilpotencyCertificate::Numerical));
    }
    let numeric = (1..=n).find(|&k| op_norm(&mat_pow(ad, k)) <= tol.nilpotent_rel * norm.powi(k as i32));
    match alg.exact_nilpotency_step() {
        Some(Some(p_alg)) => Some((numeric.unwrap_or(p_alg).min(p_alg), NilpotencyCertificate::Exact)),
        _ => numeric.map(|p| (p, NilpotencyCertificate::Numerical)),
    }
}

fn q1(p: usize, t: f64, delta0: f64) -> f64 {
    let u = t * delta0;
    let mut term = 1.0; // u^k / (k+1)!
    let mut sum = 0.0;
    for k in 0..p {
        if k > 0 {
            term *= u / (k + 1) as f64;
        }
        sum += term;
    }
    sum
}

fn nilpotent_from_step(
    p_step: usize,
    n: usize,
    t: f64,
    delta0: f64,
    certificate: NilpotencyCertificate,
) -> NilpotentBounds {
    let upper = q1(p_step, t, delta0);
    let lower_log = (1.0 - n as f64) * upper.ln();
    NilpotentBounds {
        p_step,
        upper,
        lower: lower_log.exp(),
        lower_log,
        certificate,
    }
}

fn thm2_from_spectrum(nonzero_unit_eigs: &[Complex<f64>], t: f64, n: usize, delta0: f64) -> Thm2Bounds {
    let u = delta0 * t;
    if u == 0.0 {
        return Thm2Bounds {
            lower: 1.0,
            lower_log: 0.0,
            upper: 1.0,
        };
    }
    let upper = growth_factor(u);
    let log_prod: f64 = nonzero_unit_eigs
        .iter()
        .map(|&lam| phi_scalar(lam * t).norm().ln())
        .sum();
    let lower_log = (1.0 - n as f64) * ln_growth_factor(u) + log_prod;
    let prod: f64 = nonzero_unit_eigs
        .iter()
        .map(|&lam| phi_scalar(lam * t).norm())
        .product();
    let lower = upper.powf(1.0 - n as f64) * prod;
    Thm2Bounds {
        lower,
        lower_log,
        upper,
    }
}

/// `(sₙ, s₁)` of `φ(A)`.
///
/// `s₁` comes from the SVD of `φ(A)`. When `A` has eigenvalues with large
/// positive real part, `φ(A)` has entries of size `e^{|Re λ|}` and its
/// smallest singular value is lost to rounding, so `sₙ` is taken as
/// `1/s₁(φ(A)⁻¹)` with `φ(A)⁻¹ = P·diag(λ/(1-e^{-λ}))·P⁻¹` whenever that
/// route has the smaller error estimate.
pub fn exact_extremes(a: &DMatrix<f64>, kappa_tol: f64) -> Result<(f64, f64)> {
    let n = a.nrows();
    let phi = phi_matrix(a)?;
    let s = singular_values(&phi.matrix)?;
    let (direct_min, s_max) = (s[n - 1], s[0]);
    // Nonzero nilpotent matrices are defective; their φ is a polynomial.
    let norm = op_norm(a);
    let nilpotent = norm == 0.0 || op_norm(&mat_pow(a, n)) <= 1e-10 * norm.powi(n as i32);
    if nilpotent {
        return Ok((direct_min, s_max));
    }
    if let Ok(Some((inv, kappa))) = spectral_phi_inverse(a, kappa_tol) {
        let via_inverse = 1.0 / singular_values(&inv)?[0];
        // Error estimates: eps·κ²·sₙ for the inverse route, eps·s₁ directly.
        if kappa * kappa * via_inverse <= s_max {
            return Ok((via_inverse, s_max));
        }
    }
    Ok((direct_min, s_max))
}

fn spectral_phi_inverse(a: &DMatrix<f64>, kappa_tol: f64) -> Result<Option<(DMatrix<f64>, f64)>> {
    let diag = diagonalizability(a, kappa_tol)?;
    let p = match diag.eigenvectors {
        Some(p) if diag.diagonalizable => p,
        _ => return Ok(None),
    };
    let Some(p_inv) = p.clone().try_inverse() else {
        return Ok(None);
    };
    let ac = to_complex(a);
    let d = &p_inv * &ac * &p;
    let lambda: Vec<Complex<f64>> = d.diagonal().iter().cloned().collect();
    let scale = op_norm(a).max(1.0);
    let residual = (&ac * &p - &p * CMatrix::from_diagonal(&d.diagonal())).norm();
    if !(residual <= 1e-12 * scale) {
        return Ok(None);
    }
    let mut inv_diag = Vec::with_capacity(lambda.len());
    for &lam in &lambda {
        let f = phi_scalar(lam);
        if !(f.norm() > 1e-300) {
            return Ok(None);
        }
        inv_diag.push(Complex::new(1.0, 0.0) / f);
    }
    let psi = &p * CMatrix::from_diagonal(&DVector::from_vec(inv_diag)) * &p_inv;
    Ok(Some((psi.map(|z| z.re), diag.kappa)))
}

fn checked_ad(alg: &LieAlgebra, x: &DVector<f64>) -> Result<crate::algebra::AdOperator> {
    let ad = alg.ad(x)?;
    if ad.norm_x == 0.0 {
        return Err(Error::Domain("x must be nonzero (d exp at 0 is the identity)".into()));
    }
    Ok(ad)
}

/// Unit-direction spectrum: all zeros when `ad_x` is nilpotent, otherwise the
/// computed eigenvalues of `ad_{x̂}`.
fn unit_spectrum(
    alg: &LieAlgebra,
    unit: &DMatrix<f64>,
    tol: &Tolerances,
) -> Result<(Vec<Complex<f64>>, Option<(usize, NilpotencyCertificate)>)> {
    let nil = nilpotency_step(alg, unit, tol);
    let eigs = if nil.is_some() {
        vec![Complex::new(0.0, 0.0); unit.nrows()]
    } else {
        eigenvalues(unit)?
    };
    Ok((eigs, nil))
}

fn thm1_from(
    unit: &DMatrix<f64>,
    nilpotent: Option<usize>,
    lt: (f64, f64),
    tol: &Tolerances,
) -> Result<Option<Thm1Bounds>> {
    // A nonzero nilpotent operator is defective.
    if matches!(nilpotent, Some(p) if p > 1) {
        return Ok(None);
    }
    let diag = diagonalizability(unit, tol.kappa_max)?;
    if !diag.diagonalizable {
        return Ok(None);
    }
    let d = diag.kappa;
    let c = 1.0 / d;
    Ok(Some(Thm1Bounds {
        lower: c * lt.0,
        upper: d * lt.1,
        c,
        d,
    }))
}

/// Eigenvalue bounds for diagonalizable `ad_{x̂}`; `None` when not applicable.
/// `x` is in orthonormal coordinates.
pub fn thm1_bounds(alg: &LieAlgebra, x: &DVector<f64>, tol: &Tolerances) -> Result<Option<Thm1Bounds>> {
    let ad = checked_ad(alg, x)?;
    let unit = ad.unit.expect("x is nonzero");
    let (eigs, nil) = unit_spectrum(alg, &unit, tol)?;
    let nonzero: Vec<_> = eigs.into_iter().filter(|z| z.norm() > tol.nonzero_eigenvalue).collect();
    let lt = lambda_tilde_extremes(&nonzero, ad.norm_x)?;
    thm1_from(&unit, nil.map(|(p, _)| p), lt, tol)
}

/// The general two-sided bound with `δ₀ = delta0_upper`.
pub fn thm2_bounds(alg: &LieAlgebra, x: &DVector<f64>, delta0_upper: f64, tol: &Tolerances) -> Result<Thm2Bounds> {
    let ad = checked_ad(alg, x)?;
    if alg.is_abelian() {
        return Ok(Thm2Bounds {
            lower: 1.0,
            lower_log: 0.0,
            upper: 1.0,
        });
    }
    if !(delta0_upper > 0.0) {
        return Err(Error::Domain(
            "delta0_upper must be positive for a non-abelian algebra".into(),
        ));
    }
    let unit = ad.unit.expect("x is nonzero");
    let (eigs, _) = unit_spectrum(alg, &unit, tol)?;
    let nonzero: Vec<_> = eigs.into_iter().filter(|z| z.norm() > tol.nonzero_eigenvalue).collect();
    Ok(thm2_from_spectrum(&nonzero, ad.norm_x, alg.dim(), delta0_upper))
}

/// Polynomial bounds for nilpotent `ad_x`; `None` when `ad_x` is not nilpotent.
pub fn nilpotent_bounds(
    alg: &LieAlgebra,
    x: &DVector<f64>,
    delta0_upper: f64,
    tol: &Tolerances,
) -> Result<Option<NilpotentBounds>> {
    let ad = checked_ad(alg, x)?;
    Ok(nilpotency_step(alg, &ad.matrix, tol)
        .map(|(p, cert)| nilpotent_from_step(p, alg.dim(), ad.norm_x, delta0_upper, cert)))
}

/// Every quantity for a single `x`.
#[derive(Debug, Clone, Serialize)]
pub struct BoundReport {
    pub algebra: String,
    /// Orthonormal coordinates of `x`.
    pub x: Vec<f64>,
    pub x_norm: f64,
    pub p_nonzero: usize,
    pub exact_min: f64,
    pub exact_max: f64,
    pub lambda_tilde_min: f64,
    pub lambda_tilde_max: f64,
    pub diagonalizable: bool,
    /// `κ(P)` of `ad_{x̂}`; `null` in JSON when defective.
    pub kappa: f64,
    pub thm1_c: Option<f64>,
    pub thm1_d: Option<f64>,
    pub thm1_lower: Option<f64>,
    pub thm1_upper: Option<f64>,
    pub delta0_upper: f64,
    pub thm2_lower: f64,
    pub thm2_lower_log: f64,
    pub thm2_upper: f64,
    pub nilp_step: Option<usize>,
    pub nilp_certificate: Option<NilpotencyCertificate>,
    pub nilp_lower: Option<f64>,
    pub nilp_lower_log: Option<f64>,
    pub nilp_upper: Option<f64>,
}

impl BoundReport {
    /// `x` in orthonormal coordinates, nonzero.
    pub fn compute(alg: &LieAlgebra, x: &DVector<f64>, delta0_upper: f64, tol: &Tolerances) -> Result<Self> {
        let ad = checked_ad(alg, x)?;
        let t = ad.norm_x;
        let n = alg.dim();
        let unit = ad.unit.clone().expect("x is nonzero");
        let (eigs, nil) = unit_spectrum(alg, &unit, tol)?;
        let nonzero: Vec<_> = eigs.into_iter().filter(|z| z.norm() > tol.nonzero_eigenvalue).collect();
        let (lt_min, lt_max) = lambda_tilde_extremes(&nonzero, t)?;

        let (exact_min, exact_max) = exact_extremes(&ad.matrix, tol.kappa_max)?;

        let diag_kappa = if matches!(nil, Some((p, _)) if p > 1) {
            f64::INFINITY
        } else {
            diagonalizability(&unit, tol.kappa_max)?.kappa
        };
        let thm1 = thm1_from(&unit, nil.map(|(p, _)| p), (lt_min, lt_max), tol)?;

        let thm2 = if alg.is_abelian() {
            Thm2Bounds {
                lower: 1.0,
                lower_log: 0.0,
                upper: 1.0,
            }
        } else {
            if !(delta0_upper > 0.0) {
                return Err(Error::Domain(
                    "delta0_upper must be positive for a non-abelian algebra".into(),
                ));
            }
            thm2_from_spectrum(&nonzero, t, n, delta0_upper)
        };
        // The step of ad_x equals that of ad_{x̂}.
        let nilp = nil.map(|(p, cert)| nilpotent_from_step(p, n, t, delta0_upper, cert));

        Ok(Self {
            algebra: alg.name().to_string(),
            x: x.iter().cloned().collect(),
            x_norm: t,
            p_nonzero: nonzero.len(),
            exact_min,
            exact_max,
            lambda_tilde_min: lt_min,
            lambda_tilde_max: lt_max,
            diagonalizable: thm1.is_some(),
            kappa: diag_kappa,
            thm1_c: thm1.map(|b| b.c),
            thm1_d: thm1.map(|b| b.d),
            thm1_lower: thm1.map(|b| b.lower),
            thm1_upper: thm1.map(|b| b.upper),
            delta0_upper,
            thm2_lower: thm2.lower,
            thm2_lower_log: thm2.lower_log,
            thm2_upper: thm2.upper,
            nilp_step: nilp.map(|b| b.p_step),
            nilp_certificate: nilp.map(|b| b.certificate),
            nilp_lower: nilp.map(|b| b.lower),
            nilp_lower_log: nilp.map(|b| b.lower_log),
            nilp_upper: nilp.map(|b| b.upper),
        })
    }

    /// Signed residual of every applicable inequality; positive means the
    /// inequality is violated by that (relative or log-domain) amount.
    pub fn residuals(&self) -> BTreeMap<&'static str, f64> {
        let mut out = BTreeMap::new();
        let ln_min = self.exact_min.ln();
        if let (Some(lo), Some(hi)) = (self.thm1_lower, self.thm1_upper) {
            out.insert("thm1_lower", (lo - self.exact_min) / (1.0 + self.exact_min));
            out.insert("thm1_upper", (self.exact_max - hi) / (1.0 + self.exact_max));
        }
        out.insert("thm2_lower_log", self.thm2_lower_log - ln_min);
        out.insert("thm2_upper", self.exact_max / self.thm2_upper - 1.0);
        out.insert(
            "eq5_min",
            (self.exact_min - self.lambda_tilde_min) / (1.0 + self.exact_min),
        );
        out.insert(
            "eq5_max",
            (self.lambda_tilde_max - self.exact_max) / (1.0 + self.exact_max),
        );
        if let (Some(lo), Some(hi)) = (self.nilp_lower_log, self.nilp_upper) {
            out.insert("nilp_lower_log", lo - ln_min);
            out.insert("nilp_upper", self.exact_max.ln() - hi.ln());
        }
        out
    }

    /// Names of inequalities whose residual exceeds `tol`.
    pub fn violations(&self, tol: f64) -> Vec<&'static str> {
        self.residuals()
            .into_iter()
            .filter(|(_, r)| !(*r <= tol))
            .map(|(k, _)| k)
            .collect()
    }
}

/// Decay of `t·sₙ(φ(t·ad_{x̂}))` along a ray.
#[derive(Debug, Clone, Serialize)]
pub struct CorollaryDecay {
    pub t: Vec<f64>,
    /// `t·sₙ` at each grid point.
    pub scaled_min: Vec<f64>,
    pub running_min: Vec<f64>,
    pub min_scaled: f64,
    pub witness_t: f64,
    /// Grid points where some `|1 - e^{-λ_j t}|` vanishes, so the operator
    /// is singular there.
    pub singular_at: Vec<f64>,
    /// `κ(P)⁻¹·min{1, min_j |1 - e^{-Re λ_j}|/|λ_j|}`, a valid floor for
    /// every `t ≥ 1`; absent when some nonzero `λ_j` is purely imaginary.
    pub uniform_constant: Option<f64>,
    pub kappa: f64,
}

/// Evaluates the ray `t ↦ t·x̂` on a grid of `t ≥ 1`. `None` when `ad_{x̂}`
/// is not certified diagonalizable.
pub fn corollary_decay(
    alg: &LieAlgebra,
    x_hat: &DVector<f64>,
    t_grid: &[f64],
    tol: &Tolerances,
) -> Result<Option<CorollaryDecay>> {
    if t_grid.is_empty() {
        return Err(Error::Domain("t grid must be nonempty".into()));
    }
    if t_grid.iter().any(|&t| !(t >= 1.0) || !t.is_finite()) || t_grid.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::Domain("t grid must be sorted with every t ≥ 1".into()));
    }
    let ad = checked_ad(alg, x_hat)?;
    let unit = ad.unit.expect("x is nonzero");
    let x_hat = x_hat / ad.norm_x;
    let (eigs, nil) = unit_spectrum(alg, &unit, tol)?;
    if matches!(nil, Some((p, _)) if p > 1) {
        return Ok(None);
    }
    let diag = diagonalizability(&unit, tol.kappa_max)?;
    if !diag.diagonalizable {
        return Ok(None);
    }
    let nonzero: Vec<_> = eigs.into_iter().filter(|z| z.norm() > tol.nonzero_eigenvalue).collect();

    let uniform_constant = nonzero.iter().all(|z| z.re.abs() > tol.nonzero_eigenvalue).then(|| {
        let worst = nonzero
            .iter()
            .map(|z| (-z.re).exp_m1().abs() / z.norm())
            .fold(1.0f64, f64::min);
        worst / diag.kappa
    });

    let mut scaled_min = Vec::with_capacity(t_grid.len());
    let mut running_min = Vec::with_capacity(t_grid.len());
    let mut singular_at = Vec::new();
    let mut best = (f64::INFINITY, t_grid[0]);
    for &t in t_grid {
        let ad_t = alg.ad(&(&x_hat * t))?;
        let value = t * exact_extremes(&ad_t.matrix, tol.kappa_max)?.0;
        if nonzero
            .iter()
            .any(|&lam| (Complex::new(1.0, 0.0) - (-lam * t).exp()).norm() <= 1e-9)
        {
            singular_at.push(t);
        }
        if value < best.0 {
            best = (value, t);
        }
        scaled_min.push(value);
        running_min.push(best.0);
    }
    Ok(Some(CorollaryDecay {
        t: t_grid.to_vec(),
        scaled_min,
        running_min,
        min_scaled: best.0,
        witness_t: best.1,
        singular_at,
        uniform_constant,
        kappa: diag.kappa,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::catalog::by_id;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    fn e(n: usize, i: usize) -> DVector<f64> {
        DVector::from_fn(n, |k, _| f64::from(u8::from(k == i)))
    }

    #[test]
    fn lambda_tilde_cases() {
        assert_eq!(lambda_tilde_extremes(&[], 3.0).unwrap(), (1.0, 1.0));
        let (lo, hi) = lambda_tilde_extremes(&[c(2.0, 0.0), c(-2.0, 0.0)], 1.0).unwrap();
        assert!((lo - 0.432332).abs() < 1e-6 && (hi - 3.194528).abs() < 1e-6);
        let (lo, hi) = lambda_tilde_extremes(&[c(0.0, 2.0 * PI), c(0.0, -2.0 * PI)], 1.0).unwrap();
        assert!(lo < 1e-15);
        assert_eq!(hi, 1.0);
        assert!(lambda_tilde_extremes(&[], 0.0).is_err());
    }

    #[test]
    fn eigenvalue_bounds_sl2_cartan() {
        let alg = by_id("sl2").unwrap().algebra;
        let b = thm1_bounds(&alg, &e(3, 0), &Tolerances::default()).unwrap().unwrap();
        assert!((b.c - 1.0).abs() < 1e-12 && (b.d - 1.0).abs() < 1e-12);
        assert!((b.lower - 0.432332).abs() < 1e-6);
        assert!((b.upper - 3.194528).abs() < 1e-6);
    }

    #[test]
    fn eigenvalue_bounds_not_applicable_on_heisenberg() {
        let alg = by_id("heis3").unwrap().algebra;
        assert!(thm1_bounds(&alg, &e(3, 0), &Tolerances::default()).unwrap().is_none());
    }

    #[test]
    fn zero_x_is_rejected() {
        let alg = by_id("sl2").unwrap().algebra;
        let z = DVector::zeros(3);
        let tol = Tolerances::default();
        assert!(matches!(thm1_bounds(&alg, &z, &tol), Err(Error::Domain(_))));
        assert!(matches!(thm2_bounds(&alg, &z, 1.0, &tol), Err(Error::Domain(_))));
        assert!(matches!(nilpotent_bounds(&alg, &z, 1.0, &tol), Err(Error::Domain(_))));
        assert!(matches!(
            BoundReport::compute(&alg, &z, 1.0, &tol),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn smallest_singular_value_survives_large_real_spectrum() {
        // Reference values from an 80-digit series evaluation.
        let alg = by_id("sl2").unwrap().algebra;
        let x_hat = DVector::from_vec(vec![0.9746390798678892, -0.16379974950646897, -0.1524739520570389]);
        for (t, s_min, s_max) in [
            (1.0, 0.43544014300991818, 3.1461775823321782),
            (24.0, 0.02102172559186527, 8.0944820651861126e18),
            (50.0, 0.010089609845514134, 7.7175947895974765e40),
        ] {
            let ad = alg.ad(&(&x_hat * t)).unwrap();
            let (lo, hi) = exact_extremes(&ad.matrix, DEFAULT_KAPPA_TOL).unwrap();
            assert!((lo - s_min).abs() <= 1e-10 * s_min, "t={t}: {lo}");
            assert!((hi - s_max).abs() <= 1e-10 * s_max, "t={t}: {hi}");
        }
    }

    #[test]
    fn delta_zero_bounds_heisenberg_values() {
        let alg = by_id("heis3").unwrap().algebra;
        let d0 = alg.delta_zero_certificate();
        assert!((d0 - 2f64.sqrt()).abs() < 1e-15);
        let b = thm2_bounds(&alg, &e(3, 0), d0, &Tolerances::default()).unwrap();
        let g = (2f64.sqrt().exp() - 1.0) / 2f64.sqrt();
        assert!((b.upper - g).abs() < 1e-14);
        assert!((b.upper - 2.201400).abs() < 1e-6);
        assert!((b.lower - g.powi(-2)).abs() < 1e-14);
        assert!((b.lower - 0.206349).abs() < 1e-6);
        assert!((b.lower_log - b.lower.ln()).abs() < 1e-13);
    }

    #[test]
    fn delta_zero_bounds_abelian_is_one() {
        let alg = by_id("abelian3").unwrap().algebra;
        let b = thm2_bounds(
            &alg,
            &DVector::from_vec(vec![0.3, 0.4, 0.0]),
            0.0,
            &Tolerances::default(),
        )
        .unwrap();
        assert_eq!((b.lower, b.lower_log, b.upper), (1.0, 0.0, 1.0));
    }

    #[test]
    fn delta_zero_bounds_require_positive_delta0_when_nonabelian() {
        let alg = by_id("sl2").unwrap().algebra;
        assert!(thm2_bounds(&alg, &e(3, 0), 0.0, &Tolerances::default()).is_err());
    }

    #[test]
    fn nilpotent_heisenberg_values() {
        let alg = by_id("heis3").unwrap().algebra;
        let b = nilpotent_bounds(&alg, &e(3, 0), 2f64.sqrt(), &Tolerances::default())
            .unwrap()
            .unwrap();
        assert_eq!(b.p_step, 2);
        assert_eq!(b.certificate, NilpotencyCertificate::Exact);
        let q1 = 1.0 + 2f64.sqrt() / 2.0;
        assert!((b.upper - q1).abs() < 1e-15 && (b.upper - 1.7071).abs() < 1e-4);
        assert!((b.lower - q1.powi(-2)).abs() < 1e-14 && (b.lower - 0.3431).abs() < 1e-4);
    }

    #[test]
    fn nilpotent_abelian_and_not_applicable() {
        let ab = by_id("abelian2").unwrap().algebra;
        let b = nilpotent_bounds(&ab, &e(2, 1), 0.0, &Tolerances::default())
            .unwrap()
            .unwrap();
        assert_eq!((b.p_step, b.upper, b.lower), (1, 1.0, 1.0));
        let sl2 = by_id("sl2").unwrap().algebra;
        assert!(nilpotent_bounds(&sl2, &e(3, 0), 1.0, &Tolerances::default())
            .unwrap()
            .is_none());
        // E is ad-nilpotent in sl2 even though sl2 is not nilpotent.
        let b = nilpotent_bounds(&sl2, &e(3, 1), 1.0, &Tolerances::default())
            .unwrap()
            .unwrap();
        assert_eq!(b.p_step, 3);
        assert_eq!(b.certificate, NilpotencyCertificate::Numerical);
    }

    #[test]
    fn n4_chain_element_has_step_three() {
        let entry = by_id("n4").unwrap();
        let alg = entry.algebra;
        // Basis order E12, E13, E14, E23, E24, E34.
        let x = DVector::from_vec(vec![1.0, 0.0, 0.0, 1.0, 0.0, 1.0]);
        let d0 = alg.delta_zero_certificate();
        let r = BoundReport::compute(&alg, &x, d0, &Tolerances::default()).unwrap();
        assert_eq!(r.nilp_step, Some(3));
        assert!(r.nilp_lower.unwrap() <= r.exact_min && r.exact_max <= r.nilp_upper.unwrap());
        assert!(r.violations(1e-9).is_empty());
    }

    #[test]
    fn report_heisenberg_golden() {
        let alg = by_id("heis3").unwrap().algebra;
        let d0 = alg.delta_zero_certificate();
        let r = BoundReport::compute(&alg, &e(3, 0), d0, &Tolerances::default()).unwrap();
        assert!((r.exact_max - 1.280776).abs() < 1e-6);
        assert!((r.exact_min - 0.780776).abs() < 1e-6);
        assert!(r.thm1_lower.is_none() && r.nilp_upper.is_some());
        assert_eq!(r.p_nonzero, 0);
        assert!(r.violations(1e-9).is_empty(), "{:?}", r.residuals());
    }

    #[test]
    fn report_so3_is_tight() {
        let alg = by_id("so3").unwrap().algebra;
        let x = DVector::from_vec(vec![0.3, -1.1, 0.8]);
        let r = BoundReport::compute(&alg, &x, alg.delta_zero_certificate(), &Tolerances::default()).unwrap();
        assert!((r.thm1_c.unwrap() - 1.0).abs() < 1e-8 && (r.thm1_d.unwrap() - 1.0).abs() < 1e-8);
        assert!((r.exact_max - r.lambda_tilde_max).abs() < 1e-12);
        assert!((r.exact_min - r.lambda_tilde_min).abs() < 1e-12);
        assert_eq!(r.p_nonzero, 2);
    }

    #[test]
    fn ray_decay_sl2_cartan() {
        let alg = by_id("sl2").unwrap().algebra;
        let grid: Vec<f64> = (1..=50).map(f64::from).collect();
        let d = corollary_decay(&alg, &e(3, 0), &grid, &Tolerances::default())
            .unwrap()
            .unwrap();
        let floor = (1.0 - (-2.0f64).exp()) / 2.0;
        assert!((d.min_scaled - floor).abs() < 1e-12);
        assert_eq!(d.witness_t, 1.0);
        assert!((d.uniform_constant.unwrap() - floor).abs() < 1e-12);
        assert!(d.singular_at.is_empty());
    }

    #[test]
    fn ray_decay_abelian() {
        let alg = by_id("abelian2").unwrap().algebra;
        let d = corollary_decay(&alg, &e(2, 0), &[1.0, 2.0, 3.0], &Tolerances::default())
            .unwrap()
            .unwrap();
        assert!((d.min_scaled - 1.0).abs() < 1e-15);
        assert_eq!(d.witness_t, 1.0);
    }

    #[test]
    fn ray_decay_resonance_reported() {
        let alg = by_id("so3").unwrap().algebra;
        let grid = [1.0, 2.0 * PI, 7.0];
        let d = corollary_decay(&alg, &e(3, 2), &grid, &Tolerances::default())
            .unwrap()
            .unwrap();
        assert_eq!(d.singular_at, vec![2.0 * PI]);
        assert!(d.uniform_constant.is_none());
        assert!(d.min_scaled < 1e-12);
    }

    #[test]
    fn ray_decay_defective_not_applicable() {
        let alg = by_id("heis3").unwrap().algebra;
        assert!(corollary_decay(&alg, &e(3, 0), &[1.0, 2.0], &Tolerances::default())
            .unwrap()
            .is_none());
        assert!(corollary_decay(&alg, &e(3, 0), &[0.5], &Tolerances::default()).is_err());
    }

    #[test]
    fn tolerance_overrides() {
        let mut t = Tolerances::default();
        t.apply_overrides(["kappa_max=1e6", "delta0_budget=32"]).unwrap();
        assert_eq!(t.kappa_max, 1e6);
        assert_eq!(t.delta0_budget, 32);
        assert!(t.apply_overrides(["nope=1"]).is_err());
        assert!(t.apply_overrides(["bound_rel"]).is_err());
        assert!(t.apply_overrides(["bound_rel=-1"]).is_err());
    }
}
