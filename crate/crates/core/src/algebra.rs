// Copyright 2026 liedexp contributors
// SPDX-License-Identifier: Apache-2.0

//! Real Lie algebras given by structure constants and an inner product.
//!
//! All numerical work happens in orthonormal coordinates. With the Gram
//! matrix factored as `G = L Lᵀ`, a vector with input coordinates `x` has
//! orthonormal coordinates `z = Lᵀ x`, and the orthonormal basis is
//! `f_a = Σ_i (L⁻ᵀ)_{ia} e_i`.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use nalgebra::{DMatrix, DVector};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{halton_sphere, op_norm};

/// Antisymmetry tolerance for structure constants.
pub const ANTISYMMETRY_TOL: f64 = 1e-12;
/// Jacobi identity tolerance.
pub const JACOBI_TOL: f64 = 1e-10;

/// `[e_i, e_j] = Σ_k c[i][j][k] e_k`, zero-based.
#[derive(Debug, Clone, PartialEq)]
pub struct StructureConstants {
    dim: usize,
    c: Vec<f64>,
}

impl StructureConstants {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            c: vec![0.0; dim * dim * dim],
        }
    }

    /// Builds from a nested `c[i][j][k]` tensor, checking its extents
    /// against the declared dimension.
    pub fn new(dim: usize, tensor: &[Vec<Vec<f64>>]) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Structural("dimension must be at least 1".into()));
        }
        if tensor.len() != dim {
            return Err(Error::Structural(format!(
                "declared dim {dim} but tensor has {} slices",
                tensor.len()
            )));
        }
        let mut sc = Self::zeros(dim);
        for (i, plane) in tensor.iter().enumerate() {
            if plane.len() != dim {
                return Err(Error::Structural(format!(
                    "c[{i}] has {} rows, expected {dim}",
                    plane.len()
                )));
            }
            for (j, row) in plane.iter().enumerate() {
                if row.len() != dim {
                    return Err(Error::Structural(format!(
                        "c[{i}][{j}] has {} entries, expected {dim}",
                        row.len()
                    )));
                }
                for (k, &v) in row.iter().enumerate() {
                    sc.set(i, j, k, v);
                }
            }
        }
        Ok(sc)
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    fn index(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.dim + j) * self.dim + k
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize, k: usize) -> f64 {
        self.c[self.index(i, j, k)]
    }

    /// Sets a single entry without touching its antisymmetric partner.
    pub fn set(&mut self, i: usize, j: usize, k: usize, value: f64) {
        let idx = self.index(i, j, k);
        self.c[idx] = value;
    }

    /// Sets `c[i][j][k] = value` and `c[j][i][k] = -value`.
    pub fn set_bracket(&mut self, i: usize, j: usize, k: usize, value: f64) {
        self.set(i, j, k, value);
        self.set(j, i, k, -value);
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|&v| v == 0.0)
    }

    /// True when every constant is an integer representable exactly.
    pub fn is_integral(&self) -> bool {
        self.c.iter().all(|&v| v.fract() == 0.0 && v.abs() < 9.0e15)
    }

    /// Coordinates of `[x, y]`.
    pub fn bracket(&self, x: &DVector<f64>, y: &DVector<f64>) -> DVector<f64> {
        let n = self.dim;
        let mut out = DVector::zeros(n);
        for i in 0..n {
            if x[i] == 0.0 {
                continue;
            }
            for j in 0..n {
                let w = x[i] * y[j];
                if w == 0.0 {
                    continue;
                }
                for k in 0..n {
                    out[k] += w * self.get(i, j, k);
                }
            }
        }
        out
    }

    /// Matrix of `y ↦ [e_i, y]`.
    pub fn ad_basis(&self, i: usize) -> DMatrix<f64> {
        let n = self.dim;
        DMatrix::from_fn(n, n, |k, j| self.get(i, j, k))
    }

    /// Antisymmetry and Jacobi residuals above tolerance.
    pub fn validate(&self) -> ValidationReport {
        let n = self.dim;
        let mut violations = Vec::new();
        for i in 0..n {
            for j in i..n {
                for k in 0..n {
                    let residual = (self.get(i, j, k) + self.get(j, i, k)).abs();
                    if residual > ANTISYMMETRY_TOL {
                        violations.push(Violation::Antisymmetry { i, j, k, residual });
                    }
                }
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                for k in (j + 1)..n {
                    for l in 0..n {
                        let mut acc = 0.0;
                        for m in 0..n {
                            acc += self.get(i, j, m) * self.get(m, k, l)
                                + self.get(j, k, m) * self.get(m, i, l)
                                + self.get(k, i, m) * self.get(m, j, l);
                        }
                        if acc.abs() > JACOBI_TOL {
                            violations.push(Violation::Jacobi {
                                i,
                                j,
                                k,
                                l,
                                residual: acc.abs(),
                            });
                        }
                    }
                }
            }
        }
        ValidationReport { violations }
    }

    /// Step of nilpotency computed exactly over the rationals.
    ///
    /// Returns `None` when some constant is not an integer. Otherwise
    /// `Some(Some(p))` if the lower central series reaches zero with
    /// `C^{p+1} = 0` (so every `p`-fold bracket vanishes and `ad_x^p = 0`),
    /// or `Some(None)` if the series stabilises at a nonzero ideal.
    pub fn exact_nilpotency_step(&self) -> Option<Option<usize>> {
        if !self.is_integral() {
            return None;
        }
        let n = self.dim;
        let consts: Vec<BigRational> = self
            .c
            .iter()
            .map(|&v| BigRational::from_integer(BigInt::from_f64(v).expect("integral constant")))
            .collect();
        let bracket_basis = |i: usize, v: &[BigRational]| -> Vec<BigRational> {
            let mut out = vec![BigRational::zero(); n];
            for (j, vj) in v.iter().enumerate() {
                if vj.is_zero() {
                    continue;
                }
                for (k, slot) in out.iter_mut().enumerate() {
                    let c = &consts[(i * n + j) * n + k];
                    if !c.is_zero() {
                        *slot += c * vj;
                    }
                }
            }
            out
        };

        let mut current: Vec<Vec<BigRational>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            BigRational::from_integer(1.into())
                        } else {
                            BigRational::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        let mut step = 1;
        loop {
            let mut next = Vec::new();
            for i in 0..n {
                for v in &current {
                    next.push(bracket_basis(i, v));
                }
            }
            let next = rational_row_basis(next);
            if next.is_empty() {
                return Some(Some(step));
            }
            if next.len() == current.len() {
                return Some(None);
            }
            current = next;
            step += 1;
        }
    }
}

/// Reduced row basis of the span of `rows`.
fn rational_row_basis(mut rows: Vec<Vec<BigRational>>) -> Vec<Vec<BigRational>> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let p = rows[rank][col].clone();
        for v in rows[rank].iter_mut() {
            *v /= &p;
        }
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == rank || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (dst, src) in row.iter_mut().zip(&pivot_row) {
                *dst -= &f * src;
            }
        }
        rank += 1;
    }
    rows.truncate(rank);
    rows
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    Antisymmetry {
        i: usize,
        j: usize,
        k: usize,
        residual: f64,
    },
    Jacobi {
        i: usize,
        j: usize,
        k: usize,
        l: usize,
        residual: f64,
    },
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::Antisymmetry { i, j, k, residual } => {
                write!(
                    f,
                    "antisymmetry violated at ({i},{j},{k}): |c[i][j][k] + c[j][i][k]| = {residual:e}"
                )
            }
            Violation::Jacobi { i, j, k, l, residual } => {
                write!(
                    f,
                    "Jacobi identity violated at ({i},{j},{k},{l}): residual {residual:e}"
                )
            }
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Gram matrix `G_ij = <e_i, e_j>`.
#[derive(Debug, Clone, PartialEq)]
pub struct InnerProduct {
    gram: DMatrix<f64>,
}

impl InnerProduct {
    pub fn identity(dim: usize) -> Self {
        Self {
            gram: DMatrix::identity(dim, dim),
        }
    }

    pub fn new(gram: DMatrix<f64>) -> Result<Self> {
        if !gram.is_square() || gram.nrows() == 0 {
            return Err(Error::Structural("Gram matrix must be square and nonempty".into()));
        }
        let scale = gram.amax().max(1.0);
        let asym = (&gram - gram.transpose()).amax();
        if asym > 1e-12 * scale {
            return Err(Error::Domain(format!(
                "Gram matrix is not symmetric (residual {asym:e})"
            )));
        }
        let eig = gram.clone().symmetric_eigenvalues();
        let max = eig.max();
        let min = eig.min();
        if !(max > 0.0) || min <= 1e-10 * max {
            return Err(Error::Domain(format!(
                "Gram matrix is not positive definite (eigenvalues in [{min:e}, {max:e}])"
            )));
        }
        Ok(Self { gram })
    }

    pub fn gram(&self) -> &DMatrix<f64> {
        &self.gram
    }

    pub fn is_identity(&self) -> bool {
        self.gram == DMatrix::identity(self.gram.nrows(), self.gram.ncols())
    }
}

/// A real Lie algebra with an inner product and a cached orthonormal frame.
#[derive(Debug, Clone)]
pub struct LieAlgebra {
    name: String,
    sc: StructureConstants,
    ip: InnerProduct,
    /// `Lᵀ`, maps input coordinates to orthonormal ones.
    to_ortho: DMatrix<f64>,
    /// `L⁻ᵀ`, maps orthonormal coordinates back.
    from_ortho: DMatrix<f64>,
    ortho_sc: StructureConstants,
    nilpotency: OnceLock<Option<Option<usize>>>,
}

impl LieAlgebra {
    pub fn new(name: impl Into<String>, sc: StructureConstants, ip: InnerProduct) -> Result<Self> {
        let n = sc.dim();
        if ip.gram().nrows() != n {
            return Err(Error::Structural(format!(
                "Gram matrix is {}x{} but algebra has dimension {n}",
                ip.gram().nrows(),
                ip.gram().ncols()
            )));
        }
        let (to_ortho, from_ortho, ortho_sc) = if ip.is_identity() {
            (DMatrix::identity(n, n), DMatrix::identity(n, n), sc.clone())
        } else {
            let chol = ip
                .gram()
                .clone()
                .cholesky()
                .ok_or_else(|| Error::Numerical("Cholesky factorisation of Gram matrix failed".into()))?;
            let l = chol.l();
            let lt = l.transpose();
            let lt_inv = lt
                .clone()
                .try_inverse()
                .ok_or_else(|| Error::Numerical("triangular factor not invertible".into()))?;
            let ortho_sc = change_basis(&sc, &lt_inv, &lt);
            (lt, lt_inv, ortho_sc)
        };
        Ok(Self {
            name: name.into(),
            sc,
            ip,
            to_ortho,
            from_ortho,
            ortho_sc,
            nilpotency: OnceLock::new(),
        })
    }

    pub fn with_identity_metric(name: impl Into<String>, sc: StructureConstants) -> Self {
        let ip = InnerProduct::identity(sc.dim());
        Self::new(name, sc, ip).expect("identity metric always factors")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.sc.dim()
    }

    pub fn structure_constants(&self) -> &StructureConstants {
        &self.sc
    }

    pub fn orthonormal_structure_constants(&self) -> &StructureConstants {
        &self.ortho_sc
    }

    pub fn inner_product(&self) -> &InnerProduct {
        &self.ip
    }

    pub fn to_orthonormal(&self, x: &DVector<f64>) -> DVector<f64> {
        &self.to_ortho * x
    }

    pub fn from_orthonormal(&self, z: &DVector<f64>) -> DVector<f64> {
        &self.from_ortho * z
    }

    pub fn is_abelian(&self) -> bool {
        self.sc.is_zero()
    }

    /// Validates the input constants and their orthonormal re-expression.
    pub fn validate(&self) -> ValidationReport {
        let mut report = self.sc.validate();
        if !self.ip.is_identity() && report.is_ok() {
            report = self.ortho_sc.validate();
        }
        report
    }

    /// `ad_x` in orthonormal coordinates; `x` is given in orthonormal
    /// coordinates too.
    pub fn ad(&self, x: &DVector<f64>) -> Result<AdOperator> {
        let n = self.dim();
        if x.len() != n {
            return Err(Error::Structural(format!(
                "vector has length {} but algebra has dimension {n}",
                x.len()
            )));
        }
        let mut matrix = DMatrix::zeros(n, n);
        for a in 0..n {
            if x[a] == 0.0 {
                continue;
            }
            for b in 0..n {
                for c in 0..n {
                    matrix[(c, b)] += x[a] * self.ortho_sc.get(a, b, c);
                }
            }
        }
        let norm_x = x.norm();
        let unit = (norm_x > 0.0).then(|| &matrix / norm_x);
        Ok(AdOperator {
            matrix,
            source: x.clone(),
            norm_x,
            unit,
        })
    }

    /// `ad_x` for `x` in input coordinates.
    pub fn ad_input(&self, x: &DVector<f64>) -> Result<AdOperator> {
        if x.len() != self.dim() {
            return Err(Error::Structural(format!(
                "vector has length {} but algebra has dimension {}",
                x.len(),
                self.dim()
            )));
        }
        self.ad(&self.to_orthonormal(x))
    }

    /// Frobenius certificate `sqrt(Σ_i ‖ad_{f_i}‖_F²)` over an orthonormal basis.
    pub fn delta_zero_certificate(&self) -> f64 {
        (0..self.dim())
            .map(|i| self.ortho_sc.ad_basis(i).norm_squared())
            .sum::<f64>()
            .sqrt()
    }

    /// Two-sided estimate of the bracket norm `δ₀ = max ‖ad_x‖` over unit `x`.
    ///
    /// `budget` is the number of sphere samples. The best starts are then
    /// refined by the monotone iteration `x ← v₁(ad_x)`, which never
    /// decreases `σ₁(ad_x)`.
    pub fn delta_zero(&self, budget: usize) -> Result<DeltaZeroEstimate> {
        if budget == 0 {
            return Err(Error::Domain("delta_zero needs a positive sample budget".into()));
        }
        let upper = self.delta_zero_certificate();
        if upper == 0.0 {
            return Ok(DeltaZeroEstimate {
                lower: 0.0,
                upper: 0.0,
                iterations: 0,
                converged: true,
            });
        }
        let n = self.dim();
        let mut starts: Vec<DVector<f64>> = (0..n.min(budget))
            .map(|i| DVector::from_fn(n, |k, _| f64::from(u8::from(k == i))))
            .collect();
        starts.extend(halton_sphere(n, budget.saturating_sub(starts.len())));

        let mut scored: Vec<(f64, DVector<f64>)> = starts
            .into_iter()
            .map(|x| {
                let s = op_norm(&self.ad(&x).expect("dimension matches").matrix);
                (s, x)
            })
            .collect();
        scored.sort_by(|a, b| b.0.total_cmp(&a.0));

        const REFINED_STARTS: usize = 8;
        const MAX_ASCENT: usize = 500;
        let mut iterations = 0;
        let mut best = 0.0f64;
        let mut converged = false;
        for (value, x) in scored.into_iter().take(REFINED_STARTS) {
            let (refined, steps, done) = self.ascend(x, value, MAX_ASCENT);
            iterations += steps;
            if refined > best {
                best = refined;
                converged = done;
            } else if refined == best {
                converged |= done;
            }
        }
        Ok(DeltaZeroEstimate {
            lower: best.min(upper),
            upper,
            iterations,
            converged,
        })
    }

    fn ascend(&self, mut x: DVector<f64>, mut value: f64, max_steps: usize) -> (f64, usize, bool) {
        for step in 1..=max_steps {
            let a = self.ad(&x).expect("dimension matches").matrix;
            let svd = a.svd(false, true);
            let Some(v_t) = svd.v_t else {
                return (value, step, false);
            };
            let (idx, s1) =
                svd.singular_values
                    .iter()
                    .cloned()
                    .enumerate()
                    .fold(
                        (0, f64::NEG_INFINITY),
                        |acc, (i, s)| if s > acc.1 { (i, s) } else { acc },
                    );
            if s1 <= 0.0 {
                return (value.max(0.0), step, true);
            }
            let next = v_t.row(idx).transpose().normalize();
            let next_value = op_norm(&self.ad(&next).expect("dimension matches").matrix);
            let gain = next_value - value.max(s1);
            value = value.max(s1).max(next_value);
            x = next;
            if gain.abs() <= 1e-14 * value {
                return (value, step, true);
            }
        }
        (value, max_steps, false)
    }

    /// See [`StructureConstants::exact_nilpotency_step`].
    pub fn exact_nilpotency_step(&self) -> Option<Option<usize>> {
        *self.nilpotency.get_or_init(|| self.sc.exact_nilpotency_step())
    }

    /// Killing form `B(f_a, f_b) = tr(ad_a ad_b)` in orthonormal coordinates.
    pub fn killing_form(&self) -> DMatrix<f64> {
        let n = self.dim();
        let ads: Vec<DMatrix<f64>> = (0..n).map(|i| self.ortho_sc.ad_basis(i)).collect();
        DMatrix::from_fn(n, n, |a, b| (&ads[a] * &ads[b]).trace())
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let file: AlgebraFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        file.into_algebra()
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&AlgebraFile::from_algebra(self)).expect("algebra file serialises")
    }
}

/// `c'_{abc} = Σ M_ia M_jb c_ijk N_ck` with `M = L⁻ᵀ`, `N = Lᵀ`.
fn change_basis(sc: &StructureConstants, m: &DMatrix<f64>, n_mat: &DMatrix<f64>) -> StructureConstants {
    let n = sc.dim();
    // Contract one index at a time to keep this O(n^4).
    let mut t1 = vec![0.0; n * n * n];
    for a in 0..n {
        for j in 0..n {
            for k in 0..n {
                let mut acc = 0.0;
                for i in 0..n {
                    acc += m[(i, a)] * sc.get(i, j, k);
                }
                t1[(a * n + j) * n + k] = acc;
            }
        }
    }
    let mut t2 = vec![0.0; n * n * n];
    for a in 0..n {
        for b in 0..n {
            for k in 0..n {
                let mut acc = 0.0;
                for j in 0..n {
                    acc += m[(j, b)] * t1[(a * n + j) * n + k];
                }
                t2[(a * n + b) * n + k] = acc;
            }
        }
    }
    let mut out = StructureConstants::zeros(n);
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let mut acc = 0.0;
                for k in 0..n {
                    acc += n_mat[(c, k)] * t2[(a * n + b) * n + k];
                }
                out.set(a, b, c, acc);
            }
        }
    }
    out
}

/// The matrix of `ad_x` in orthonormal coordinates.
#[derive(Debug, Clone)]
pub struct AdOperator {
    pub matrix: DMatrix<f64>,
    /// Orthonormal coordinates of `x`.
    pub source: DVector<f64>,
    pub norm_x: f64,
    /// `ad_{x/|x|}`; absent for `x = 0`.
    pub unit: Option<DMatrix<f64>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DeltaZeroEstimate {
    /// Best `σ₁(ad_x)` found over the real unit sphere.
    pub lower: f64,
    /// Frobenius certificate, valid over the complexification.
    pub upper: f64,
    pub iterations: usize,
    pub converged: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BracketEntry {
    i: usize,
    j: usize,
    coeffs: BTreeMap<String, f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
enum GramLayout {
    Nested(Vec<Vec<f64>>),
    Flat(Vec<f64>),
}

/// On-disk algebra description.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AlgebraFile {
    name: String,
    dim: usize,
    brackets: Vec<BracketEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    gram: Option<GramLayout>,
}

impl AlgebraFile {
    fn into_algebra(self) -> Result<LieAlgebra> {
        let n = self.dim;
        if n == 0 {
            return Err(Error::Parse("dim must be at least 1".into()));
        }
        let mut sc = StructureConstants::zeros(n);
        let mut seen = std::collections::BTreeSet::new();
        for entry in &self.brackets {
            let (i, j) = (entry.i, entry.j);
            if i >= n || j >= n {
                return Err(Error::Parse(format!("bracket ({i},{j}) out of range for dim {n}")));
            }
            if i >= j {
                return Err(Error::Parse(format!("bracket ({i},{j}) must satisfy i < j")));
            }
            if !seen.insert((i, j)) {
                return Err(Error::Parse(format!("bracket ({i},{j}) listed twice")));
            }
            for (key, &value) in &entry.coeffs {
                let k: usize = key
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("coefficient key `{key}` is not an index")))?;
                if k >= n {
                    return Err(Error::Parse(format!("coefficient index {k} out of range for dim {n}")));
                }
                if !value.is_finite() {
                    return Err(Error::Parse(format!("non-finite coefficient in bracket ({i},{j})")));
                }
                sc.set_bracket(i, j, k, value);
            }
        }
        let ip = match self.gram {
            None => InnerProduct::identity(n),
            Some(GramLayout::Nested(rows)) => {
                if rows.len() != n || rows.iter().any(|r| r.len() != n) {
                    return Err(Error::Parse(format!("gram must be {n}x{n}")));
                }
                InnerProduct::new(DMatrix::from_fn(n, n, |r, c| rows[r][c]))?
            }
            Some(GramLayout::Flat(vals)) => {
                if vals.len() != n * n {
                    return Err(Error::Parse(format!("gram must have {} entries", n * n)));
                }
                InnerProduct::new(DMatrix::from_row_slice(n, n, &vals))?
            }
        };
        LieAlgebra::new(self.name, sc, ip)
    }

    fn from_algebra(alg: &LieAlgebra) -> Self {
        let n = alg.dim();
        let sc = alg.structure_constants();
        let mut brackets = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                let coeffs: BTreeMap<String, f64> = (0..n)
                    .filter(|&k| sc.get(i, j, k) != 0.0)
                    .map(|k| (k.to_string(), sc.get(i, j, k)))
                    .collect();
                if !coeffs.is_empty() {
                    brackets.push(BracketEntry { i, j, coeffs });
                }
            }
        }
        let gram = (!alg.inner_product().is_identity()).then(|| {
            let g = alg.inner_product().gram();
            GramLayout::Nested((0..n).map(|r| (0..n).map(|c| g[(r, c)]).collect()).collect())
        });
        Self {
            name: alg.name().to_string(),
            dim: n,
            brackets,
            gram,
        }
    }
}
