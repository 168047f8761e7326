// Copyright 2026 liedexp contributors
// SPDX-License-Identifier: Apache-2.0

//! Seeded randomized property suites.
//!
//! Each trial draws from its own ChaCha stream, keyed by the suite seed and
//! the (algebra, trial) index, so results do not depend on how rayon
//! schedules the work.

use std::collections::BTreeMap;
use std::str::FromStr;
use std::time::Instant;

use nalgebra::{Complex, DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use super::catalog::{catalog, CatalogEntry};
use super::oracle::brute_force_extremes;
use crate::bounds::{corollary_decay, BoundReport, Tolerances};
use crate::error::{Error, Result};
use crate::linalg::op_norm;
use crate::matfunc::{expm_taylor, growth_factor, phi_matrix, phi_quadrature_oracle, phi_scalar};
use crate::spectral::{eigenvalues, greedy_match_distance, minimax_check, singular_values, WeylCheck};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    Thm1,
    Thm2,
    Eq5,
    Nilpotent,
    Weyl,
    SpectralMapping,
    PhiOracle,
    Lemma31,
    Minimax,
    CorollaryDecay,
    Oracle,
}

impl Suite {
    pub const ALL: [Suite; 11] = [
        Suite::Thm1,
        Suite::Thm2,
        Suite::Eq5,
        Suite::Nilpotent,
        Suite::Weyl,
        Suite::SpectralMapping,
        Suite::PhiOracle,
        Suite::Lemma31,
        Suite::Minimax,
        Suite::CorollaryDecay,
        Suite::Oracle,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Suite::Thm1 => "thm1",
            Suite::Thm2 => "thm2",
            Suite::Eq5 => "eq5",
            Suite::Nilpotent => "nilpotent",
            Suite::Weyl => "weyl",
            Suite::SpectralMapping => "spectral-mapping",
            Suite::PhiOracle => "phi-oracle",
            Suite::Lemma31 => "lemma31",
            Suite::Minimax => "minimax",
            Suite::CorollaryDecay => "corollary-decay",
            Suite::Oracle => "oracle",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            Suite::Thm1 => "eigenvalue bounds C·λ̃_min ≤ sₙ, s₁ ≤ D·λ̃_max for diagonalizable ad_x̂",
            Suite::Thm2 => "two-sided δ₀ bounds (log-domain lower, linear upper)",
            Suite::Eq5 => "sₙ ≤ λ̃_min and λ̃_max ≤ s₁",
            Suite::Nilpotent => "polynomial bounds 1/Q ≤ sₙ, s₁ ≤ Q₁ for nilpotent ad_x",
            Suite::Weyl => "Weyl products, determinant identity, |λ₁| ≤ s₁, sₙ ≤ |λₙ|",
            Suite::SpectralMapping => "eigenvalues of φ(A) are φ of eigenvalues of A",
            Suite::PhiOracle => "φ(A) against quadrature, and A·φ(A) = I - e^{-A}",
            Suite::Lemma31 => "sₙ(PTQ) ≥ sₙ(P)·sₙ(T)·sₙ(Q)",
            Suite::Minimax => "sampled |Ay| stays in [sₙ, s₁] and reaches both ends",
            Suite::CorollaryDecay => "t·sₙ(φ(t·ad_x̂)) stays above its uniform floor for t ≥ 1",
            Suite::Oracle => "SVD-free brute-force extremes agree with the SVD",
        }
    }

    fn uses_catalog(self) -> bool {
        matches!(
            self,
            Suite::Thm1 | Suite::Thm2 | Suite::Eq5 | Suite::Nilpotent | Suite::CorollaryDecay
        )
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.id() == s)
            .ok_or_else(|| Error::UnknownSuite(s.to_string()))
    }
}

#[derive(Debug, Clone, Default)]
pub struct SuiteOptions {
    /// Restricts catalog-based suites to these ids.
    pub algebras: Option<Vec<String>>,
    pub tolerances: Tolerances,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Failure {
    pub trial: usize,
    pub algebra: Option<String>,
    pub check: String,
    pub residual: f64,
    pub input: Value,
}

#[derive(Debug, Clone, Serialize)]
pub struct PropertyRunReport {
    pub suite: String,
    pub seed: u64,
    pub trials: usize,
    pub evaluated: usize,
    pub skipped: usize,
    pub failures: Vec<Failure>,
    /// Largest signed residual per inequality, overall and per algebra
    /// (`name@id`); negative values are slack.
    pub max_residuals: BTreeMap<String, f64>,
    pub notes: Vec<String>,
    pub wall_ms: u64,
}

impl PropertyRunReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }

    /// JSON without the wall-clock field; identical across re-runs with the
    /// same seed.
    pub fn canonical_json(&self) -> String {
        let mut value = serde_json::to_value(self).expect("report serialises");
        value.as_object_mut().expect("object").remove("wall_ms");
        serde_json::to_string_pretty(&value).expect("report serialises")
    }
}

#[derive(Default)]
struct TrialOutcome {
    skipped: bool,
    residuals: Vec<(&'static str, f64)>,
    failures: Vec<(&'static str, f64)>,
    input: Option<Value>,
}

impl TrialOutcome {
    fn check(&mut self, name: &'static str, residual: f64, tol: f64) {
        self.residuals.push((name, residual));
        if !(residual <= tol) {
            self.failures.push((name, residual));
        }
    }

    fn skip() -> Self {
        Self {
            skipped: true,
            ..Self::default()
        }
    }
}

fn trial_rng(seed: u64, group: usize, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((group as u64) << 32) | trial as u64);
    rng
}

fn gaussian_vector<R: Rng>(rng: &mut R, n: usize) -> DVector<f64> {
    DVector::from_fn(n, |_, _| rng.sample(StandardNormal))
}

fn gaussian_matrix<R: Rng>(rng: &mut R, n: usize) -> DMatrix<f64> {
    DMatrix::from_fn(n, n, |_, _| rng.sample(StandardNormal))
}

fn unit_vector<R: Rng>(rng: &mut R, n: usize) -> DVector<f64> {
    loop {
        let v = gaussian_vector(rng, n);
        let norm = v.norm();
        if norm > 1e-8 {
            return v / norm;
        }
    }
}

fn log_uniform<R: Rng>(rng: &mut R, lo: f64, hi: f64) -> f64 {
    (lo.ln() + rng.random::<f64>() * (hi.ln() - lo.ln())).exp()
}

fn matrix_json(a: &DMatrix<f64>) -> Value {
    let rows: Vec<Vec<f64>> = (0..a.nrows()).map(|r| a.row(r).iter().cloned().collect()).collect();
    json!({ "n": a.nrows(), "matrix": rows })
}

fn algebras_for(suite: Suite, opts: &SuiteOptions) -> Result<Vec<CatalogEntry>> {
    let all = catalog();
    if let Some(ids) = &opts.algebras {
        return ids
            .iter()
            .map(|id| {
                all.iter()
                    .find(|e| e.id == id)
                    .cloned()
                    .ok_or_else(|| Error::UnknownAlgebra(id.clone()))
            })
            .collect();
    }
    Ok(match suite {
        Suite::Nilpotent => all.into_iter().filter(|e| e.nilpotent_step().is_some()).collect(),
        _ => all,
    })
}

/// Runs a suite by id with default options.
pub fn run_suite(suite_id: &str, seed: u64, trials: usize) -> Result<PropertyRunReport> {
    run_suite_with(suite_id.parse()?, seed, trials, &SuiteOptions::default())
}

pub fn run_suite_with(suite: Suite, seed: u64, trials: usize, opts: &SuiteOptions) -> Result<PropertyRunReport> {
    if trials == 0 {
        return Err(Error::Domain("trials must be at least 1".into()));
    }
    let start = Instant::now();
    let tol = &opts.tolerances;
    let mut groups: Vec<(Option<String>, Vec<TrialOutcome>)> = Vec::new();
    let mut notes = Vec::new();

    if suite.uses_catalog() {
        for (gi, entry) in algebras_for(suite, opts)?.into_iter().enumerate() {
            let delta0 = entry.algebra.delta_zero(tol.delta0_budget)?.upper;
            let outcomes: Vec<TrialOutcome> = (0..trials)
                .into_par_iter()
                .map(|trial| {
                    let mut rng = trial_rng(seed, gi, trial);
                    catalog_trial(suite, &entry, delta0, tol, &mut rng)
                })
                .collect();
            let skipped = outcomes.iter().filter(|o| o.skipped).count();
            if skipped == trials {
                notes.push(format!("{}: all {trials} trials skipped (not applicable)", entry.id));
            } else if skipped > 0 {
                notes.push(format!(
                    "{}: {skipped} of {trials} trials skipped (not applicable)",
                    entry.id
                ));
            }
            groups.push((Some(entry.id.to_string()), outcomes));
        }
    } else {
        let outcomes: Vec<TrialOutcome> = (0..trials)
            .into_par_iter()
            .map(|trial| {
                let mut rng = trial_rng(seed, 0, trial);
                matrix_trial(suite, &mut rng)
            })
            .collect();
        groups.push((None, outcomes));
    }

    let mut failures = Vec::new();
    let mut max_residuals: BTreeMap<String, f64> = BTreeMap::new();
    let (mut evaluated, mut skipped) = (0, 0);
    for (algebra, outcomes) in groups {
        for (trial, outcome) in outcomes.into_iter().enumerate() {
            if outcome.skipped {
                skipped += 1;
                continue;
            }
            evaluated += 1;
            for (name, r) in &outcome.residuals {
                let mut keys = vec![(*name).to_string()];
                if let Some(id) = &algebra {
                    keys.push(format!("{name}@{id}"));
                }
                for key in keys {
                    let slot = max_residuals.entry(key).or_insert(f64::NEG_INFINITY);
                    if r.is_nan() || *r > *slot {
                        *slot = *r;
                    }
                }
            }
            for (name, r) in outcome.failures {
                failures.push(Failure {
                    trial,
                    algebra: algebra.clone(),
                    check: name.to_string(),
                    residual: r,
                    input: outcome.input.clone().unwrap_or(Value::Null),
                });
            }
        }
    }

    Ok(PropertyRunReport {
        suite: suite.id().to_string(),
        seed,
        trials,
        evaluated,
        skipped,
        failures,
        max_residuals,
        notes,
        wall_ms: start.elapsed().as_millis() as u64,
    })
}

fn catalog_trial(
    suite: Suite,
    entry: &CatalogEntry,
    delta0: f64,
    tol: &Tolerances,
    rng: &mut ChaCha8Rng,
) -> TrialOutcome {
    let alg = &entry.algebra;
    let n = alg.dim();
    let direction = unit_vector(rng, n);
    let range = match suite {
        Suite::Thm1 => (0.1, 20.0),
        Suite::Nilpotent => (0.1, 50.0),
        _ => (0.1, 10.0),
    };
    let t = log_uniform(rng, range.0, range.1);
    let x = &direction * t;
    let input = json!({ "algebra": entry.id, "x": x.iter().collect::<Vec<_>>() });

    if suite == Suite::CorollaryDecay {
        let grid: Vec<f64> = (1..=50).map(f64::from).collect();
        let input = json!({ "algebra": entry.id, "x_hat": direction.iter().collect::<Vec<_>>() });
        return match corollary_decay(alg, &direction, &grid, tol) {
            Ok(Some(decay)) => match decay.uniform_constant {
                Some(floor) => {
                    let mut out = TrialOutcome {
                        input: Some(input),
                        ..Default::default()
                    };
                    out.check(
                        "corollary_floor",
                        (floor - decay.min_scaled) / (1.0 + floor),
                        tol.bound_rel,
                    );
                    out
                }
                None => TrialOutcome::skip(),
            },
            Ok(None) => TrialOutcome::skip(),
            Err(e) => error_outcome(input, e),
        };
    }

    let report = match BoundReport::compute(alg, &x, delta0, tol) {
        Ok(r) => r,
        Err(e) => return error_outcome(input, e),
    };
    let residuals = report.residuals();
    let names: &[&'static str] = match suite {
        Suite::Thm1 => &["thm1_lower", "thm1_upper"],
        Suite::Thm2 => &["thm2_lower_log", "thm2_upper"],
        Suite::Eq5 => &["eq5_min", "eq5_max"],
        Suite::Nilpotent => &["nilp_lower_log", "nilp_upper"],
        _ => unreachable!("catalog suites only"),
    };
    if !residuals.contains_key(names[0]) {
        return TrialOutcome::skip();
    }
    let mut out = TrialOutcome {
        input: Some(input),
        ..Default::default()
    };
    for &name in names {
        out.check(name, residuals[name], tol.bound_rel);
    }
    out
}

fn error_outcome(input: Value, e: Error) -> TrialOutcome {
    let mut out = TrialOutcome {
        input: Some(json!({ "input": input, "error": e.to_string() })),
        ..Default::default()
    };
    out.check("evaluation_error", f64::INFINITY, 0.0);
    out
}

/// Random diagonalizable `A = P D P⁻¹` with real and complex-pair spectrum.
fn random_diagonalizable<R: Rng>(rng: &mut R, n: usize) -> DMatrix<f64> {
    let mut d = DMatrix::zeros(n, n);
    let mut i = 0;
    while i < n {
        if i + 1 < n && rng.random::<bool>() {
            let a = rng.random_range(-3.0..3.0);
            let b = rng.random_range(0.2..3.0);
            d[(i, i)] = a;
            d[(i + 1, i + 1)] = a;
            d[(i, i + 1)] = b;
            d[(i + 1, i)] = -b;
            i += 2;
        } else {
            d[(i, i)] = rng.random_range(-3.0..3.0);
            i += 1;
        }
    }
    loop {
        let p = DMatrix::<f64>::identity(n, n) + gaussian_matrix(rng, n) * 0.3;
        if let Some(p_inv) = p.clone().try_inverse() {
            if op_norm(&p) * op_norm(&p_inv) < 1e3 {
                return &p * d * p_inv;
            }
        }
    }
}

fn matrix_trial(suite: Suite, rng: &mut ChaCha8Rng) -> TrialOutcome {
    let mut out = TrialOutcome::default();
    match suite {
        Suite::Weyl => {
            let n = rng.random_range(1..=8);
            let scale = log_uniform(rng, 0.2, 5.0);
            let mut a = gaussian_matrix(rng, n) * scale;
            if rng.random::<bool>() {
                // Strongly non-normal variant.
                for r in 0..n {
                    for c in (r + 1)..n {
                        a[(r, c)] *= 4.0;
                    }
                }
            }
            out.input = Some(matrix_json(&a));
            match WeylCheck::evaluate(&a) {
                Ok(w) => {
                    out.check("weyl_products", w.weyl_worst, 1e-9);
                    out.check("det_singular", w.det_singular_residual, 1e-9);
                    out.check("det_eigen", w.det_eigen_residual, 1e-9);
                    out.check("top_eigen_le_top_singular", w.top_residual, 1e-10);
                    out.check("bottom_singular_le_bottom_eigen", w.bottom_residual, 1e-10);
                }
                Err(_) => out.check("evaluation_error", f64::INFINITY, 0.0),
            }
        }
        Suite::SpectralMapping => {
            let n = rng.random_range(1..=8);
            let a = random_diagonalizable(rng, n);
            out.input = Some(matrix_json(&a));
            let result = (|| -> Result<f64> {
                let mapped: Vec<Complex<f64>> = eigenvalues(&a)?.into_iter().map(phi_scalar).collect();
                let direct = eigenvalues(&phi_matrix(&a)?.matrix)?;
                Ok(greedy_match_distance(&mapped, &direct).unwrap_or(f64::INFINITY))
            })();
            match result {
                Ok(dist) => out.check("spectral_mapping_distance", dist, 1e-8),
                Err(_) => out.check("evaluation_error", f64::INFINITY, 0.0),
            }
        }
        Suite::PhiOracle => {
            let n = rng.random_range(1..=8);
            let g = gaussian_matrix(rng, n);
            let target = rng.random_range(0.0..20.0);
            let g_norm = op_norm(&g);
            let a = if g_norm > 0.0 { g * (target / g_norm) } else { g };
            out.input = Some(matrix_json(&a));
            match phi_matrix(&a) {
                Ok(phi) => {
                    let oracle = phi_quadrature_oracle(&a);
                    let phi_norm = op_norm(&phi.matrix);
                    out.check(
                        "oracle_agreement",
                        op_norm(&(&phi.matrix - oracle)) / (1.0 + phi_norm),
                        1e-8,
                    );
                    let e = expm_taylor(&(-&a));
                    let identity = DMatrix::<f64>::identity(n, n) - &e;
                    let defect = op_norm(&(&a * &phi.matrix - identity));
                    out.check("defining_identity", defect / (1.0 + op_norm(&e)), 1e-10);
                    let comm = op_norm(&(&a * &phi.matrix - &phi.matrix * &a));
                    out.check("norm_bound", phi_norm / growth_factor(op_norm(&a)) - 1.0, 1e-9);
                    let scale = op_norm(&a) * phi_norm;
                    out.check("commutes", if scale > 0.0 { comm / scale } else { comm }, 1e-12);
                }
                Err(_) => out.check("evaluation_error", f64::INFINITY, 0.0),
            }
        }
        Suite::Lemma31 => {
            let n = rng.random_range(1..=6);
            let p = gaussian_matrix(rng, n);
            let t = gaussian_matrix(rng, n);
            let q = gaussian_matrix(rng, n);
            out.input = Some(json!({ "p": matrix_json(&p), "t": matrix_json(&t), "q": matrix_json(&q) }));
            let smallest = |m: &DMatrix<f64>| singular_values(m).map(|s| s[s.len() - 1]);
            match (smallest(&(&p * &t * &q)), smallest(&p), smallest(&t), smallest(&q)) {
                (Ok(lhs), Ok(sp), Ok(st), Ok(sq)) => out.check("lemma31", sp * st * sq - lhs, 1e-10),
                _ => out.check("evaluation_error", f64::INFINITY, 0.0),
            }
        }
        Suite::Minimax => {
            let n = rng.random_range(1..=8);
            let a = gaussian_matrix(rng, n) * log_uniform(rng, 0.2, 5.0);
            out.input = Some(matrix_json(&a));
            match minimax_check(&a, 200, rng) {
                Ok(r) => {
                    // worst_excess is measured against [sₙ - 1e-10, s₁ + 1e-10].
                    out.check("sampled_in_range", r.worst_excess + 1e-10, 1e-10);
                    out.check("reaches_s_max", (r.refined_max - r.s_max).abs() / (1.0 + r.s_max), 1e-9);
                    out.check("reaches_s_min", (r.refined_min - r.s_min).abs() / (1.0 + r.s_max), 1e-9);
                }
                Err(_) => out.check("evaluation_error", f64::INFINITY, 0.0),
            }
        }
        Suite::Oracle => {
            let n = rng.random_range(1..=6);
            let a = gaussian_matrix(rng, n);
            out.input = Some(matrix_json(&a));
            match (brute_force_extremes(&a, 400, 60), singular_values(&a)) {
                (Ok((lo, hi)), Ok(s)) => {
                    let s1 = s[0];
                    out.check("brute_max", (hi - s1).abs() / (1.0 + s1), 1e-5);
                    out.check("brute_min", (lo - s[n - 1]).abs() / (1.0 + s1), 1e-5);
                }
                _ => out.check("evaluation_error", f64::INFINITY, 0.0),
            }
        }
        _ => unreachable!("matrix suites only"),
    }
    out
}
