// Copyright 2026 liedexp contributors
// SPDX-License-Identifier: Apache-2.0

//! Ray sweeps `t ↦ t·x̂` and their CSV encoding.
//!
//! Columns are fixed (see [`HEADER`]). Values are written in scientific
//! notation with 17 significant digits; a bound that does not apply at a
//! grid point is an empty cell.

use std::io::{Read, Write};
use std::str::FromStr;

use nalgebra::DVector;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::LieAlgebra;
use crate::bounds::{BoundReport, Tolerances};
use crate::error::{Error, Result};

pub const HEADER: [&str; 11] = [
    "t",
    "exact_min",
    "exact_max",
    "lambda_tilde_min",
    "lambda_tilde_max",
    "thm1_lower",
    "thm1_upper",
    "thm2_lower_log",
    "thm2_upper",
    "nilp_lower",
    "nilp_upper",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scale {
    Linear,
    Log,
}

impl FromStr for Scale {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "linear" => Ok(Scale::Linear),
            "log" => Ok(Scale::Log),
            other => Err(Error::Parse(format!("unknown scale '{other}', expected linear or log"))),
        }
    }
}

/// `steps` points from `t_min` to `t_max` inclusive.
pub fn grid(t_min: f64, t_max: f64, steps: usize, scale: Scale) -> Result<Vec<f64>> {
    if !(t_min > 0.0) || !t_max.is_finite() || t_max < t_min {
        return Err(Error::Domain(format!("need 0 < t_min ≤ t_max, got [{t_min}, {t_max}]")));
    }
    if steps < 2 {
        return Err(Error::Domain(format!("steps must be at least 2, got {steps}")));
    }
    let last = (steps - 1) as f64;
    let mut out: Vec<f64> = (0..steps)
        .map(|i| {
            let f = i as f64 / last;
            match scale {
                Scale::Linear => t_min + f * (t_max - t_min),
                Scale::Log => (t_min.ln() + f * (t_max.ln() - t_min.ln())).exp(),
            }
        })
        .collect();
    out[0] = t_min;
    out[steps - 1] = t_max;
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub t: f64,
    pub exact_min: f64,
    pub exact_max: f64,
    pub lambda_tilde_min: f64,
    pub lambda_tilde_max: f64,
    pub thm1_lower: Option<f64>,
    pub thm1_upper: Option<f64>,
    pub thm2_lower_log: f64,
    pub thm2_upper: f64,
    pub nilp_lower: Option<f64>,
    pub nilp_upper: Option<f64>,
}

impl SweepRow {
    pub fn from_report(t: f64, r: &BoundReport) -> Self {
        Self {
            t,
            exact_min: r.exact_min,
            exact_max: r.exact_max,
            lambda_tilde_min: r.lambda_tilde_min,
            lambda_tilde_max: r.lambda_tilde_max,
            thm1_lower: r.thm1_lower,
            thm1_upper: r.thm1_upper,
            thm2_lower_log: r.thm2_lower_log,
            thm2_upper: r.thm2_upper,
            nilp_lower: r.nilp_lower,
            nilp_upper: r.nilp_upper,
        }
    }

    /// Checks every present bound against the exact extremes with relative
    /// tolerance `tol`; returns the names of violated columns.
    pub fn violations(&self, tol: f64) -> Vec<&'static str> {
        let lo_ok = |b: f64| b <= self.exact_min + tol * (1.0 + self.exact_min);
        let hi_ok = |b: f64| b >= self.exact_max - tol * (1.0 + self.exact_max);
        let mut bad = Vec::new();
        if self.thm1_lower.is_some_and(|b| !lo_ok(b)) {
            bad.push("thm1_lower");
        }
        if self.thm1_upper.is_some_and(|b| !hi_ok(b)) {
            bad.push("thm1_upper");
        }
        if !(self.thm2_lower_log <= self.exact_min.ln() + tol) {
            bad.push("thm2_lower_log");
        }
        if !hi_ok(self.thm2_upper) {
            bad.push("thm2_upper");
        }
        if self.nilp_lower.is_some_and(|b| !lo_ok(b)) {
            bad.push("nilp_lower");
        }
        if self.nilp_upper.is_some_and(|b| !hi_ok(b)) {
            bad.push("nilp_upper");
        }
        bad
    }

    fn cells(&self) -> [Option<f64>; 11] {
        [
            Some(self.t),
            Some(self.exact_min),
            Some(self.exact_max),
            Some(self.lambda_tilde_min),
            Some(self.lambda_tilde_max),
            self.thm1_lower,
            self.thm1_upper,
            Some(self.thm2_lower_log),
            Some(self.thm2_upper),
            self.nilp_lower,
            self.nilp_upper,
        ]
    }
}

#[derive(Debug, Clone)]
pub struct Sweep {
    pub rows: Vec<SweepRow>,
    /// Norm of the supplied direction when it was not already unit length.
    pub renormalized_from: Option<f64>,
}

/// Evaluates the bound report at `t·x̂` for every `t` in `grid`. `x_hat` is in
/// orthonormal coordinates and is normalized if needed.
pub fn sweep(
    alg: &LieAlgebra,
    x_hat: &DVector<f64>,
    grid: &[f64],
    delta0_upper: f64,
    tol: &Tolerances,
) -> Result<Sweep> {
    if x_hat.len() != alg.dim() {
        return Err(Error::Structural(format!(
            "direction has length {}, algebra has dimension {}",
            x_hat.len(),
            alg.dim()
        )));
    }
    let norm = x_hat.norm();
    if !(norm > 0.0) || !norm.is_finite() {
        return Err(Error::Domain("sweep direction must be a nonzero finite vector".into()));
    }
    let renormalized_from = ((norm - 1.0).abs() > 1e-12).then_some(norm);
    let unit = x_hat / norm;
    let rows = grid
        .par_iter()
        .map(|&t| BoundReport::compute(alg, &(&unit * t), delta0_upper, tol).map(|r| SweepRow::from_report(t, &r)))
        .collect::<Result<Vec<_>>>()?;
    Ok(Sweep {
        rows,
        renormalized_from,
    })
}

fn format_cell(v: Option<f64>) -> String {
    match v {
        Some(x) => format!("{x:.16e}"),
        None => String::new(),
    }
}

pub fn write_csv<W: Write>(rows: &[SweepRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(HEADER)?;
    for row in rows {
        w.write_record(row.cells().map(format_cell))?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_csv<R: Read>(input: R) -> Result<Vec<SweepRow>> {
    let mut r = csv::Reader::from_reader(input);
    let header: Vec<String> = r.headers()?.iter().map(str::to_string).collect();
    if header != HEADER {
        return Err(Error::Parse(format!("unexpected sweep header: {}", header.join(","))));
    }
    let rows = r.deserialize().collect::<std::result::Result<Vec<SweepRow>, _>>()?;
    Ok(rows)
}
