// Copyright 2026 liedexp contributors
// SPDX-License-Identifier: Apache-2.0

//! Built-in algebras covering the abelian, nilpotent, solvable, semisimple
//! and compact cases. Every basis is orthonormal (identity Gram matrix).

use nalgebra::{DMatrix, DVector};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::Serialize;

use crate::algebra::{LieAlgebra, StructureConstants};
use crate::error::{Error, Result};
use crate::linalg::{mat_pow, op_norm};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Trait {
    Abelian,
    /// `ad_x^p = 0` for every `x`, and `p` is minimal.
    Nilpotent(usize),
    Solvable,
    Semisimple,
    CompactType,
}

impl std::fmt::Display for Trait {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Trait::Abelian => write!(f, "abelian"),
            Trait::Nilpotent(p) => write!(f, "nilpotent({p})"),
            Trait::Solvable => write!(f, "solvable"),
            Trait::Semisimple => write!(f, "semisimple"),
            Trait::CompactType => write!(f, "compact-type"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub id: &'static str,
    pub algebra: LieAlgebra,
    pub traits: Vec<Trait>,
    /// Closed-form facts used as test goldens.
    pub known_facts: Vec<(&'static str, f64)>,
}

impl CatalogEntry {
    pub fn nilpotent_step(&self) -> Option<usize> {
        self.traits.iter().find_map(|t| match t {
            Trait::Nilpotent(p) => Some(*p),
            _ => None,
        })
    }

    pub fn has(&self, t: Trait) -> bool {
        self.traits.contains(&t)
    }

    /// Checks validation and every declared trait.
    pub fn verify(&self) -> std::result::Result<(), String> {
        let alg = &self.algebra;
        let report = alg.validate();
        if !report.is_ok() {
            return Err(format!(
                "{}: {} structure-constant violations",
                self.id,
                report.violations.len()
            ));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_ca7a);
        let n = alg.dim();
        let samples: Vec<DVector<f64>> = (0..100)
            .map(|_| DVector::from_fn(n, |_, _| StandardNormal.sample(&mut rng)))
            .collect();
        for t in &self.traits {
            match *t {
                Trait::Abelian => {
                    if !alg.is_abelian() {
                        return Err(format!("{}: declared abelian but has nonzero brackets", self.id));
                    }
                }
                Trait::Nilpotent(p) => {
                    let mut lower_power_seen = p == 1;
                    for x in &samples {
                        let ad = alg.ad(x).map_err(|e| e.to_string())?.matrix;
                        let norm = op_norm(&ad);
                        if op_norm(&mat_pow(&ad, p)) > 1e-10 * norm.powi(p as i32).max(f64::MIN_POSITIVE) {
                            return Err(format!("{}: ad_x^{p} does not vanish", self.id));
                        }
                        if p > 1 && op_norm(&mat_pow(&ad, p - 1)) > 1e-6 * norm.powi(p as i32 - 1) {
                            lower_power_seen = true;
                        }
                    }
                    if !lower_power_seen {
                        return Err(format!(
                            "{}: ad_x^{} vanishes on every sample, step is below {p}",
                            self.id,
                            p - 1
                        ));
                    }
                    if alg.exact_nilpotency_step().is_some_and(|s| s != Some(p)) {
                        return Err(format!(
                            "{}: exact lower central series disagrees with step {p}",
                            self.id
                        ));
                    }
                }
                Trait::Solvable => {
                    if !derived_series_terminates(alg) {
                        return Err(format!("{}: derived series does not reach zero", self.id));
                    }
                }
                Trait::Semisimple => {
                    let eig = alg.killing_form().symmetric_eigenvalues();
                    let scale = eig.amax();
                    if eig.iter().any(|v| v.abs() <= 1e-10 * scale) {
                        return Err(format!("{}: Killing form is degenerate", self.id));
                    }
                }
                Trait::CompactType => {
                    let eig = alg.killing_form().symmetric_eigenvalues();
                    if eig.iter().any(|&v| v >= 0.0) {
                        return Err(format!("{}: Killing form is not negative definite", self.id));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Numerical rank-based derived series `D^{k+1} = [D^k, D^k]`.
fn derived_series_terminates(alg: &LieAlgebra) -> bool {
    let n = alg.dim();
    let sc = alg.orthonormal_structure_constants();
    let mut basis: Vec<DVector<f64>> = (0..n)
        .map(|i| DVector::from_fn(n, |k, _| f64::from(u8::from(k == i))))
        .collect();
    for _ in 0..=n {
        if basis.is_empty() {
            return true;
        }
        let mut brackets = Vec::new();
        for (a, u) in basis.iter().enumerate() {
            for v in &basis[a + 1..] {
                brackets.push(sc.bracket(u, v));
            }
        }
        let next = orthonormal_span(&brackets, n);
        if next.len() == basis.len() {
            return false;
        }
        basis = next;
    }
    basis.is_empty()
}

fn orthonormal_span(vectors: &[DVector<f64>], n: usize) -> Vec<DVector<f64>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let m = DMatrix::from_columns(vectors);
    let svd = m.svd(true, false);
    let u = svd.u.expect("requested U");
    let scale = svd.singular_values.max().max(1.0);
    (0..svd.singular_values.len())
        .filter(|&i| svd.singular_values[i] > 1e-10 * scale)
        .map(|i| u.column(i).into_owned())
        .filter(|c: &DVector<f64>| c.len() == n)
        .collect()
}

fn abelian(n: usize) -> CatalogEntry {
    let id: &'static str = match n {
        1 => "abelian1",
        2 => "abelian2",
        3 => "abelian3",
        4 => "abelian4",
        _ => unreachable!("catalog only carries abelian1..abelian4"),
    };
    CatalogEntry {
        id,
        algebra: LieAlgebra::with_identity_metric(id, StructureConstants::zeros(n)),
        traits: vec![Trait::Abelian, Trait::Nilpotent(1), Trait::Solvable],
        known_facts: vec![("delta0", 0.0)],
    }
}

fn heis3() -> CatalogEntry {
    let mut sc = StructureConstants::zeros(3);
    sc.set_bracket(0, 1, 2, 1.0);
    CatalogEntry {
        id: "heis3",
        algebra: LieAlgebra::with_identity_metric("heis3", sc),
        traits: vec![Trait::Nilpotent(2), Trait::Solvable],
        known_facts: vec![("delta0_real_sphere", 1.0), ("delta0_certificate", 2f64.sqrt())],
    }
}

fn heis5() -> CatalogEntry {
    // x1, x2, y1, y2, z with [x_i, y_i] = z.
    let mut sc = StructureConstants::zeros(5);
    sc.set_bracket(0, 2, 4, 1.0);
    sc.set_bracket(1, 3, 4, 1.0);
    CatalogEntry {
        id: "heis5",
        algebra: LieAlgebra::with_identity_metric("heis5", sc),
        traits: vec![Trait::Nilpotent(2), Trait::Solvable],
        known_facts: vec![("delta0_certificate", 2.0)],
    }
}

fn sl2() -> CatalogEntry {
    // H, E, F with [H,E] = 2E, [H,F] = -2F, [E,F] = H.
    let mut sc = StructureConstants::zeros(3);
    sc.set_bracket(0, 1, 1, 2.0);
    sc.set_bracket(0, 2, 2, -2.0);
    sc.set_bracket(1, 2, 0, 1.0);
    CatalogEntry {
        id: "sl2",
        algebra: LieAlgebra::with_identity_metric("sl2", sc),
        traits: vec![Trait::Semisimple],
        known_facts: vec![("delta0_real_sphere", 2.0), ("delta0_certificate", 18f64.sqrt())],
    }
}

fn so3() -> CatalogEntry {
    let mut sc = StructureConstants::zeros(3);
    sc.set_bracket(0, 1, 2, 1.0);
    sc.set_bracket(1, 2, 0, 1.0);
    sc.set_bracket(2, 0, 1, 1.0);
    CatalogEntry {
        id: "so3",
        algebra: LieAlgebra::with_identity_metric("so3", sc),
        traits: vec![Trait::Semisimple, Trait::CompactType],
        known_facts: vec![("delta0_real_sphere", 1.0), ("delta0_certificate", 6f64.sqrt())],
    }
}

/// Strictly upper-triangular 4×4 matrices; basis E12, E13, E14, E23, E24, E34.
fn n4() -> CatalogEntry {
    let pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
    let index = |p: (usize, usize)| pairs.iter().position(|&q| q == p);
    let mut sc = StructureConstants::zeros(pairs.len());
    for (a, &(i, j)) in pairs.iter().enumerate() {
        for (b, &(k, l)) in pairs.iter().enumerate() {
            // [E_ij, E_kl] = δ_jk E_il - δ_li E_kj
            if j == k {
                let c = index((i, l)).expect("i < l");
                sc.set(a, b, c, sc.get(a, b, c) + 1.0);
            }
            if l == i {
                let c = index((k, j)).expect("k < j");
                sc.set(a, b, c, sc.get(a, b, c) - 1.0);
            }
        }
    }
    CatalogEntry {
        id: "n4",
        algebra: LieAlgebra::with_identity_metric("n4", sc),
        traits: vec![Trait::Nilpotent(3), Trait::Solvable],
        known_facts: vec![],
    }
}

fn aff1() -> CatalogEntry {
    let mut sc = StructureConstants::zeros(2);
    sc.set_bracket(0, 1, 1, 1.0);
    CatalogEntry {
        id: "aff1",
        algebra: LieAlgebra::with_identity_metric("aff1", sc),
        traits: vec![Trait::Solvable],
        known_facts: vec![("delta0_certificate", 2f64.sqrt())],
    }
}

fn heis3_plus_r() -> CatalogEntry {
    let mut sc = StructureConstants::zeros(4);
    sc.set_bracket(0, 1, 2, 1.0);
    CatalogEntry {
        id: "heis3_r",
        algebra: LieAlgebra::with_identity_metric("heis3_r", sc),
        traits: vec![Trait::Nilpotent(2), Trait::Solvable],
        known_facts: vec![("delta0_certificate", 2f64.sqrt())],
    }
}

pub fn catalog() -> Vec<CatalogEntry> {
    let mut out: Vec<CatalogEntry> = (1..=4).map(abelian).collect();
    out.extend([heis3(), heis5(), sl2(), so3(), n4(), aff1(), heis3_plus_r()]);
    out
}

pub fn ids() -> Vec<&'static str> {
    catalog().into_iter().map(|e| e.id).collect()
}

pub fn by_id(id: &str) -> Result<CatalogEntry> {
    catalog()
        .into_iter()
        .find(|e| e.id == id)
        .ok_or_else(|| Error::UnknownAlgebra(id.to_string()))
}
