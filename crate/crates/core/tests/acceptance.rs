// Copyright 2026 liedexp contributors
// SPDX-License-Identifier: Apache-2.0

//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use liedexp::bounds::corollary_decay;
use liedexp::harness::catalog::{by_id, catalog, Trait};
use liedexp::harness::{run_suite_with, PropertyRunReport, Suite, SuiteOptions};
use liedexp::{BoundReport, Tolerances};
use nalgebra::DVector;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

const SEED: u64 = 20260101;

struct Outcome {
    pass: bool,
    detail: String,
}

fn suite(s: Suite, trials: usize, algebras: Option<&[&str]>) -> PropertyRunReport {
    let opts = SuiteOptions {
        algebras: algebras.map(|a| a.iter().map(|s| s.to_string()).collect()),
        ..Default::default()
    };
    run_suite_with(s, SEED, trials, &opts).expect("suite runs")
}

fn residual_summary(r: &PropertyRunReport) -> String {
    r.max_residuals
        .iter()
        .map(|(k, v)| format!("{k}={v:.2e}"))
        .collect::<Vec<_>>()
        .join(" ")
}

fn suites_pass(reports: &[PropertyRunReport], limit: Option<Duration>, elapsed: Duration) -> Outcome {
    let failures: usize = reports.iter().map(|r| r.failures.len()).sum();
    let evaluated: usize = reports.iter().map(|r| r.evaluated).sum();
    let in_time = limit.is_none_or(|l| elapsed <= l);
    let mut detail = format!(
        "{evaluated} evaluated, {failures} failures, {:.1}s",
        elapsed.as_secs_f64()
    );
    for r in reports {
        detail.push_str(&format!("; {}: {}", r.suite, residual_summary(r)));
    }
    if let Some(r) = reports.iter().find(|r| !r.failures.is_empty()) {
        detail.push_str(&format!("; first failure {:?}", r.failures[0]));
    }
    Outcome {
        pass: failures == 0 && evaluated > 0 && in_time,
        detail,
    }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

fn eigenvalue_sandwich() -> Outcome {
    let (r, dt) = timed(|| suite(Suite::Thm1, 1000, Some(&["sl2", "so3", "aff1"])));
    let skipped_ok = r.skipped < r.trials * 3;
    let mut o = suites_pass(&[r], Some(Duration::from_secs(60)), dt);
    o.pass &= skipped_ok;
    o
}

fn delta_zero_bounds_and_sandwich() -> (Outcome, Outcome) {
    let (r2, dt2) = timed(|| suite(Suite::Thm2, 1000, None));
    let (r5, dt5) = timed(|| suite(Suite::Eq5, 1000, None));
    let every_algebra = r2.evaluated == 1000 * catalog().len();
    let mut o2 = suites_pass(&[r2], Some(Duration::from_secs(120)), dt2);
    o2.pass &= every_algebra;
    (o2, suites_pass(&[r5], None, dt5))
}

fn nilpotent() -> Outcome {
    let (r, dt) = timed(|| suite(Suite::Nilpotent, 1000, Some(&["heis3", "heis5", "n4", "heis3_r"])));
    let all = r.evaluated == 4000;
    let mut o = suites_pass(&[r], None, dt);
    o.pass &= all;
    o
}

fn ray_decay() -> Outcome {
    let alg = by_id("sl2").unwrap().algebra;
    let grid: Vec<f64> = (1..=50).map(f64::from).collect();
    let d = corollary_decay(
        &alg,
        &DVector::from_vec(vec![1.0, 0.0, 0.0]),
        &grid,
        &Tolerances::default(),
    )
    .expect("evaluates")
    .expect("ad_H is diagonalizable");
    let floor = -(-2f64).exp_m1() / 2.0;
    Outcome {
        pass: d.min_scaled >= 0.432 - 1e-6 && (d.min_scaled - floor).abs() <= 1e-6,
        detail: format!(
            "min t·sₙ = {:.9} at t = {}, floor {:.9}",
            d.min_scaled, d.witness_t, floor
        ),
    }
}

fn phi_engine() -> Outcome {
    let (r, dt) = timed(|| suite(Suite::PhiOracle, 500, None));
    suites_pass(&[r], None, dt)
}

fn spectral() -> Outcome {
    let (rs, dt) = timed(|| [Suite::Weyl, Suite::SpectralMapping, Suite::Minimax].map(|s| suite(s, 500, None)));
    suites_pass(&rs, None, dt)
}

fn goldens() -> Outcome {
    let tol = Tolerances::default();
    let mut problems = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);

    for entry in catalog().into_iter().filter(|e| e.has(Trait::Abelian)) {
        let n = entry.algebra.dim();
        for _ in 0..20 {
            let x = DVector::from_fn(n, |_, _| {
                let z: f64 = StandardNormal.sample(&mut rng);
                5.0 * z
            });
            let r = BoundReport::compute(&entry.algebra, &x, 0.0, &tol).unwrap();
            let ones = [
                Some(r.exact_min),
                Some(r.exact_max),
                Some(r.lambda_tilde_min),
                Some(r.lambda_tilde_max),
                r.thm1_lower,
                r.thm1_upper,
                Some(r.thm2_lower),
                Some(r.thm2_upper),
                r.nilp_lower,
                r.nilp_upper,
            ];
            if ones.iter().any(|v| !v.is_some_and(|v| (v - 1.0).abs() <= 1e-12)) {
                problems.push(format!("{}: {ones:?}", entry.id));
            }
        }
    }

    let check = |id: &str, min: f64, max: f64, tol_abs: f64, problems: &mut Vec<String>| {
        let alg = by_id(id).unwrap().algebra;
        let r = BoundReport::compute(
            &alg,
            &DVector::from_vec(vec![1.0, 0.0, 0.0]),
            alg.delta_zero_certificate(),
            &tol,
        )
        .unwrap();
        if (r.exact_min - min).abs() > tol_abs || (r.exact_max - max).abs() > tol_abs {
            problems.push(format!("{id}: ({}, {})", r.exact_min, r.exact_max));
        }
        (r.exact_min, r.exact_max)
    };
    let h = check("heis3", 0.780776, 1.280776, 1e-5, &mut problems);
    let s = check("sl2", 0.432332, 3.194528, 1e-6, &mut problems);
    Outcome {
        pass: problems.is_empty(),
        detail: format!(
            "heis3 ({:.6}, {:.6}), sl2 ({:.6}, {:.6}); {}",
            h.0,
            h.1,
            s.0,
            s.1,
            problems.join("; ")
        ),
    }
}

fn product_smallest_singular_value() -> Outcome {
    let (r, dt) = timed(|| suite(Suite::Lemma31, 200, None));
    suites_pass(&[r], None, dt)
}

fn determinism() -> Outcome {
    let mut differing = Vec::new();
    for s in Suite::ALL {
        let a = run_suite_with(s, 99, 100, &SuiteOptions::default()).unwrap();
        let b = run_suite_with(s, 99, 100, &SuiteOptions::default()).unwrap();
        if a.canonical_json() != b.canonical_json() {
            differing.push(s.id());
        }
    }
    Outcome {
        pass: differing.is_empty(),
        detail: if differing.is_empty() {
            format!("{} suites reproduce byte-for-byte", Suite::ALL.len())
        } else {
            format!("differing: {}", differing.join(", "))
        },
    }
}

fn main() -> ExitCode {
    let (c2, c3) = delta_zero_bounds_and_sandwich();
    let results = [
        ("eigenvalue sandwich on sl2, so3, aff1", eigenvalue_sandwich()),
        ("δ₀ two-sided bounds on the whole catalog", c2),
        ("sₙ ≤ λ̃_min and λ̃_max ≤ s₁ on the same sample", c3),
        ("nilpotent polynomial bounds", nilpotent()),
        ("ray decay floor along H in sl2", ray_decay()),
        ("φ engine against quadrature and the defining identity", phi_engine()),
        ("Weyl, determinant, spectral mapping, minimax", spectral()),
        ("closed-form goldens", goldens()),
        ("smallest singular value of a product", product_smallest_singular_value()),
        ("seeded determinism", determinism()),
    ];
    let mut all = true;
    for (i, (name, o)) in results.iter().enumerate() {
        all &= o.pass;
        println!(
            "criterion {:>2}: {} | {name} | {}",
            i + 1,
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        );
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
