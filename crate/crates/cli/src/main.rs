// Copyright 2026 liedexp contributors
// SPDX-License-Identifier: Apache-2.0

//! `liedexp`: bounds on the differential of the Lie exponential map.
//!
//! Exit codes: 0 success, 1 a check failed (validation or verification),
//! 2 bad input or usage.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use liedexp::harness::catalog::{self, CatalogEntry};
use liedexp::harness::{run_suite_with, Suite, SuiteOptions};
use liedexp::sweep::{self, Scale, SweepRow};
use liedexp::{BoundReport, Error, LieAlgebra, Tolerances};
use nalgebra::DVector;
use serde_json::json;

#[derive(Parser)]
#[command(
    name = "liedexp",
    version,
    about = "Extremes and bounds for |d exp_x(y)| on real Lie algebras"
)]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GlobalOpts {
    /// Seed for randomized suites.
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    /// Emit JSON.
    #[arg(long, global = true, conflicts_with = "csv")]
    json: bool,
    /// Emit CSV.
    #[arg(long, global = true)]
    csv: bool,
    /// Tolerance overrides as key=value, comma separated or repeated.
    /// Keys: kappa_max, nonzero_eigenvalue, nilpotent_rel, bound_rel, delta0_budget.
    #[arg(long, global = true, value_delimiter = ',')]
    tol_overrides: Vec<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Check antisymmetry and the Jacobi identity of an algebra file.
    Validate { path: PathBuf },
    /// Summarize an algebra: dimension, validation, δ₀ estimate, nilpotency.
    Info {
        /// Algebra file or catalog id.
        algebra: String,
        #[arg(long)]
        delta0_budget: Option<usize>,
    },
    /// Exact extremes and every applicable bound at one x.
    Bounds {
        /// Algebra file or catalog id.
        algebra: String,
        /// Comma-separated coefficients in the algebra's input basis.
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long)]
        delta0_budget: Option<usize>,
    },
    /// Evaluate the bounds along the ray t·x̂ and emit CSV.
    Sweep {
        /// Algebra file or catalog id.
        algebra: String,
        /// Direction in the input basis; normalized if not unit length.
        #[arg(long, allow_hyphen_values = true)]
        x_hat: String,
        #[arg(long)]
        t_min: f64,
        #[arg(long)]
        t_max: f64,
        #[arg(long, default_value_t = 50)]
        steps: usize,
        /// linear or log
        #[arg(long, default_value = "linear")]
        scale: String,
        /// Write to this file instead of standard output.
        #[arg(long, short)]
        output: Option<PathBuf>,
        #[arg(long)]
        delta0_budget: Option<usize>,
    },
    /// Run a randomized property suite.
    Verify {
        /// Suite id (see `liedexp verify --list`).
        suite: Option<String>,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        /// Restrict catalog-based suites to these ids.
        #[arg(long, value_delimiter = ',')]
        algebras: Option<Vec<String>>,
        /// List suite ids and exit.
        #[arg(long)]
        list: bool,
    },
    /// List the built-in algebras or export one as JSON.
    Catalog {
        /// Export this catalog id instead of listing.
        #[arg(long)]
        export: Option<String>,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}

/// A failure carrying its exit code.
struct Fail {
    code: u8,
    message: String,
}

impl Fail {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::usage(e.to_string())
    }
}

impl From<io::Error> for Fail {
    fn from(e: io::Error) -> Self {
        Fail::usage(e.to_string())
    }
}

type CmdResult = Result<u8, Fail>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: Cli) -> CmdResult {
    let g = &cli.global;
    let mut tol = Tolerances::default();
    tol.apply_overrides(g.tol_overrides.iter().map(String::as_str))?;
    match cli.command {
        Command::Validate { path } => cmd_validate(&path, g),
        Command::Info { algebra, delta0_budget } => cmd_info(&algebra, delta0_budget.unwrap_or(tol.delta0_budget), g),
        Command::Bounds {
            algebra,
            x,
            delta0_budget,
        } => cmd_bounds(&algebra, &x, delta0_budget.unwrap_or(tol.delta0_budget), &tol, g),
        Command::Sweep {
            algebra,
            x_hat,
            t_min,
            t_max,
            steps,
            scale,
            output,
            delta0_budget,
        } => {
            let scale: Scale = scale.parse()?;
            let grid = sweep::grid(t_min, t_max, steps, scale)?;
            cmd_sweep(
                &algebra,
                &x_hat,
                &grid,
                output.as_deref(),
                delta0_budget.unwrap_or(tol.delta0_budget),
                &tol,
                g,
            )
        }
        Command::Verify {
            suite,
            trials,
            algebras,
            list,
        } => cmd_verify(suite, trials, algebras, list, tol, g),
        Command::Catalog { export, output } => cmd_catalog(export, output.as_deref(), g),
    }
}

/// Resolves a path to an algebra file, falling back to a catalog id.
fn load_algebra(spec: &str) -> Result<(LieAlgebra, Option<CatalogEntry>), Fail> {
    let path = Path::new(spec);
    if path.is_file() {
        let text = fs::read_to_string(path)?;
        return Ok((LieAlgebra::from_json_str(&text)?, None));
    }
    match catalog::by_id(spec) {
        Ok(entry) => Ok((entry.algebra.clone(), Some(entry))),
        Err(_) => Err(Fail::usage(format!(
            "'{spec}' is neither a readable file nor a catalog id ({})",
            catalog::ids().join(", ")
        ))),
    }
}

fn load_valid_algebra(spec: &str) -> Result<(LieAlgebra, Option<CatalogEntry>), Fail> {
    let (alg, entry) = load_algebra(spec)?;
    let report = alg.validate();
    if !report.is_ok() {
        return Err(Fail::usage(format!(
            "algebra '{}' fails validation with {} violation(s); run `liedexp validate` for details",
            alg.name(),
            report.violations.len()
        )));
    }
    Ok((alg, entry))
}

fn parse_vector(text: &str, dim: usize) -> Result<DVector<f64>, Fail> {
    let values = text
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|e| Fail::usage(format!("bad coefficient '{s}': {e}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    if values.len() != dim {
        return Err(Fail::usage(format!(
            "vector has {} entries, algebra has dimension {dim}",
            values.len()
        )));
    }
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Fail::usage("vector entries must be finite"));
    }
    Ok(DVector::from_vec(values))
}

fn print_json(value: &serde_json::Value) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("JSON value serialises")
    );
}

fn cmd_validate(path: &Path, g: &GlobalOpts) -> CmdResult {
    let text = fs::read_to_string(path)?;
    let alg = LieAlgebra::from_json_str(&text)?;
    let report = alg.validate();
    if g.json {
        print_json(
            &json!({ "name": alg.name(), "dim": alg.dim(), "ok": report.is_ok(), "violations": report.violations }),
        );
    } else if report.is_ok() {
        println!("{}: ok (dim {})", alg.name(), alg.dim());
    } else {
        println!("{}: {} violation(s)", alg.name(), report.violations.len());
        for v in &report.violations {
            println!("  {v}");
        }
    }
    Ok(if report.is_ok() { 0 } else { 1 })
}

fn cmd_info(spec: &str, budget: usize, g: &GlobalOpts) -> CmdResult {
    let (alg, entry) = load_algebra(spec)?;
    let report = alg.validate();
    let delta0 = if report.is_ok() {
        Some(alg.delta_zero(budget)?)
    } else {
        None
    };
    let step = alg.exact_nilpotency_step();
    let traits: Vec<String> = entry
        .iter()
        .flat_map(|e| e.traits.iter().map(ToString::to_string))
        .collect();
    if g.json {
        print_json(&json!({
            "name": alg.name(),
            "dim": alg.dim(),
            "valid": report.is_ok(),
            "abelian": alg.is_abelian(),
            "identity_gram": alg.inner_product().is_identity(),
            "nilpotency_step": step.flatten(),
            "delta0": delta0,
            "traits": traits,
        }));
        return Ok(0);
    }
    println!("name: {}", alg.name());
    println!("dim: {}", alg.dim());
    println!("valid: {}", report.is_ok());
    println!("abelian: {}", alg.is_abelian());
    println!(
        "gram: {}",
        if alg.inner_product().is_identity() {
            "identity"
        } else {
            "custom"
        }
    );
    match step {
        Some(Some(p)) => println!("nilpotent: step {p} (exact)"),
        Some(None) => println!("nilpotent: no (exact)"),
        None => println!("nilpotent: not decided (non-integer structure constants)"),
    }
    if let Some(d) = delta0 {
        println!(
            "delta0: lower {:.12} upper {:.12} (budget {budget}, converged {})",
            d.lower, d.upper, d.converged
        );
    }
    if !traits.is_empty() {
        println!("traits: {}", traits.join(", "));
    }
    Ok(0)
}

fn cmd_bounds(spec: &str, x_text: &str, budget: usize, tol: &Tolerances, g: &GlobalOpts) -> CmdResult {
    let (alg, _) = load_valid_algebra(spec)?;
    let x_input = parse_vector(x_text, alg.dim())?;
    if x_input.iter().all(|v| *v == 0.0) {
        if g.json {
            print_json(&json!({ "algebra": alg.name(), "trivial": true, "message": "d exp₀ is the identity" }));
        } else {
            println!("d exp₀ is the identity");
        }
        return Ok(0);
    }
    let x = alg.to_orthonormal(&x_input);
    let delta0 = alg.delta_zero(budget)?;
    let report = BoundReport::compute(&alg, &x, delta0.upper, tol)?;
    if g.json {
        let mut value = serde_json::to_value(&report).expect("report serialises");
        value["x_input"] = json!(x_input.iter().collect::<Vec<_>>());
        value["delta0_lower"] = json!(delta0.lower);
        value["violations"] = json!(report.violations(tol.bound_rel));
        print_json(&value);
    } else if g.csv {
        sweep::write_csv(&[SweepRow::from_report(report.x_norm, &report)], io::stdout().lock())?;
    } else {
        print_bounds_text(&report, delta0.lower);
    }
    Ok(0)
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map_or_else(|| "n/a".to_string(), |v| format!("{v:.12}"))
}

fn print_bounds_text(r: &BoundReport, delta0_lower: f64) {
    println!("algebra: {}", r.algebra);
    println!("|x|: {:.12}", r.x_norm);
    println!("exact min |d exp_x(y)|: {:.12}", r.exact_min);
    println!("exact max |d exp_x(y)|: {:.12}", r.exact_max);
    println!(
        "lambda~ min/max: {:.12} / {:.12}",
        r.lambda_tilde_min, r.lambda_tilde_max
    );
    println!("nonzero eigenvalues of ad_x̂: {}", r.p_nonzero);
    if r.diagonalizable {
        println!(
            "eigenvalue bounds: C = {:.6} D = {:.6} kappa = {:.6}",
            r.thm1_c.unwrap_or(f64::NAN),
            r.thm1_d.unwrap_or(f64::NAN),
            r.kappa
        );
    } else {
        println!("eigenvalue bounds: n/a (ad_x̂ not certified diagonalizable)");
    }
    println!("  lower {}  upper {}", fmt_opt(r.thm1_lower), fmt_opt(r.thm1_upper));
    println!("delta0: lower {delta0_lower:.12} upper {:.12}", r.delta0_upper);
    println!(
        "delta0 bounds: lower {:.12e} (log {:.12}) upper {:.12}",
        r.thm2_lower, r.thm2_lower_log, r.thm2_upper
    );
    match r.nilp_step {
        Some(p) => println!(
            "nilpotent bounds (step {p}): lower {} upper {}",
            fmt_opt(r.nilp_lower),
            fmt_opt(r.nilp_upper)
        ),
        None => println!("nilpotent bounds: n/a"),
    }
}

fn cmd_sweep(
    spec: &str,
    x_text: &str,
    grid: &[f64],
    output: Option<&Path>,
    budget: usize,
    tol: &Tolerances,
    g: &GlobalOpts,
) -> CmdResult {
    let (alg, _) = load_valid_algebra(spec)?;
    let dir = alg.to_orthonormal(&parse_vector(x_text, alg.dim())?);
    let delta0 = alg.delta_zero(budget)?;
    let result = sweep::sweep(&alg, &dir, grid, delta0.upper, tol)?;
    if let Some(norm) = result.renormalized_from {
        eprintln!("warning: direction has norm {norm}; normalized to unit length");
    }
    let mut buf = Vec::new();
    if g.json {
        serde_json::to_writer_pretty(&mut buf, &result.rows).expect("rows serialise");
        buf.push(b'\n');
    } else {
        sweep::write_csv(&result.rows, &mut buf)?;
    }
    match output {
        Some(path) => fs::write(path, &buf)?,
        None => io::stdout().lock().write_all(&buf)?,
    }
    Ok(0)
}

fn suite_list() -> String {
    Suite::ALL
        .iter()
        .map(|s| format!("  {:<17} {}", s.id(), s.description()))
        .collect::<Vec<_>>()
        .join("\n")
}

fn cmd_verify(
    suite: Option<String>,
    trials: usize,
    algebras: Option<Vec<String>>,
    list: bool,
    tolerances: Tolerances,
    g: &GlobalOpts,
) -> CmdResult {
    if list {
        println!("{}", suite_list());
        return Ok(0);
    }
    let Some(id) = suite else {
        return Err(Fail::usage(format!(
            "usage: liedexp verify <SUITE> [--trials N]\nsuites:\n{}",
            suite_list()
        )));
    };
    let suite: Suite = id.parse().map_err(|_| {
        Fail::usage(format!(
            "unknown suite '{id}'\nusage: liedexp verify <SUITE> [--trials N]\nsuites:\n{}",
            suite_list()
        ))
    })?;
    let opts = SuiteOptions { algebras, tolerances };
    let report = run_suite_with(suite, g.seed, trials, &opts)?;
    if g.json {
        println!("{}", report.to_json());
    } else {
        println!(
            "{}: seed {} trials {} evaluated {} skipped {} failures {} ({} ms)",
            report.suite,
            report.seed,
            report.trials,
            report.evaluated,
            report.skipped,
            report.failures.len(),
            report.wall_ms
        );
        for (name, r) in &report.max_residuals {
            println!("  max residual {name}: {r:.3e}");
        }
        for note in &report.notes {
            println!("  note: {note}");
        }
        for f in report.failures.iter().take(20) {
            println!(
                "  FAIL trial {} {} {}: {:.3e}",
                f.trial,
                f.algebra.as_deref().unwrap_or("-"),
                f.check,
                f.residual
            );
        }
    }
    Ok(if report.passed() { 0 } else { 1 })
}

fn cmd_catalog(export: Option<String>, output: Option<&Path>, g: &GlobalOpts) -> CmdResult {
    if let Some(id) = export {
        let entry = catalog::by_id(&id)?;
        let text = entry.algebra.to_json_string() + "\n";
        match output {
            Some(path) => fs::write(path, text)?,
            None => print!("{text}"),
        }
        return Ok(0);
    }
    let entries = catalog::catalog();
    if g.json {
        let list: Vec<_> = entries
            .iter()
            .map(|e| json!({ "id": e.id, "dim": e.algebra.dim(), "traits": e.traits.iter().map(ToString::to_string).collect::<Vec<_>>() }))
            .collect();
        print_json(&json!(list));
    } else {
        for e in &entries {
            let traits: Vec<String> = e.traits.iter().map(ToString::to_string).collect();
            println!("{:<10} dim {:<2} {}", e.id, e.algebra.dim(), traits.join(", "));
        }
    }
    Ok(0)
}
