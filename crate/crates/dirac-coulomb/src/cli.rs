//! Command-line plumbing: argument parsing, report assembly, serialization
//! (JSON / CSV / table), tolerance plumbing, and exit-code policy.
//!
//! Exit codes: 0 success, 1 domain error (bad physics inputs), 2 numerical
//! failure (root finding or integration), 3 validation-suite failure.
//!
//! Output is deterministic: identical configuration produces byte-identical
//! bytes (sorted JSON keys, no timestamps, fixed float formatting). Every
//! floating-point number in JSON and CSV is printed with 17 significant
//! digits, which round-trips f64 exactly.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::domain::{
    mixing_angle, validate_pair, Energy, Error, PhysicalParams, QuantumNumbers, Result,
    RotationCase,
};
use crate::flat::RadialState;
use crate::h3::{
    build_reduced_case1, build_six_point, exponents_six_point, h3_bound_states, reduce_case1,
    substitute_three_factor, H3Params,
};
use crate::heun::{
    heun_series, params_case1_full, params_case2_full, params_direct_full, polynomial_residual,
    spectrum_via_heun, ConfluentHeunParams, HeunRoute, RouteSubstitution,
};
use crate::kummer::spectrum_via_kummer;
use crate::ode::{integrate, shoot, ShootingProblem};
use crate::rational::ExponentPair;
use crate::spectra::{enumerate_levels, sommerfeld_energy, EnumerationReport, LevelRecord};

/// Environment variable that overrides the default agreement tolerance.
pub const TOL_ENV_VAR: &str = "DIRAC_COULOMB_TOL";
/// Default relative tolerance for cross-route agreement gates.
pub const DEFAULT_TOLERANCE: f64 = 1e-10;
/// Exact CSV header of the `levels` table.
pub const LEVELS_CSV_HEADER: &str =
    "two_j,parity,n,E_closed,E_kummer,E_heun_direct,E_heun_case1,E_heun_case2,max_residual";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
    Table,
}

/// Fully parsed run configuration: one command plus the shared output and
/// tolerance plumbing. Parsed values pass core validation before any
/// computation starts.
#[derive(Debug, Clone, Parser)]
#[command(
    name = "dirac-coulomb",
    version,
    about = "Bound states of a relativistic Coulomb problem: closed-form, confluent \
             hypergeometric, confluent Heun, and shooting routes, plus the hyperbolic-space \
             generalisation",
    disable_help_subcommand = true
)]
pub struct RunConfig {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Table)]
    pub format: OutputFormat,

    /// Write the report to this file instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    /// Relative tolerance for agreement gates (default 1e-10; the
    /// DIRAC_COULOMB_TOL environment variable overrides the default, and
    /// this flag overrides both).
    #[arg(long, global = true)]
    pub tol: Option<f64>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Enumerate bound levels by every analytic route and cross-validate.
    #[command(name = "levels")]
    Levels(LevelsArgs),

    /// Print the canonical confluent-Heun parameter bundle of each route at
    /// one energy.
    #[command(name = "heun-params")]
    HeunParams(HeunParamsArgs),

    /// Polynomial-termination residuals and series truncation ratios across
    /// radial indices.
    #[command(name = "heun-check")]
    HeunCheck(HeunCheckArgs),

    /// Singular-point exponent table of the hyperbolic-space equations.
    #[command(name = "h3-exponents")]
    H3Exponents(H3ExponentsArgs),

    /// Shooting search for hyperbolic-space bound states.
    #[command(name = "h3-spectrum")]
    H3Spectrum(H3SpectrumArgs),

    /// Run the full invariant suite and report pass/fail counts.
    #[command(name = "validate")]
    Validate(ValidateArgs),
}

#[derive(Debug, Clone, Args)]
pub struct LevelsArgs {
    #[arg(long, default_value_t = 1.0)]
    pub mass: f64,
    #[arg(long)]
    pub coupling: f64,
    /// Largest half-integer j to enumerate (0.5, 1.5, ...).
    #[arg(long = "j-max")]
    pub j_max: f64,
    /// Largest radial index n.
    #[arg(long = "n-max", default_value_t = 2)]
    pub n_max: u32,
}

#[derive(Debug, Clone, Args)]
pub struct HeunParamsArgs {
    #[arg(long, default_value_t = 1.0)]
    pub mass: f64,
    #[arg(long)]
    pub coupling: f64,
    /// 2j as an odd integer, keeping half-integer j exact.
    #[arg(long = "two-j", default_value_t = 1)]
    pub two_j: u32,
    /// Parity label, +1 or -1.
    #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
    pub parity: i8,
    /// Energy at which to evaluate the parameter bundles (0 < E < m).
    #[arg(long)]
    pub energy: f64,
}

#[derive(Debug, Clone, Args)]
pub struct HeunCheckArgs {
    #[arg(long, default_value_t = 1.0)]
    pub mass: f64,
    #[arg(long)]
    pub coupling: f64,
    #[arg(long = "two-j", default_value_t = 1)]
    pub two_j: u32,
    #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
    pub parity: i8,
    /// Check radial indices 0 ..= n-max.
    #[arg(long = "n-max", default_value_t = 4)]
    pub n_max: u32,
}

#[derive(Debug, Clone, Args)]
pub struct H3ExponentsArgs {
    #[arg(long, default_value_t = 1.0)]
    pub mass: f64,
    #[arg(long)]
    pub coupling: f64,
    #[arg(long = "two-j", default_value_t = 1)]
    pub two_j: u32,
    /// Energy at which to build the equations.
    #[arg(long)]
    pub energy: f64,
}

#[derive(Debug, Clone, Args)]
pub struct H3SpectrumArgs {
    #[arg(long, default_value_t = 1.0)]
    pub mass: f64,
    #[arg(long)]
    pub coupling: f64,
    #[arg(long = "two-j", default_value_t = 1)]
    pub two_j: u32,
    /// Energy bracket "lo,hi" to scan; repeatable. Defaults to the whole
    /// bound window (0, m - e).
    #[arg(long = "bracket")]
    pub brackets: Vec<String>,
}

#[derive(Debug, Clone, Args)]
pub struct ValidateArgs {
    /// Skip the integrator-backed suites (shooting and trajectory residual).
    #[arg(long, default_value_t = false)]
    pub quick: bool,
}

/// Everything `run` produces: the exit code, the serialized report (already
/// formatted), and an optional message for stderr.
#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub exit_code: i32,
    pub report: String,
    pub message: Option<String>,
}

/// Exit-code policy for library errors: domain errors (bad physics inputs,
/// unsupported regimes) exit 1; numerical failures (root finding, series,
/// integration) exit 2.
pub fn exit_code_for(error: &Error) -> i32 {
    match error {
        Error::CouplingTooLarge { .. }
        | Error::NonPositiveMass { .. }
        | Error::Domain(_)
        | Error::ApparentPointAtInfinity(_)
        | Error::GammaPole { .. }
        | Error::ComplexAuxiliaryPoints { .. } => 1,
        Error::NoRoot { .. }
        | Error::RecurrenceBreakdown { .. }
        | Error::StepUnderflow { .. }
        | Error::NonFiniteState { .. }
        | Error::NoSignChange { .. } => 2,
    }
}

/// Entry point used by the binary: parse argv, run, emit.
pub fn main_entry() -> i32 {
    let config = match RunConfig::try_parse() {
        Ok(c) => c,
        Err(e) => {
            // --help and --version are successful exits by convention; any
            // actual parse problem is a bad-input (domain-class) failure.
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return code;
        }
    };
    let outcome = run(&config);
    if let Some(msg) = &outcome.message {
        eprintln!("{msg}");
    }
    if !outcome.report.is_empty() {
        match &config.output {
            Some(path) => {
                if let Err(io_err) = std::fs::write(path, &outcome.report) {
                    eprintln!("error: could not write {}: {io_err}", path.display());
                    return 1;
                }
            }
            None => print!("{}", outcome.report),
        }
    }
    outcome.exit_code
}

/// Runs one parsed configuration and returns the exit code plus the
/// serialized report.
pub fn run(config: &RunConfig) -> RunOutcome {
    let tolerance = resolve_tolerance(config.tol);
    if !(tolerance > 0.0) || !tolerance.is_finite() {
        return RunOutcome {
            exit_code: 1,
            report: String::new(),
            message: Some(format!(
                "error: tolerance must be positive and finite, got {tolerance}"
            )),
        };
    }
    let result = match &config.command {
        Command::Levels(args) => run_levels(args, config.format, tolerance),
        Command::HeunParams(args) => run_heun_params(args, config.format, tolerance),
        Command::HeunCheck(args) => run_heun_check(args, config.format, tolerance),
        Command::H3Exponents(args) => run_h3_exponents(args, config.format, tolerance),
        Command::H3Spectrum(args) => run_h3_spectrum(args, config.format, tolerance),
        Command::Validate(args) => return run_validate(args, config.format, tolerance),
    };
    match result {
        Ok(report) => RunOutcome {
            exit_code: 0,
            report,
            message: None,
        },
        Err(e) => RunOutcome {
            exit_code: exit_code_for(&e),
            report: String::new(),
            message: Some(format!("error: {e}")),
        },
    }
}

fn resolve_tolerance(flag: Option<f64>) -> f64 {
    if let Some(t) = flag {
        return t;
    }
    if let Ok(raw) = std::env::var(TOL_ENV_VAR) {
        if let Ok(t) = raw.trim().parse::<f64>() {
            return t;
        }
    }
    DEFAULT_TOLERANCE
}

/// One f64 as a JSON number carrying 17 significant digits.
fn num(x: f64) -> Value {
    if x.is_finite() {
        let printed = format!("{x:.16e}");
        match printed.parse::<serde_json::Number>() {
            Ok(n) => Value::Number(n),
            Err(_) => Value::String(printed),
        }
    } else {
        Value::String(format!("{x}"))
    }
}

/// The same 17-significant-digit rendering for CSV and tables.
fn fnum(x: f64) -> String {
    format!("{x:.16e}")
}

fn json_report(meta_inputs: Value, tolerances: Value, levels: Value, diagnostics: Value) -> String {
    let mut meta = Map::new();
    meta.insert("inputs".to_string(), meta_inputs);
    meta.insert("tolerances".to_string(), tolerances);
    meta.insert(
        "version".to_string(),
        Value::String(env!("CARGO_PKG_VERSION").to_string()),
    );
    let root = json!({
        "meta": Value::Object(meta),
        "levels": levels,
        "diagnostics": diagnostics,
    });
    let mut text = serde_json::to_string_pretty(&root).expect("report serialization");
    text.push('\n');
    text
}

fn exponent_pair_json(pair: &ExponentPair) -> Value {
    match pair {
        ExponentPair::Real(lo, hi) => json!({"kind": "real", "low": num(*lo), "high": num(*hi)}),
        ExponentPair::Complex { re, im } => {
            json!({"kind": "complex", "re": num(*re), "im": num(*im)})
        }
        ExponentPair::Irregular => json!({"kind": "irregular"}),
    }
}

fn exponent_pair_text(pair: &ExponentPair) -> String {
    match pair {
        ExponentPair::Real(lo, hi) => format!("{lo:+.12} / {hi:+.12}"),
        ExponentPair::Complex { re, im } => format!("{re:+.12} +/- {im:.12} i"),
        ExponentPair::Irregular => "irregular".to_string(),
    }
}

// ---------------------------------------------------------------------------
// levels
// ---------------------------------------------------------------------------

fn level_json(rec: &LevelRecord) -> Value {
    json!({
        "two_j": rec.qn.two_j(),
        "parity": rec.qn.parity_delta(),
        "n": rec.qn.n_radial(),
        "E_closed": num(rec.energy_closed.value),
        "E_kummer": num(rec.energy_kummer.value),
        "E_heun_direct": num(rec.energy_heun_direct.value),
        "E_heun_case1": num(rec.energy_heun_case1.value),
        "E_heun_case2": num(rec.energy_heun_case2.value),
        "E_shooting": rec.energy_shooting.map_or(Value::Null, |e| num(e.value)),
        "max_residual": num(rec.max_cross_residual),
    })
}

fn levels_csv(report: &EnumerationReport) -> String {
    let mut out = String::new();
    out.push_str(LEVELS_CSV_HEADER);
    out.push('\n');
    for rec in &report.levels {
        let _ = writeln!(
            out,
            "{},{:+},{},{},{},{},{},{},{}",
            rec.qn.two_j(),
            rec.qn.parity_delta(),
            rec.qn.n_radial(),
            fnum(rec.energy_closed.value),
            fnum(rec.energy_kummer.value),
            fnum(rec.energy_heun_direct.value),
            fnum(rec.energy_heun_case1.value),
            fnum(rec.energy_heun_case2.value),
            fnum(rec.max_cross_residual),
        );
    }
    out
}

fn levels_table(report: &EnumerationReport) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:>5} {:>6} {:>3} {:>24} {:>24} {:>12}",
        "two_j", "parity", "n", "E_closed", "E_kummer_delta", "max_resid"
    );
    for rec in &report.levels {
        let _ = writeln!(
            out,
            "{:>5} {:>6} {:>3} {:>24.17} {:>24.3e} {:>12.3e}",
            rec.qn.two_j(),
            format!("{:+}", rec.qn.parity_delta()),
            rec.qn.n_radial(),
            rec.energy_closed.value,
            rec.energy_kummer.value - rec.energy_closed.value,
            rec.max_cross_residual,
        );
    }
    for note in &report.notes {
        let _ = writeln!(out, "note: {note}");
    }
    out
}

fn run_levels(args: &LevelsArgs, format: OutputFormat, tolerance: f64) -> Result<String> {
    let ph = PhysicalParams::new(args.mass, args.coupling)?;
    let report = enumerate_levels(&ph, args.j_max, args.n_max);
    if report.levels.is_empty() {
        // Nothing could be enumerated: surface the first reason as a domain
        // error instead of printing an empty table.
        let why = report
            .notes
            .first()
            .cloned()
            .unwrap_or_else(|| "no levels in the requested range".to_string());
        return Err(Error::Domain(why));
    }
    Ok(match format {
        OutputFormat::Csv => levels_csv(&report),
        OutputFormat::Table => levels_table(&report),
        OutputFormat::Json => {
            let levels: Vec<Value> = report.levels.iter().map(level_json).collect();
            let diagnostics: Vec<Value> = report
                .notes
                .iter()
                .map(|n| Value::String(n.clone()))
                .collect();
            json_report(
                json!({
                    "command": "levels",
                    "mass": num(args.mass),
                    "coupling": num(args.coupling),
                    "j_max": num(args.j_max),
                    "n_max": args.n_max,
                }),
                json!({"route_agreement": num(tolerance)}),
                Value::Array(levels),
                Value::Array(diagnostics),
            )
        }
    })
}

// ---------------------------------------------------------------------------
// heun-params
// ---------------------------------------------------------------------------

struct RouteBundle {
    route: &'static str,
    params: ConfluentHeunParams,
    substitution: RouteSubstitution,
}

fn route_bundles(
    qn: &QuantumNumbers,
    ph: &PhysicalParams,
    energy: Energy,
) -> Result<Vec<RouteBundle>> {
    let (p1, s1) = params_case1_full(qn, ph, energy)?;
    let (p2, s2) = params_case2_full(qn, ph, energy)?;
    let (pd, sd) = params_direct_full(qn, ph, energy)?;
    Ok(vec![
        RouteBundle {
            route: "case1",
            params: p1,
            substitution: s1,
        },
        RouteBundle {
            route: "case2",
            params: p2,
            substitution: s2,
        },
        RouteBundle {
            route: "direct",
            params: pd,
            substitution: sd,
        },
    ])
}

fn run_heun_params(args: &HeunParamsArgs, format: OutputFormat, tolerance: f64) -> Result<String> {
    let qn = QuantumNumbers::new(args.two_j, args.parity, 0)?;
    let ph = PhysicalParams::new(args.mass, args.coupling)?;
    validate_pair(&qn, &ph)?;
    let energy = Energy::bound(args.energy, ph.mass)?;
    let bundles = route_bundles(&qn, &ph, energy)?;

    Ok(match format {
        OutputFormat::Json => {
            let diagnostics: Vec<Value> = bundles
                .iter()
                .map(|b| {
                    json!({
                        "route": b.route,
                        "alpha": num(b.params.alpha),
                        "beta": num(b.params.beta),
                        "gamma": num(b.params.gamma),
                        "delta": num(b.params.delta),
                        "eta": num(b.params.eta),
                        "exponent_a": num(b.substitution.exponent_a),
                        "rate_b": num(b.substitution.rate_b),
                        "companion_point": b
                            .substitution
                            .companion_point
                            .map_or(Value::Null, num),
                    })
                })
                .collect();
            json_report(
                json!({
                    "command": "heun-params",
                    "mass": num(args.mass),
                    "coupling": num(args.coupling),
                    "two_j": args.two_j,
                    "parity": args.parity,
                    "energy": num(args.energy),
                }),
                json!({"route_agreement": num(tolerance)}),
                Value::Array(Vec::new()),
                Value::Array(diagnostics),
            )
        }
        OutputFormat::Csv => {
            let mut out = String::from(
                "route,alpha,beta,gamma,delta,eta,exponent_a,rate_b,companion_point\n",
            );
            for b in &bundles {
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{},{},{},{}",
                    b.route,
                    fnum(b.params.alpha),
                    fnum(b.params.beta),
                    fnum(b.params.gamma),
                    fnum(b.params.delta),
                    fnum(b.params.eta),
                    fnum(b.substitution.exponent_a),
                    fnum(b.substitution.rate_b),
                    b.substitution.companion_point.map_or(String::new(), fnum),
                );
            }
            out
        }
        OutputFormat::Table => {
            let mut out = String::new();
            let _ = writeln!(
                out,
                "{:>7} {:>22} {:>22} {:>7} {:>22} {:>22}",
                "route", "alpha", "beta", "gamma", "delta", "eta"
            );
            for b in &bundles {
                let _ = writeln!(
                    out,
                    "{:>7} {:>22.15e} {:>22.15e} {:>7.2} {:>22.15e} {:>22.15e}",
                    b.route,
                    b.params.alpha,
                    b.params.beta,
                    b.params.gamma,
                    b.params.delta,
                    b.params.eta,
                );
            }
            out
        }
    })
}

// ---------------------------------------------------------------------------
// heun-check
// ---------------------------------------------------------------------------

struct CheckRow {
    route: &'static str,
    n: u32,
    energy: f64,
    residual: f64,
    truncation_ratio: f64,
}

fn truncation_ratio(params: &ConfluentHeunParams, n: u32) -> Result<f64> {
    let series = heun_series(params, n as usize + 1)?;
    let head_max = series.coefficients[..=n as usize]
        .iter()
        .fold(0.0_f64, |acc, c| acc.max(c.abs()));
    Ok(series.coefficients[n as usize + 1].abs() / head_max)
}

fn run_heun_check(args: &HeunCheckArgs, format: OutputFormat, tolerance: f64) -> Result<String> {
    let qn = QuantumNumbers::new(args.two_j, args.parity, 0)?;
    let ph = PhysicalParams::new(args.mass, args.coupling)?;
    validate_pair(&qn, &ph)?;

    let mut rows: Vec<CheckRow> = Vec::new();
    for n in 0..=args.n_max {
        let energy = sommerfeld_energy(&qn, &ph, n)?;
        let bundles = route_bundles(&qn, &ph, energy)?;
        for b in &bundles {
            rows.push(CheckRow {
                route: b.route,
                n,
                energy: energy.value,
                residual: polynomial_residual(&b.params, n),
                truncation_ratio: truncation_ratio(&b.params, n)?,
            });
        }
    }

    Ok(match format {
        OutputFormat::Json => {
            let diagnostics: Vec<Value> = rows
                .iter()
                .map(|r| {
                    json!({
                        "route": r.route,
                        "n": r.n,
                        "energy": num(r.energy),
                        "polynomial_residual": num(r.residual),
                        "truncation_ratio": num(r.truncation_ratio),
                    })
                })
                .collect();
            json_report(
                json!({
                    "command": "heun-check",
                    "mass": num(args.mass),
                    "coupling": num(args.coupling),
                    "two_j": args.two_j,
                    "parity": args.parity,
                    "n_max": args.n_max,
                }),
                json!({"route_agreement": num(tolerance)}),
                Value::Array(Vec::new()),
                Value::Array(diagnostics),
            )
        }
        OutputFormat::Csv => {
            let mut out = String::from("route,n,energy,polynomial_residual,truncation_ratio\n");
            for r in &rows {
                let _ = writeln!(
                    out,
                    "{},{},{},{},{}",
                    r.route,
                    r.n,
                    fnum(r.energy),
                    fnum(r.residual),
                    fnum(r.truncation_ratio),
                );
            }
            out
        }
        OutputFormat::Table => {
            let mut out = String::new();
            let _ = writeln!(
                out,
                "{:>7} {:>3} {:>22} {:>14} {:>14}",
                "route", "n", "energy", "poly_residual", "trunc_ratio"
            );
            for r in &rows {
                let _ = writeln!(
                    out,
                    "{:>7} {:>3} {:>22.15e} {:>14.3e} {:>14.3e}",
                    r.route, r.n, r.energy, r.residual, r.truncation_ratio,
                );
            }
            out
        }
    })
}

// ---------------------------------------------------------------------------
// h3-exponents
// ---------------------------------------------------------------------------

fn run_h3_exponents(
    args: &H3ExponentsArgs,
    format: OutputFormat,
    tolerance: f64,
) -> Result<String> {
    let qn = QuantumNumbers::new(args.two_j, 1, 0)?;
    let ph = PhysicalParams::new(args.mass, args.coupling)?;
    let energy = Energy::new(args.energy);
    let params = H3Params::build(&qn, &ph, energy)?;
    let eq = build_six_point(&qn, &ph, energy)?;
    let set = exponents_six_point(&eq);
    let reduced = build_reduced_case1(&qn, &ph, energy)?;

    Ok(match format {
        OutputFormat::Json => {
            let diagnostics = json!([{
                "sigma": num(params.sigma),
                "z0": num(params.z0),
                "z1": num(eq.z1),
                "z2": num(eq.z2),
                "nu_eff": num(params.nu_eff),
                "a_res": num(eq.a_res),
                "b_res": num(eq.b_res),
                "c_const": num(eq.c_const),
                "d_const": num(eq.d_const),
                "exponents": {
                    "at_zero": exponent_pair_json(&set.at_zero),
                    "at_plus_one": exponent_pair_json(&set.at_plus_one),
                    "at_minus_one": exponent_pair_json(&set.at_minus_one),
                    "at_infinity": exponent_pair_json(&set.at_infinity),
                    "at_artifact_points": {"kind": "real", "low": num(0.0), "high": num(2.0)},
                },
                "reduced": {
                    "at_zero_low": num(set.reduced_at_zero.1),
                    "at_zero_high": num(set.reduced_at_zero.0),
                    "m_exp": set.m_exp.map_or(Value::Null, num),
                    "n_exp": set.n_exp.map_or(Value::Null, num),
                    "m_exp_sq": num(reduced.m_exp_sq),
                    "n_exp_sq": num(reduced.n_exp_sq),
                    "k_at_zero": num(reduced.k_at_zero),
                    "k_at_z0": num(reduced.k_at_z0),
                    "k_at_plus_one": num(reduced.k_at_plus_one),
                    "k_at_minus_one": num(reduced.k_at_minus_one),
                },
                "bound_branch_at_plus_one": set.bound_branch_at_plus_one,
            }]);
            json_report(
                json!({
                    "command": "h3-exponents",
                    "mass": num(args.mass),
                    "coupling": num(args.coupling),
                    "two_j": args.two_j,
                    "energy": num(args.energy),
                }),
                json!({"route_agreement": num(tolerance)}),
                Value::Array(Vec::new()),
                diagnostics,
            )
        }
        OutputFormat::Csv => {
            let pair_csv = |pair: &ExponentPair| -> (String, String, String) {
                match pair {
                    ExponentPair::Real(lo, hi) => ("real".into(), fnum(*lo), fnum(*hi)),
                    ExponentPair::Complex { re, im } => ("complex".into(), fnum(*re), fnum(*im)),
                    ExponentPair::Irregular => ("irregular".into(), String::new(), String::new()),
                }
            };
            let mut out = String::from("location,kind,low_or_re,high_or_im\n");
            for (loc, pair) in [
                ("0", &set.at_zero),
                ("+1", &set.at_plus_one),
                ("-1", &set.at_minus_one),
                ("infinity", &set.at_infinity),
            ] {
                let (kind, a, b) = pair_csv(pair);
                let _ = writeln!(out, "{loc},{kind},{a},{b}");
            }
            let _ = writeln!(out, "artifact,real,{},{}", fnum(0.0), fnum(2.0));
            let _ = writeln!(
                out,
                "reduced_0,real,{},{}",
                fnum(set.reduced_at_zero.1),
                fnum(set.reduced_at_zero.0)
            );
            out
        }
        OutputFormat::Table => {
            let mut out = String::new();
            let _ = writeln!(
                out,
                "sigma = {:.12}, z1 = {:.12}, z2 = {:.12}, z0 = {:.12}",
                params.sigma, eq.z1, eq.z2, params.z0
            );
            let _ = writeln!(
                out,
                "A_res = {:.12}, B_res = {:.12}, C = {:.12}, D = {:.12}",
                eq.a_res, eq.b_res, eq.c_const, eq.d_const
            );
            for (loc, pair) in [
                ("z = 0", &set.at_zero),
                ("z = +1", &set.at_plus_one),
                ("z = -1", &set.at_minus_one),
                ("z = inf", &set.at_infinity),
            ] {
                let _ = writeln!(out, "{loc:>8}: {}", exponent_pair_text(pair));
            }
            let _ = writeln!(out, "z1, z2 : +0.000000000000 / +2.000000000000 (artifact)");
            let _ = writeln!(
                out,
                "reduced : {:+.12} / {:+.12} at 0; decay {} at +1",
                set.reduced_at_zero.1,
                set.reduced_at_zero.0,
                set.m_exp
                    .map_or("none".to_string(), |m| format!("{m:+.12}")),
            );
            out
        }
    })
}

// ---------------------------------------------------------------------------
// h3-spectrum
// ---------------------------------------------------------------------------

fn parse_bracket(raw: &str) -> Result<(f64, f64)> {
    let parts: Vec<&str> = raw.split(',').collect();
    if parts.len() != 2 {
        return Err(Error::Domain(format!(
            "bracket must be \"lo,hi\", got \"{raw}\""
        )));
    }
    let lo = parts[0].trim().parse::<f64>();
    let hi = parts[1].trim().parse::<f64>();
    match (lo, hi) {
        (Ok(lo), Ok(hi)) => Ok((lo, hi)),
        _ => Err(Error::Domain(format!(
            "bracket endpoints must be numbers, got \"{raw}\""
        ))),
    }
}

fn run_h3_spectrum(args: &H3SpectrumArgs, format: OutputFormat, tolerance: f64) -> Result<String> {
    let qn = QuantumNumbers::new(args.two_j, 1, 0)?;
    let ph = PhysicalParams::new(args.mass, args.coupling)?;
    validate_pair(&qn, &ph)?;
    let window_hi = ph.mass - ph.coupling;
    if window_hi <= 0.0 {
        return Err(Error::Domain(format!(
            "bound window (0, m - e) is empty: m = {}, e = {}",
            ph.mass, ph.coupling
        )));
    }

    let brackets: Vec<(f64, f64)> = if args.brackets.is_empty() {
        let margin = 1e-6 * ph.mass;
        vec![(margin, window_hi - margin)]
    } else {
        args.brackets
            .iter()
            .map(|raw| parse_bracket(raw))
            .collect::<Result<Vec<_>>>()?
    };

    let scans = h3_bound_states(&qn, &ph, &brackets);

    // Empty brackets are ordinary results; anything else decides the exit
    // code, so surface the first real error.
    for scan in &scans {
        if let Err(e) = &scan.outcome {
            if !matches!(e, Error::NoSignChange { .. }) {
                return Err(e.clone());
            }
        }
    }

    Ok(match format {
        OutputFormat::Json => {
            let diagnostics: Vec<Value> = scans
                .iter()
                .map(|scan| {
                    let (status, energy, message) = match &scan.outcome {
                        Ok(e) => ("bound", num(e.value), Value::Null),
                        Err(err) => ("empty", Value::Null, Value::String(err.to_string())),
                    };
                    json!({
                        "bracket_lo": num(scan.bracket.0),
                        "bracket_hi": num(scan.bracket.1),
                        "status": status,
                        "energy": energy,
                        "message": message,
                    })
                })
                .collect();
            json_report(
                json!({
                    "command": "h3-spectrum",
                    "mass": num(args.mass),
                    "coupling": num(args.coupling),
                    "two_j": args.two_j,
                }),
                json!({"shooting_energy_rel": num(1e-9), "route_agreement": num(tolerance)}),
                Value::Array(Vec::new()),
                Value::Array(diagnostics),
            )
        }
        OutputFormat::Csv => {
            let mut out = String::from("bracket_lo,bracket_hi,status,energy\n");
            for scan in &scans {
                let (status, energy) = match &scan.outcome {
                    Ok(e) => ("bound", fnum(e.value)),
                    Err(_) => ("empty", String::new()),
                };
                let _ = writeln!(
                    out,
                    "{},{},{status},{energy}",
                    fnum(scan.bracket.0),
                    fnum(scan.bracket.1),
                );
            }
            out
        }
        OutputFormat::Table => {
            let mut out = String::new();
            let _ = writeln!(
                out,
                "{:>22} {:>22} {:>8} {:>24}",
                "bracket_lo", "bracket_hi", "status", "energy"
            );
            for scan in &scans {
                let (status, energy) = match &scan.outcome {
                    Ok(e) => ("bound", format!("{:.17}", e.value)),
                    Err(_) => ("empty", "-".to_string()),
                };
                let _ = writeln!(
                    out,
                    "{:>22.15e} {:>22.15e} {status:>8} {energy:>24}",
                    scan.bracket.0, scan.bracket.1,
                );
            }
            out
        }
    })
}

// ---------------------------------------------------------------------------
// validate
// ---------------------------------------------------------------------------

struct SuiteResult {
    name: &'static str,
    checks: usize,
    failures: usize,
    worst: f64,
    gate: f64,
}

struct SuiteRecorder {
    name: &'static str,
    gate: f64,
    checks: usize,
    failures: usize,
    worst: f64,
}

impl SuiteRecorder {
    fn new(name: &'static str, gate: f64) -> Self {
        Self {
            name,
            gate,
            checks: 0,
            failures: 0,
            worst: 0.0,
        }
    }

    /// Records one residual against the suite gate.
    fn check(&mut self, residual: f64) {
        self.checks += 1;
        if !(residual <= self.gate) {
            self.failures += 1;
        }
        if residual.is_nan() {
            self.worst = f64::NAN;
        } else {
            self.worst = self.worst.max(residual);
        }
    }

    /// Records a hard failure (an operation that should have succeeded).
    fn fail(&mut self) {
        self.checks += 1;
        self.failures += 1;
        self.worst = f64::INFINITY;
    }

    fn finish(self) -> SuiteResult {
        SuiteResult {
            name: self.name,
            checks: self.checks,
            failures: self.failures,
            worst: self.worst,
            gate: self.gate,
        }
    }
}

/// Cross-route agreement of the analytic spectra on a coupling/channel grid.
fn suite_route_agreement(tolerance: f64) -> SuiteResult {
    let mut suite = SuiteRecorder::new("route_agreement", tolerance);
    for &coupling in &[0.1, 0.5] {
        for &two_j in &[1u32, 3] {
            let ph = PhysicalParams::new(1.0, coupling).expect("valid params");
            for n in 0..=2u32 {
                let qn = QuantumNumbers::new(two_j, 1, n).expect("valid labels");
                let closed = sommerfeld_energy(&qn, &ph, n);
                let kummer = spectrum_via_kummer(&qn, &ph, n);
                let heun: Result<Vec<Energy>> =
                    [HeunRoute::Case1, HeunRoute::Case2, HeunRoute::Direct]
                        .iter()
                        .map(|&r| spectrum_via_heun(r, &qn, &ph, n))
                        .collect();
                match (closed, kummer, heun) {
                    (Ok(c), Ok(k), Ok(h)) => {
                        let mut all = vec![c.value, k.value];
                        all.extend(h.iter().map(|e| e.value));
                        for i in 0..all.len() {
                            for j in i + 1..all.len() {
                                suite.check((all[i] - all[j]).abs() / all[i].abs());
                            }
                        }
                    }
                    _ => suite.fail(),
                }
            }
        }
    }
    suite.finish()
}

/// Polynomial termination at the closed-form energies (series truly
/// truncates for n >= 1 on this branch).
fn suite_heun_termination() -> SuiteResult {
    let mut suite = SuiteRecorder::new("heun_termination", 1e-9);
    let qn0 = QuantumNumbers::new(1, 1, 0).expect("valid labels");
    let ph = PhysicalParams::new(1.0, 0.5).expect("valid params");
    for n in 1..=3u32 {
        match sommerfeld_energy(&qn0, &ph, n) {
            Ok(energy) => match route_bundles(&qn0, &ph, energy) {
                Ok(bundles) => {
                    for b in &bundles {
                        let scale = b.params.alpha.abs().max(b.params.delta.abs()).max(1.0);
                        suite.check(polynomial_residual(&b.params, n).abs() / scale);
                        match truncation_ratio(&b.params, n) {
                            Ok(ratio) => suite.check(ratio),
                            Err(_) => suite.fail(),
                        }
                    }
                }
                Err(_) => suite.fail(),
            },
            Err(_) => suite.fail(),
        }
    }
    suite.finish()
}

/// Trigonometric closure of every rotation case.
fn suite_rotation_identities() -> SuiteResult {
    let mut suite = SuiteRecorder::new("rotation_identities", 1e-14);
    let qn = QuantumNumbers::new(1, 1, 0).expect("valid labels");
    let ph = PhysicalParams::new(1.0, 0.5).expect("valid params");
    for &case in &[
        RotationCase::Case1,
        RotationCase::Case1Prime,
        RotationCase::Case2,
        RotationCase::Case2Prime,
    ] {
        for &ev in &[0.2, 0.6, 0.95] {
            match mixing_angle(case, &qn, &ph, Energy::new(ev)) {
                Ok(a) => {
                    suite.check((a.sin_a * a.sin_a + a.cos_a * a.cos_a - 1.0).abs());
                    suite
                        .check((a.cos_half * a.cos_half - a.sin_half * a.sin_half - a.cos_a).abs());
                    suite.check((2.0 * a.sin_half * a.cos_half - a.sin_a).abs());
                }
                Err(_) => suite.fail(),
            }
        }
    }
    suite.finish()
}

/// Hyperbolic-space algebraic identities and double-pole cancellation of
/// both substitution routes on a deterministic grid.
fn suite_h3_identities() -> SuiteResult {
    let mut suite = SuiteRecorder::new("h3_identities", 1e-10);
    for &mass in &[0.7, 1.3] {
        for &coupling in &[0.2, 0.5] {
            for &frac in &[0.3, 0.8] {
                for &two_j in &[1u32, 3] {
                    let qn = QuantumNumbers::new(two_j, 1, 0).expect("valid labels");
                    let ph = PhysicalParams::new(mass, coupling).expect("valid params");
                    let ev = frac * (mass - coupling);
                    let energy = Energy::new(ev);
                    let eq = match build_six_point(&qn, &ph, energy) {
                        Ok(eq) => eq,
                        Err(_) => {
                            suite.fail();
                            continue;
                        }
                    };
                    let sigma = eq.params.sigma;
                    let nu = qn.nu_f();
                    suite.check((eq.z1 * eq.z2 - 1.0).abs());
                    suite
                        .check((eq.a_res + eq.b_res - 2.0 * sigma * nu).abs() / (2.0 * sigma * nu));
                    suite.check(
                        (eq.c_const - eq.d_const - 4.0 * ev * coupling).abs()
                            / (4.0 * ev * coupling).abs().max(1.0),
                    );

                    // Substitution route on the six-point equation.
                    let s = ph.exponent_s(&qn);
                    let mu = (-eq.c_const).sqrt();
                    let nu_exp = (-eq.d_const).sqrt();
                    let phi_eq = substitute_three_factor(&eq, s, mu, nu_exp);
                    let scale = eq.ode.q.magnitude().max(1.0);
                    for loc in [0.0, 1.0, -1.0] {
                        suite.check(phi_eq.q.c2_at(loc).abs() / scale);
                    }

                    // Substitution route on the angle-reduced equation.
                    match build_reduced_case1(&qn, &ph, energy) {
                        Ok(red) => {
                            let phi_red = reduce_case1(
                                &red,
                                red.params.nu_eff,
                                red.m_exp_sq.sqrt(),
                                red.n_exp_sq.sqrt(),
                            );
                            let scale_red = red.ode.q.magnitude().max(1.0);
                            for loc in [0.0, 1.0, -1.0, red.params.z0] {
                                suite.check(phi_red.q.c2_at(loc).abs() / scale_red);
                            }
                        }
                        Err(_) => suite.fail(),
                    }
                }
            }
        }
    }
    suite.finish()
}

/// Every emitted exponent pair zeroes its indicial polynomial.
fn suite_h3_exponent_residuals() -> SuiteResult {
    let mut suite = SuiteRecorder::new("h3_exponent_residuals", 1e-12);
    for &(mass, coupling, ev) in &[(1.0, 0.3, 0.5), (1.3, 0.5, 0.4), (0.7, 0.2, 0.45)] {
        let qn = QuantumNumbers::new(1, 1, 0).expect("valid labels");
        let ph = PhysicalParams::new(mass, coupling).expect("valid params");
        let energy = Energy::new(ev);
        match build_six_point(&qn, &ph, energy) {
            Ok(eq) => {
                for profile in &eq.ode.singular_points {
                    if let crate::rational::Location::Finite(loc) = profile.location {
                        suite.check(
                            profile
                                .exponents
                                .indicial_residual(eq.ode.p.c1_at(loc), eq.ode.q.c2_at(loc)),
                        );
                    }
                }
            }
            Err(_) => suite.fail(),
        }
        match build_reduced_case1(&qn, &ph, energy) {
            Ok(red) => {
                for profile in &red.ode.singular_points {
                    if let crate::rational::Location::Finite(loc) = profile.location {
                        suite.check(
                            profile
                                .exponents
                                .indicial_residual(red.ode.p.c1_at(loc), red.ode.q.c2_at(loc)),
                        );
                    }
                }
            }
            Err(_) => suite.fail(),
        }
    }
    suite.finish()
}

/// A numerical solution of the first-order z-system satisfies the
/// eliminated second-order equation.
fn suite_h3_consistency() -> SuiteResult {
    let mut suite = SuiteRecorder::new("h3_second_order_consistency", 1e-7);
    let qn = QuantumNumbers::new(1, 1, 0).expect("valid labels");
    let ph = PhysicalParams::new(1.0, 0.3).expect("valid params");
    let energy = Energy::new(0.5);
    let eq = match build_six_point(&qn, &ph, energy) {
        Ok(eq) => eq,
        Err(_) => {
            suite.fail();
            return suite.finish();
        }
    };
    let rhs = |z: f64, s: RadialState| crate::h3::rhs_h3_z(z, s, &qn, &ph, energy);
    match integrate(rhs, 0.1, 0.9, RadialState::new(1.0, 0.7), 1e-11) {
        Ok(trajectory) => {
            let (nu, e, m, ev) = (qn.nu_f(), ph.coupling, ph.mass, energy.value);
            for &(z, state) in &trajectory.nodes {
                let d = rhs(z, state);
                let a = -nu / z;
                let da = nu / (z * z);
                let b = -(e / z) + (ev + e + m) / (z - 1.0) - (ev - e + m) / (z + 1.0);
                let db = e / (z * z) - (ev + e + m) / ((z - 1.0) * (z - 1.0))
                    + (ev - e + m) / ((z + 1.0) * (z + 1.0));
                let d2f = da * state.f + a * d.f + db * state.g + b * d.g;
                suite.check(eq.ode.relative_residual(z, state.f, d.f, d2f));
            }
        }
        Err(_) => suite.fail(),
    }
    suite.finish()
}

/// Flat shooting reproduces the closed-form first excited level.
fn suite_flat_shooting() -> SuiteResult {
    let mut suite = SuiteRecorder::new("flat_shooting", 1e-6);
    let qn = QuantumNumbers::new(1, 1, 1).expect("valid labels");
    let ph = PhysicalParams::new(1.0, 0.5).expect("valid params");
    let problem = ShootingProblem::flat(qn, ph, (0.93, 0.99));
    match (shoot(&problem, 1e-12), sommerfeld_energy(&qn, &ph, 1)) {
        (Ok(found), Ok(closed)) => suite.check((found.value - closed.value).abs() / ph.mass),
        _ => suite.fail(),
    }
    suite.finish()
}

fn run_validate(args: &ValidateArgs, format: OutputFormat, tolerance: f64) -> RunOutcome {
    let mut suites = vec![
        suite_route_agreement(tolerance),
        suite_heun_termination(),
        suite_rotation_identities(),
        suite_h3_identities(),
        suite_h3_exponent_residuals(),
    ];
    if !args.quick {
        suites.push(suite_h3_consistency());
        suites.push(suite_flat_shooting());
    }

    let total_failures: usize = suites.iter().map(|s| s.failures).sum();
    let report = match format {
        OutputFormat::Json => {
            let diagnostics: Vec<Value> = suites
                .iter()
                .map(|s| {
                    json!({
                        "suite": s.name,
                        "checks": s.checks,
                        "failures": s.failures,
                        "worst_residual": num(s.worst),
                        "gate": num(s.gate),
                    })
                })
                .collect();
            json_report(
                json!({"command": "validate", "quick": args.quick}),
                json!({"route_agreement": num(tolerance)}),
                Value::Array(Vec::new()),
                Value::Array(diagnostics),
            )
        }
        OutputFormat::Csv => {
            let mut out = String::from("suite,checks,failures,worst_residual,gate\n");
            for s in &suites {
                let _ = writeln!(
                    out,
                    "{},{},{},{},{}",
                    s.name,
                    s.checks,
                    s.failures,
                    fnum(s.worst),
                    fnum(s.gate),
                );
            }
            out
        }
        OutputFormat::Table => {
            let mut out = String::new();
            let _ = writeln!(
                out,
                "{:>28} {:>7} {:>9} {:>13} {:>9}",
                "suite", "checks", "failures", "worst", "gate"
            );
            for s in &suites {
                let _ = writeln!(
                    out,
                    "{:>28} {:>7} {:>9} {:>13.3e} {:>9.1e}",
                    s.name, s.checks, s.failures, s.worst, s.gate,
                );
            }
            let _ = writeln!(
                out,
                "{}",
                if total_failures == 0 {
                    "all suites passed"
                } else {
                    "FAILURES PRESENT"
                }
            );
            out
        }
    };

    RunOutcome {
        exit_code: if total_failures == 0 { 0 } else { 3 },
        report,
        message: if total_failures == 0 {
            None
        } else {
            Some(format!("validation failed: {total_failures} check(s)"))
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config_from(args: &[&str]) -> RunConfig {
        RunConfig::try_parse_from(args).expect("arguments parse")
    }

    #[test]
    fn parses_the_documented_levels_invocation() {
        let cfg = config_from(&[
            "dirac-coulomb",
            "levels",
            "--mass",
            "1",
            "--coupling",
            "0.5",
            "--j-max",
            "0.5",
            "--n-max",
            "2",
            "--format",
            "csv",
        ]);
        assert_eq!(cfg.format, OutputFormat::Csv);
        match cfg.command {
            Command::Levels(args) => {
                assert_eq!(args.mass, 1.0);
                assert_eq!(args.coupling, 0.5);
                assert_eq!(args.j_max, 0.5);
                assert_eq!(args.n_max, 2);
            }
            other => panic!("wrong command parsed: {other:?}"),
        }
    }

    #[test]
    fn levels_csv_starts_with_the_exact_header() {
        let cfg = config_from(&[
            "dirac-coulomb",
            "levels",
            "--coupling",
            "0.5",
            "--j-max",
            "0.5",
            "--format",
            "csv",
        ]);
        let outcome = run(&cfg);
        assert_eq!(outcome.exit_code, 0);
        let first_line = outcome.report.lines().next().unwrap();
        assert_eq!(first_line, LEVELS_CSV_HEADER);
        // One row per (parity, n) pair: 2 * 3 = 6 data rows.
        assert_eq!(outcome.report.lines().count(), 7);
    }

    #[test]
    fn oversized_coupling_is_a_domain_failure() {
        let cfg = config_from(&[
            "dirac-coulomb",
            "levels",
            "--coupling",
            "1.5",
            "--j-max",
            "0.5",
        ]);
        let outcome = run(&cfg);
        assert_eq!(outcome.exit_code, 1);
        assert!(outcome.report.is_empty());
        let msg = outcome.message.unwrap();
        assert!(msg.contains("coupling 1.5 >= nu"), "message was: {msg}");
    }

    #[test]
    fn identical_configs_give_byte_identical_reports() {
        let args = [
            "dirac-coulomb",
            "levels",
            "--coupling",
            "0.3",
            "--j-max",
            "1.5",
            "--n-max",
            "1",
            "--format",
            "json",
        ];
        let first = run(&config_from(&args));
        let second = run(&config_from(&args));
        assert_eq!(first.report, second.report);
        assert_eq!(first.exit_code, 0);
    }

    #[test]
    fn json_numbers_carry_seventeen_digits_and_round_trip() {
        let cfg = config_from(&[
            "dirac-coulomb",
            "levels",
            "--coupling",
            "0.5",
            "--j-max",
            "0.5",
            "--n-max",
            "0",
            "--format",
            "json",
        ]);
        let outcome = run(&cfg);
        let root: Value = serde_json::from_str(&outcome.report).expect("valid JSON");
        assert!(root.get("meta").is_some());
        assert!(root.get("diagnostics").is_some());
        let levels = root["levels"].as_array().expect("levels array");
        assert_eq!(levels.len(), 2);
        let e_closed = levels[0]["E_closed"].as_f64().expect("number");
        let qn = QuantumNumbers::new(1, 1, 0).unwrap();
        let ph = PhysicalParams::new(1.0, 0.5).unwrap();
        let expected = sommerfeld_energy(&qn, &ph, 0).unwrap().value;
        assert_eq!(e_closed, expected, "17-digit JSON must round-trip exactly");
    }

    #[test]
    fn heun_params_reports_all_three_routes() {
        let cfg = config_from(&[
            "dirac-coulomb",
            "heun-params",
            "--coupling",
            "0.5",
            "--energy",
            "0.8660254037844386",
            "--format",
            "json",
        ]);
        let outcome = run(&cfg);
        assert_eq!(outcome.exit_code, 0);
        let root: Value = serde_json::from_str(&outcome.report).unwrap();
        let diags = root["diagnostics"].as_array().unwrap();
        let routes: Vec<&str> = diags.iter().map(|d| d["route"].as_str().unwrap()).collect();
        assert_eq!(routes, vec!["case1", "case2", "direct"]);
        for d in diags {
            assert_eq!(d["gamma"].as_f64().unwrap(), -2.0);
        }
    }

    #[test]
    fn out_of_window_energy_exits_one() {
        let cfg = config_from(&[
            "dirac-coulomb",
            "heun-params",
            "--coupling",
            "0.5",
            "--energy",
            "1.5",
        ]);
        let outcome = run(&cfg);
        assert_eq!(outcome.exit_code, 1);
    }

    #[test]
    fn bracket_strings_parse_or_reject() {
        assert_eq!(parse_bracket("0.1,0.9").unwrap(), (0.1, 0.9));
        assert_eq!(parse_bracket(" 0.5 , 0.75 ").unwrap(), (0.5, 0.75));
        assert!(parse_bracket("0.5").is_err());
        assert!(parse_bracket("a,b").is_err());
    }

    #[test]
    fn tolerance_resolution_prefers_the_flag() {
        // No flag, no env: the default.
        assert_eq!(resolve_tolerance(None), DEFAULT_TOLERANCE);
        // The flag wins regardless of the environment.
        assert_eq!(resolve_tolerance(Some(1e-8)), 1e-8);
    }

    #[test]
    fn validate_quick_passes_on_a_clean_build() {
        let cfg = config_from(&["dirac-coulomb", "validate", "--quick", "--format", "json"]);
        let outcome = run(&cfg);
        assert_eq!(outcome.exit_code, 0, "message: {:?}", outcome.message);
        let root: Value = serde_json::from_str(&outcome.report).unwrap();
        let diags = root["diagnostics"].as_array().unwrap();
        assert!(diags.len() >= 5);
        for d in diags {
            assert_eq!(
                d["failures"].as_u64().unwrap(),
                0,
                "suite {} failed",
                d["suite"]
            );
        }
    }

    #[test]
    fn exit_codes_partition_the_error_vocabulary() {
        assert_eq!(
            exit_code_for(&Error::CouplingTooLarge {
                coupling: 1.5,
                nu: 1
            }),
            1
        );
        assert_eq!(exit_code_for(&Error::Domain("x".into())), 1);
        assert_eq!(
            exit_code_for(&Error::ComplexAuxiliaryPoints { discriminant: -1.0 }),
            1
        );
        assert_eq!(exit_code_for(&Error::NoSignChange { lo: 0.1, hi: 0.9 }), 2);
        assert_eq!(
            exit_code_for(&Error::NoRoot {
                lo: 0.0,
                hi: 1.0,
                context: String::new()
            }),
            2
        );
        assert_eq!(exit_code_for(&Error::StepUnderflow { t: 1.0, h: 0.0 }), 2);
    }
}
