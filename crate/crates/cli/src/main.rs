//! Batch CLI emitting JSON/CSV reports for the hot-spots computations.
//!
//! Exit codes: 0 success, 1 invalid input, 2 numerical failure,
//! 3 invariant violation (a verification check did not hold).

mod report;

use clap::{Parser, Subcommand, ValueEnum};
use hotspots_core::grid::{Cell, GridDomain, Shape};
use hotspots_core::heat::{Lemma1Report, SurvivalMethod};
use hotspots_core::mc::WalkConfig;
use hotspots_core::{bound, constants, eigen, heat, mc};
use report::{csv_line, emit_error, emit_json, extend, sig12, sig12_str};
use serde_json::{json, Value};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "hotspots",
    version,
    about = "Dimension-uniform bounds on the hot-spots ratio, with grid and Monte-Carlo verification"
)]
struct Cli {
    /// Emit a JSON report (the default).
    #[arg(long, global = true)]
    json: bool,

    /// Emit CSV rows instead of JSON (supported by `table`).
    #[arg(long, global = true, conflicts_with = "json")]
    csv: bool,

    /// Seed for Monte-Carlo estimates.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Upper bound on worker threads. All kernels are sequential and
    /// counter-seeded, so results are bit-identical for any value.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Hot-spots constant for dimension d, or the general constant when
    /// --beta and --M supply the eigenvalue data explicitly.
    Constant {
        #[arg(short = 'd', long)]
        d: u32,
        /// Eigenvalue ratio beta = mu/lambda_1 in (0,1); requires --M.
        #[arg(long, requires = "m")]
        beta: Option<f64>,
        /// Dimensionless eigenvalue bound M >= mu*|D|^(2/d); requires --beta.
        #[arg(long = "M", value_name = "M", requires = "beta")]
        m: Option<f64>,
    },
    /// Per-dimension constants over a range of d.
    Table {
        #[arg(long)]
        dmin: u32,
        #[arg(long)]
        dmax: u32,
    },
    /// Eigenpairs, the maximum-ratio report, and the inequality check on a domain.
    Verify {
        /// Generator spec, e.g. rectangle:2,1  disk:1  annulus:0.4,1  dumbbell:1,0.1,0.5,0.25
        #[arg(long, value_name = "KIND:PARAMS", conflicts_with = "domain")]
        gen: Option<String>,
        /// Mask file path (format: `hotspots-mask v1`).
        #[arg(long)]
        domain: Option<PathBuf>,
        /// Grid spacing (required with --gen; the mask file carries its own).
        #[arg(long)]
        h: Option<f64>,
        /// Times for the inequality check.
        #[arg(long, value_delimiter = ',', default_values_t = vec![0.01, 0.05, 0.1, 0.5])]
        t_grid: Vec<f64>,
    },
    /// Monte-Carlo cross-check: absorbed survival and the inequality at one time.
    Mc {
        #[arg(long, value_name = "KIND:PARAMS", conflicts_with = "domain")]
        gen: Option<String>,
        #[arg(long)]
        domain: Option<PathBuf>,
        #[arg(long)]
        h: Option<f64>,
        #[arg(long, default_value_t = 0.1)]
        t: f64,
        #[arg(long, default_value_t = 100_000)]
        paths: u64,
        /// Step size; defaults to h^2/10.
        #[arg(long)]
        dt: Option<f64>,
    },
    /// Survival probability of Brownian motion started at a cell.
    Survival {
        #[arg(long, value_name = "KIND:PARAMS", conflicts_with = "domain")]
        gen: Option<String>,
        #[arg(long)]
        domain: Option<PathBuf>,
        #[arg(long)]
        h: Option<f64>,
        #[arg(long)]
        t: f64,
        /// Start cell "ix,iy"; defaults to the cell nearest the centroid.
        #[arg(long)]
        x0: Option<String>,
        #[arg(long, value_enum, default_value_t = MethodArg::Pde)]
        method: MethodArg,
        #[arg(long, default_value_t = 100_000)]
        paths: u64,
        #[arg(long)]
        dt: Option<f64>,
    },
    /// Write a generated domain in the mask file format.
    Gen {
        #[arg(long, value_name = "KIND:PARAMS")]
        gen: String,
        #[arg(long)]
        h: f64,
        /// Output path; omitted, the mask text goes to stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Pde,
    ClosedForm,
    Mc,
}

/// A failure with its exit code (1 invalid input, 2 numerical failure).
struct Failure {
    code: u8,
    kind: String,
    message: String,
}

impl Failure {
    fn invalid(message: impl Into<String>) -> Self {
        Failure {
            code: 1,
            kind: "invalid-input".into(),
            message: message.into(),
        }
    }
}

impl From<hotspots_core::Error> for Failure {
    fn from(err: hotspots_core::Error) -> Self {
        Failure {
            code: if err.is_invalid_input() { 1 } else { 2 },
            kind: err.kind().into(),
            message: err.to_string(),
        }
    }
}

/// Successful runs either hold every invariant or report a violation (exit 3).
enum Outcome {
    Clean,
    InvariantViolation(String),
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            use clap::error::ErrorKind;
            let _ = err.print();
            return if matches!(err.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            };
        }
    };
    match run(cli) {
        Ok(Outcome::Clean) => ExitCode::SUCCESS,
        Ok(Outcome::InvariantViolation(what)) => {
            emit_error("invariant-violation", &what);
            ExitCode::from(3)
        }
        Err(failure) => {
            emit_error(&failure.kind, &failure.message);
            ExitCode::from(failure.code)
        }
    }
}

fn run(cli: Cli) -> Result<Outcome, Failure> {
    if cli.threads == 0 {
        return Err(Failure::invalid("--threads must be at least 1"));
    }
    let csv = cli.csv;
    match cli.command {
        Command::Constant { d, beta, m } => cmd_constant(d, beta, m, csv),
        Command::Table { dmin, dmax } => cmd_table(dmin, dmax, csv),
        Command::Verify {
            gen,
            domain,
            h,
            t_grid,
        } => cmd_verify(gen, domain, h, &t_grid, csv),
        Command::Mc {
            gen,
            domain,
            h,
            t,
            paths,
            dt,
        } => cmd_mc(gen, domain, h, t, paths, dt, cli.seed, csv),
        Command::Survival {
            gen,
            domain,
            h,
            t,
            x0,
            method,
            paths,
            dt,
        } => cmd_survival(gen, domain, h, t, x0, method, paths, dt, cli.seed, csv),
        Command::Gen { gen, h, out } => cmd_gen(&gen, h, out, csv),
    }
}

fn reject_csv(csv: bool, command: &str) -> Result<(), Failure> {
    if csv {
        return Err(Failure::invalid(format!(
            "--csv is not supported by `{command}`; it applies to `table`"
        )));
    }
    Ok(())
}

fn parse_shape(spec: &str) -> Result<Shape, Failure> {
    let (kind, params) = spec.split_once(':').unwrap_or((spec, ""));
    let nums: Result<Vec<f64>, _> = params
        .split(',')
        .filter(|s| !s.is_empty())
        .map(str::parse::<f64>)
        .collect();
    let nums = nums.map_err(|e| Failure::invalid(format!("bad generator spec '{spec}': {e}")))?;
    match (kind, nums.as_slice()) {
        ("rectangle", [a, b]) => Ok(Shape::Rectangle { a: *a, b: *b }),
        ("disk", [r]) => Ok(Shape::Disk { r: *r }),
        ("annulus", [r_in, r_out]) => Ok(Shape::Annulus {
            r_in: *r_in,
            r_out: *r_out,
        }),
        ("dumbbell", [chamber, neck_w, neck_len, hole_r]) => Ok(Shape::Dumbbell {
            chamber: *chamber,
            neck_w: *neck_w,
            neck_len: *neck_len,
            hole_r: *hole_r,
        }),
        _ => Err(Failure::invalid(format!(
            "bad generator spec '{spec}'; expected rectangle:a,b disk:r annulus:rin,rout dumbbell:chamber,neck_w,neck_len,hole_r"
        ))),
    }
}

/// Resolve a domain from either a generator spec or a mask file, echoing the
/// source in the inputs object.
fn resolve_domain(
    gen: Option<String>,
    domain: Option<PathBuf>,
    h: Option<f64>,
) -> Result<(GridDomain, Value), Failure> {
    match (gen, domain) {
        (Some(spec), None) => {
            let h = h.ok_or_else(|| Failure::invalid("--h is required with --gen"))?;
            let dom = GridDomain::generate(parse_shape(&spec)?, h)?;
            Ok((dom, json!({ "gen": spec, "h": h })))
        }
        (None, Some(path)) => {
            if h.is_some() {
                return Err(Failure::invalid(
                    "--h conflicts with --domain; the mask file carries its spacing",
                ));
            }
            let text = std::fs::read_to_string(&path).map_err(|e| {
                Failure::invalid(format!("cannot read mask file {}: {e}", path.display()))
            })?;
            let name = path
                .file_stem()
                .and_then(|s| s.to_str())
                .unwrap_or("mask")
                .to_string();
            let dom = GridDomain::parse(&text)?.rename(&name);
            Ok((dom, json!({ "domain": path.display().to_string() })))
        }
        _ => Err(Failure::invalid("exactly one of --gen or --domain is required")),
    }
}

fn domain_summary(dom: &GridDomain) -> Value {
    let (nx, ny) = dom.mask_dims();
    json!({
        "name": dom.name(),
        "h": dom.h(),
        "mask_dims": [nx, ny],
        "cells": dom.cell_count(),
        "boundary_cells": dom.boundary_count(),
        "area": sig12(dom.area()),
    })
}

fn constant_payload(d: u32, result: &bound::BoundResult) -> Result<Value, Failure> {
    let roots = constants::dimension_constants(d)?;
    Ok(json!({
        "d": d,
        "alpha_d": sig12(result.beta),
        "p_sq": sig12(roots.p_sq),
        "j_first": sig12(roots.j_first),
        "M": sig12(result.m),
        "alpha_star": sig12(result.alpha_star),
        "constant_star": sig12(result.constant_star),
        "constant_ceiling": result.constant_star.ceil() as u64,
    }))
}

fn cmd_constant(d: u32, beta: Option<f64>, m: Option<f64>, csv: bool) -> Result<Outcome, Failure> {
    reject_csv(csv, "constant")?;
    let (result, inputs) = match (beta, m) {
        (Some(beta), Some(m)) => (
            bound::general_constant(d, beta, m)?,
            json!({ "d": d, "beta": beta, "M": m }),
        ),
        (None, None) => (bound::hot_spots_constant(d)?, json!({ "d": d })),
        // clap's `requires` already rejects one-sided flags; keep a guard.
        _ => return Err(Failure::invalid("--beta and --M must be given together")),
    };
    let results = constant_payload(d, &result)?;
    emit_json(&report::report("constant", inputs, results));
    Ok(Outcome::Clean)
}

fn cmd_table(dmin: u32, dmax: u32, csv: bool) -> Result<Outcome, Failure> {
    if !(2 <= dmin && dmin <= dmax && dmax <= constants::MAX_DIMENSION) {
        return Err(Failure::invalid(format!(
            "need 2 <= dmin <= dmax <= {}, got {dmin}..{dmax}",
            constants::MAX_DIMENSION
        )));
    }
    let mut rows = Vec::with_capacity((dmax - dmin + 1) as usize);
    for d in dmin..=dmax {
        let c = constants::dimension_constants(d)?;
        let r = bound::optimize(d, c.alpha_d, c.sw_coeff)?;
        rows.push((d, c, r));
    }
    if csv {
        println!("d,alpha_d,p_sq,M,alpha_star,constant_star");
        for (d, c, r) in &rows {
            println!(
                "{}",
                csv_line(&[
                    d.to_string(),
                    sig12_str(c.alpha_d),
                    sig12_str(c.p_sq),
                    sig12_str(c.sw_coeff),
                    sig12_str(r.alpha_star),
                    sig12_str(r.constant_star),
                ])
            );
        }
    } else {
        let rows: Vec<Value> = rows
            .iter()
            .map(|(d, c, r)| {
                json!({
                    "d": d,
                    "alpha_d": sig12(c.alpha_d),
                    "p_sq": sig12(c.p_sq),
                    "M": sig12(c.sw_coeff),
                    "alpha_star": sig12(r.alpha_star),
                    "constant_star": sig12(r.constant_star),
                })
            })
            .collect();
        emit_json(&report::report(
            "table",
            json!({ "dmin": dmin, "dmax": dmax }),
            json!({ "rows": rows }),
        ));
    }
    Ok(Outcome::Clean)
}

fn lemma1_json(l: &Lemma1Report) -> Value {
    json!({
        "t": l.t,
        "survival": sig12(l.survival),
        "rhs": sig12(l.rhs),
        "slack": sig12(l.slack),
        "slack_tolerance": sig12(l.slack_tolerance),
        "passes": l.passes(),
    })
}

fn cmd_verify(
    gen: Option<String>,
    domain: Option<PathBuf>,
    h: Option<f64>,
    t_grid: &[f64],
    csv: bool,
) -> Result<Outcome, Failure> {
    reject_csv(csv, "verify")?;
    let (dom, mut inputs) = resolve_domain(gen, domain, h)?;
    inputs = extend(inputs, vec![("t_grid", json!(t_grid))]);

    let hs = eigen::hot_spots_report(&dom)?;
    let lemma1 = heat::lemma1_check(&dom, t_grid)?;

    let results = json!({
        "domain": domain_summary(&dom),
        "report": {
            "mu1": sig12(hs.mu1),
            "lambda1": sig12(hs.lambda1),
            "interior_max": sig12(hs.interior_max),
            "boundary_max": sig12(hs.boundary_max),
            "ratio": sig12(hs.ratio),
            "bound": sig12(hs.bound),
            "mu_lt_lambda": hs.mu_lt_lambda,
            "bound_satisfied": hs.bound_satisfied,
        },
        "lemma1": lemma1.iter().map(lemma1_json).collect::<Vec<_>>(),
    });
    emit_json(&report::report("verify", inputs, results));

    let mut violations = Vec::new();
    if !hs.mu_lt_lambda {
        violations.push(format!("mu1 = {} is not below lambda1 = {}", hs.mu1, hs.lambda1));
    }
    if !hs.bound_satisfied {
        violations.push(format!("ratio {} exceeds the bound {}", hs.ratio, hs.bound));
    }
    for l in &lemma1 {
        if !l.passes() {
            violations.push(format!("slack {} at t = {} below -{}", l.slack, l.t, l.slack_tolerance));
        }
    }
    if violations.is_empty() {
        Ok(Outcome::Clean)
    } else {
        Ok(Outcome::InvariantViolation(violations.join("; ")))
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_mc(
    gen: Option<String>,
    domain: Option<PathBuf>,
    h: Option<f64>,
    t: f64,
    paths: u64,
    dt: Option<f64>,
    seed: u64,
    csv: bool,
) -> Result<Outcome, Failure> {
    reject_csv(csv, "mc")?;
    let (dom, mut inputs) = resolve_domain(gen, domain, h)?;
    let dt = dt.unwrap_or(dom.h() * dom.h() / 10.0);
    let cfg = WalkConfig {
        n_paths: paths,
        dt,
        seed,
        t,
    };
    cfg.validate_for_report()?;
    inputs = extend(
        inputs,
        vec![
            ("t", json!(t)),
            ("paths", json!(paths)),
            ("dt", json!(dt)),
            ("seed", json!(seed)),
        ],
    );

    let mc_result = mc::lemma1_mc(&dom, t, &cfg)?;
    let x0 = mc_result.x0;
    let pde = heat::heat_survival(&dom, x0, t)?;

    let results = json!({
        "domain": domain_summary(&dom),
        "mu1": sig12(mc_result.mu1),
        "x0": [x0.ix, x0.iy],
        "survival_mc": {
            "mean": sig12(mc_result.survival.mean),
            "std_error": sig12(mc_result.survival.std_error),
            "n_effective": mc_result.survival.n_effective,
        },
        "survival_pde": sig12(pde.survival),
        "lemma1": lemma1_json(&mc_result.report),
    });
    emit_json(&report::report("mc", inputs, results));

    if mc_result.report.passes() {
        Ok(Outcome::Clean)
    } else {
        Ok(Outcome::InvariantViolation(format!(
            "Monte-Carlo slack {} at t = {} below -{}",
            mc_result.report.slack, t, mc_result.report.slack_tolerance
        )))
    }
}

fn parse_cell(spec: &str) -> Result<Cell, Failure> {
    let parts: Vec<&str> = spec.split(',').collect();
    if let [ix, iy] = parts.as_slice() {
        if let (Ok(ix), Ok(iy)) = (ix.trim().parse(), iy.trim().parse()) {
            return Ok(Cell { ix, iy });
        }
    }
    Err(Failure::invalid(format!("bad cell spec '{spec}'; expected 'ix,iy'")))
}

#[allow(clippy::too_many_arguments)]
fn cmd_survival(
    gen: Option<String>,
    domain: Option<PathBuf>,
    h: Option<f64>,
    t: f64,
    x0: Option<String>,
    method: MethodArg,
    paths: u64,
    dt: Option<f64>,
    seed: u64,
    csv: bool,
) -> Result<Outcome, Failure> {
    reject_csv(csv, "survival")?;
    let gen_spec = gen.clone();
    let (dom, mut inputs) = resolve_domain(gen, domain, h)?;
    let x0_cell = match &x0 {
        Some(spec) => parse_cell(spec)?,
        None => dom.centroid_cell(),
    };
    let method_name = match method {
        MethodArg::Pde => "pde",
        MethodArg::ClosedForm => "closed-form",
        MethodArg::Mc => "mc",
    };
    inputs = extend(
        inputs,
        vec![
            ("t", json!(t)),
            ("x0", json!([x0_cell.ix, x0_cell.iy])),
            ("method", json!(method_name)),
        ],
    );

    let estimate = match method {
        MethodArg::Pde => heat::heat_survival(&dom, x0_cell, t)?,
        MethodArg::ClosedForm => {
            let shape = gen_spec
                .as_deref()
                .map(parse_shape)
                .transpose()?
                .ok_or_else(|| {
                    Failure::invalid("--method closed-form requires --gen rectangle:a,b")
                })?;
            let Shape::Rectangle { a, b } = shape else {
                return Err(Failure::invalid(
                    "--method closed-form is only available for rectangle generators",
                ));
            };
            if x0.is_some() {
                return Err(Failure::invalid(
                    "--method closed-form evaluates the center; --x0 is not supported",
                ));
            }
            let mut est = heat::rectangle_center_survival(a, b, t);
            est.x0 = x0_cell;
            est
        }
        MethodArg::Mc => {
            let dt = dt.unwrap_or(dom.h() * dom.h() / 10.0);
            let cfg = WalkConfig {
                n_paths: paths,
                dt,
                seed,
                t,
            };
            cfg.validate_for_report()?;
            let est = mc::absorbed_survival(&dom, x0_cell, &cfg)?;
            hotspots_core::heat::SurvivalEstimate {
                x0: x0_cell,
                t,
                survival: est.mean,
                method: SurvivalMethod::MonteCarlo,
                error_estimate: est.std_error,
            }
        }
    };

    let results = json!({
        "x0": [estimate.x0.ix, estimate.x0.iy],
        "t": estimate.t,
        "survival": sig12(estimate.survival),
        "method": match estimate.method {
            SurvivalMethod::Pde => "pde",
            SurvivalMethod::ClosedForm => "closed_form",
            SurvivalMethod::MonteCarlo => "monte_carlo",
        },
        "error_estimate": sig12(estimate.error_estimate),
    });
    emit_json(&report::report("survival", inputs, results));
    Ok(Outcome::Clean)
}

fn cmd_gen(spec: &str, h: f64, out: Option<PathBuf>, csv: bool) -> Result<Outcome, Failure> {
    reject_csv(csv, "gen")?;
    let dom = GridDomain::generate(parse_shape(spec)?, h)?;
    let text = dom.to_text();
    match out {
        Some(path) => {
            std::fs::write(&path, &text).map_err(|e| {
                Failure::invalid(format!("cannot write mask file {}: {e}", path.display()))
            })?;
            let results = extend(
                domain_summary(&dom),
                vec![("path", json!(path.display().to_string()))],
            );
            emit_json(&report::report(
                "gen",
                json!({ "gen": spec, "h": h, "out": path.display().to_string() }),
                results,
            ));
        }
        None => {
            // Raw mask text so the output can be piped straight into --domain.
            print!("{text}");
        }
    }
    Ok(Outcome::Clean)
}
