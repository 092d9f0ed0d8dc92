//! `hyptrans`: list, verify and export the identity catalog.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use hyptrans::catalog::{build_catalog, export_json, find, Family, IdentitySpec};
use hyptrans::expr::Var;
use hyptrans::verify::{
    verify_all, verify_spec, verify_transmutation, RunDocument, TransmutationReport, TransmuteOptions,
    VerificationReport, VerifyOptions, REPORT_VERSION,
};

#[derive(Parser)]
#[command(name = "hyptrans", version, about = "Numerically verify hypergeometric transmutation identities")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Subcommand)]
enum Command {
    /// List catalog identities.
    List {
        /// Family filter, e.g. `stieltjes` or `fractional`.
        #[arg(long)]
        family: Option<String>,
    },
    /// Verify one identity at sampled points.
    Verify {
        id: String,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Verify the whole catalog, or one family of it.
    VerifyAll {
        #[arg(long)]
        family: Option<String>,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Check one row of the transmutation table.
    Transmute {
        /// Case name such as `c+` or `a-,b-,c-`.
        case: String,
        #[arg(long, default_value_t = 20)]
        points: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Bound on the normalized kernel residual.
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        /// Bound on the relative difference of the integral form.
        #[arg(long, default_value_t = 1e-6)]
        integral_tol: f64,
        /// Fixed mu for the kernel check (sampled when absent).
        #[arg(long)]
        mu: Option<f64>,
    },
    /// Write the catalog as JSON.
    ExportCatalog {
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Args)]
struct RunArgs {
    #[arg(long, default_value_t = 5)]
    points: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, default_value_t = 1e-6)]
    rtol: f64,
    /// Relative tolerance of the outer quadrature.
    #[arg(long, env = "HYPTRANS_QUAD_TOL")]
    quad_tol: Option<f64>,
    /// Hold a variable fixed while sampling, e.g. `--fix mu=1`.
    #[arg(long, value_parser = parse_fix)]
    fix: Vec<(Var, f64)>,
}

impl RunArgs {
    fn options(&self) -> VerifyOptions {
        VerifyOptions {
            seed: self.seed,
            n_points: self.points,
            rel_tol: self.rtol,
            quad_tol: self.quad_tol,
            fixed: self.fix.clone(),
        }
    }
}

fn parse_fix(s: &str) -> Result<(Var, f64), String> {
    let (name, value) = s.split_once('=').ok_or_else(|| format!("expected VAR=VALUE, got {s:?}"))?;
    let var = Var::from_name(name.trim()).ok_or_else(|| format!("unknown variable {name:?}"))?;
    let value: f64 = value.trim().parse().map_err(|e| format!("bad value {value:?}: {e}"))?;
    Ok((var, value))
}

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_FAIL),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

/// `Ok(pass)` on a completed run; `Err` for usage and catalog errors.
fn run(cli: &Cli) -> Result<bool, String> {
    let catalog = build_catalog();
    match &cli.command {
        Command::List { family } => {
            let selected = select(&catalog, family.as_deref())?;
            output(print_list(cli.format, &selected))?;
            Ok(true)
        }
        Command::Verify { id, run } => {
            let spec = find(&catalog, id).map_err(|e| e.to_string())?;
            let opts = checked_options(run)?;
            let reports = vec![verify_spec(spec, &opts)];
            emit_reports(cli.format, &opts, &reports)
        }
        Command::VerifyAll { family, run } => {
            if let Some(f) = family {
                select(&catalog, Some(f))?;
            }
            let opts = checked_options(run)?;
            let reports = verify_all(&catalog, family.as_deref(), &opts);
            emit_reports(cli.format, &opts, &reports)
        }
        Command::Transmute { case, points, seed, tol, integral_tol, mu } => {
            let opts = TransmuteOptions {
                seed: *seed,
                n_points: *points,
                kernel_tol: *tol,
                integral_tol: *integral_tol,
                kernel_mu: *mu,
                ..Default::default()
            };
            let report = verify_transmutation(case, &opts).map_err(|e| e.to_string())?;
            output(print_transmutation(cli.format, &opts, &report))?;
            Ok(report.pass)
        }
        Command::ExportCatalog { out } => {
            fs::write(out, export_json(&catalog)).map_err(|e| format!("{}: {e}", out.display()))?;
            eprintln!("wrote {} identities to {}", catalog.len(), out.display());
            Ok(true)
        }
    }
}

/// A closed stdout (e.g. `| head`) ends the output quietly.
fn output(r: io::Result<()>) -> Result<(), String> {
    match r {
        Err(e) if e.kind() != io::ErrorKind::BrokenPipe => Err(e.to_string()),
        _ => Ok(()),
    }
}

fn select<'a>(catalog: &'a [IdentitySpec], family: Option<&str>) -> Result<Vec<&'a IdentitySpec>, String> {
    if let Some(f) = family {
        if !Family::is_known_filter(f) {
            let names: Vec<&str> = Family::ALL.iter().map(|f| f.name()).collect();
            return Err(format!("unknown family {f:?}; expected one of {} or fractional", names.join(", ")));
        }
    }
    Ok(catalog.iter().filter(|s| family.map_or(true, |f| s.family.matches(f))).collect())
}

fn checked_options(run: &RunArgs) -> Result<VerifyOptions, String> {
    if run.points == 0 {
        return Err("--points must be at least 1".into());
    }
    if !(run.rtol > 0.0) {
        return Err("--rtol must be positive".into());
    }
    if let Some(t) = run.quad_tol {
        if !(t > 0.0 && t < 1.0) {
            return Err(format!("quadrature tolerance {t} outside (0, 1)"));
        }
    }
    Ok(run.options())
}

fn emit_reports(format: Format, opts: &VerifyOptions, reports: &[VerificationReport]) -> Result<bool, String> {
    output(print_reports(format, opts, reports))?;
    Ok(reports.iter().all(|r| r.passed()))
}

#[derive(Serialize)]
struct ListRow<'a> {
    id: &'a str,
    family: Family,
    label: &'a str,
}

fn print_list(format: Format, specs: &[&IdentitySpec]) -> io::Result<()> {
    let rows: Vec<ListRow> = specs.iter().map(|s| ListRow { id: &s.id, family: s.family, label: &s.label }).collect();
    let mut out = io::stdout().lock();
    match format {
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&rows)?),
        Format::Csv => write_csv(&rows),
        Format::Table => {
            for r in &rows {
                writeln!(out, "{:<18} {:<12} {}", r.id, r.family.name(), r.label)?;
            }
            Ok(())
        }
    }
}

#[derive(Serialize)]
struct PointRow<'a> {
    identity_id: &'a str,
    family: Family,
    point: usize,
    a: Option<f64>,
    b: Option<f64>,
    c: Option<f64>,
    mu: Option<f64>,
    nu: Option<f64>,
    d: Option<f64>,
    e: Option<f64>,
    x: Option<f64>,
    lhs: Option<f64>,
    rhs: Option<f64>,
    rel_err: Option<f64>,
    err_est: Option<f64>,
    mode: &'static str,
    pass: bool,
    error: Option<&'a str>,
}

fn print_reports(format: Format, opts: &VerifyOptions, reports: &[VerificationReport]) -> io::Result<()> {
    let mut out = io::stdout().lock();
    match format {
        Format::Json => {
            let doc = RunDocument::new(opts, reports.to_vec());
            writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)
        }
        Format::Csv => {
            let mut rows = Vec::new();
            for r in reports {
                for (i, p) in r.points.iter().enumerate() {
                    let q = p.params;
                    rows.push(PointRow {
                        identity_id: &r.identity_id,
                        family: r.family,
                        point: i,
                        a: q.map(|q| q.a),
                        b: q.map(|q| q.b),
                        c: q.map(|q| q.c),
                        mu: q.map(|q| q.mu),
                        nu: q.map(|q| q.nu),
                        d: q.map(|q| q.d),
                        e: q.map(|q| q.e),
                        x: q.map(|q| q.x),
                        lhs: p.lhs,
                        rhs: p.rhs,
                        rel_err: p.rel_err,
                        err_est: p.err_est,
                        mode: match p.mode {
                            hyptrans::verify::CompareMode::Relative => "relative",
                            hyptrans::verify::CompareMode::Absolute => "absolute",
                        },
                        pass: p.pass,
                        error: p.error.as_deref(),
                    });
                }
            }
            write_csv(&rows)
        }
        Format::Table => {
            for r in reports {
                writeln!(
                    out,
                    "{:<18} {:<12} {:>3}/{:<3} worst {:9.2e}  {:>8.1} ms  {}",
                    r.identity_id,
                    r.family.name(),
                    r.pass_count,
                    r.n_points,
                    r.worst_rel_err,
                    r.elapsed.as_secs_f64() * 1e3,
                    if r.passed() { "ok" } else { "FAIL" }
                )?;
                for (i, p) in r.points.iter().enumerate().filter(|(_, p)| !p.pass) {
                    let what = p.message.as_deref().unwrap_or("tolerance exceeded");
                    writeln!(out, "    point {i}: {what}")?;
                }
            }
            let passed = reports.iter().filter(|r| r.passed()).count();
            let points: usize = reports.iter().map(|r| r.pass_count).sum();
            let total: usize = reports.iter().map(|r| r.n_points).sum();
            writeln!(out, "{passed}/{} identities pass ({points}/{total} points)", reports.len())
        }
    }
}

#[derive(Serialize)]
struct TransmuteDoc<'a> {
    version: u32,
    seed: u64,
    kernel_tol: f64,
    integral_tol: f64,
    integral_mu: f64,
    report: &'a TransmutationReport,
}

#[derive(Serialize)]
struct TransmuteRow {
    check: &'static str,
    a: f64,
    b: f64,
    c: f64,
    mu: f64,
    x: f64,
    y: Option<f64>,
    error_measure: Option<f64>,
    pass: bool,
    error: Option<String>,
}

fn print_transmutation(format: Format, opts: &TransmuteOptions, r: &TransmutationReport) -> io::Result<()> {
    let mut out = io::stdout().lock();
    match format {
        Format::Json => {
            let doc = TransmuteDoc {
                version: REPORT_VERSION,
                seed: opts.seed,
                kernel_tol: opts.kernel_tol,
                integral_tol: opts.integral_tol,
                integral_mu: opts.integral_mu,
                report: r,
            };
            writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)
        }
        Format::Csv => {
            let kernel = r.kernel.iter().map(|k| TransmuteRow {
                check: "kernel",
                a: k.a,
                b: k.b,
                c: k.c,
                mu: k.mu,
                x: k.x,
                y: Some(k.y),
                error_measure: k.residual,
                pass: k.pass,
                error: k.error.clone(),
            });
            let integral = r.integral.iter().map(|k| TransmuteRow {
                check: "integral",
                a: k.a,
                b: k.b,
                c: k.c,
                mu: k.mu,
                x: k.x,
                y: None,
                error_measure: k.rel_err,
                pass: k.pass,
                error: k.error.clone(),
            });
            write_csv(&kernel.chain(integral).collect::<Vec<_>>())
        }
        Format::Table => {
            let kp = r.kernel.iter().filter(|k| k.pass).count();
            let ip = r.integral.iter().filter(|k| k.pass).count();
            writeln!(out, "case {}", r.case)?;
            writeln!(out, "  kernel   {kp}/{} worst residual {:.2e}", r.kernel.len(), r.worst_kernel_residual)?;
            writeln!(
                out,
                "  integral {ip}/{} worst rel err  {:.2e} (mu = {})",
                r.integral.len(),
                r.worst_integral_rel_err,
                opts.integral_mu
            )?;
            writeln!(out, "{}", if r.pass { "ok" } else { "FAIL" })
        }
    }
}

fn write_csv<T: Serialize>(rows: &[T]) -> io::Result<()> {
    let mut w = csv::Writer::from_writer(io::stdout().lock());
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()
}
