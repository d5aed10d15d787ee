mod bench;
mod grid;

use std::process::ExitCode;

use bessel_order::bessel::BesselKind;
use bessel_order::deriv::{deriv, value_at_zero, DerivRequest};
use bessel_order::frac::{frac_eval, frac_value_at_zero, FracRequest};
use bessel_order::quad::QuadResult;
use bessel_order::selftest::{self, SelftestOptions};
use bessel_order::tail::{tail_i_form, tail_j_form, tail_oracle, truncation_point, TailForm};
use bessel_order::Error;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 1;
pub const EXIT_NONCONVERGED: u8 = 2;
pub const EXIT_DISAGREE: u8 = 3;
pub const EXIT_SELFTEST: u8 = 4;

#[derive(Parser)]
#[command(name = "besselord", version, about = "Order derivatives and order-integrals of Bessel functions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// n-th derivative with respect to the order.
    Deriv(DerivArgs),
    /// Riemann-Liouville integral of order alpha with respect to the order.
    Frac(FracArgs),
    /// Integral over the order from nu to infinity (J and I).
    Tail(TailArgs),
    /// Rectangular (nu, t) sweep as CSV.
    Grid(grid::GridArgs),
    /// Timing of the integral method against finite differences, as JSON.
    Bench(bench::BenchArgs),
    /// Run the built-in check suites.
    Selftest(SelftestArgs),
}

pub fn parse_kind(s: &str) -> Result<BesselKind, String> {
    s.parse::<BesselKind>().map_err(|e| e.to_string())
}

#[derive(Args)]
struct DerivArgs {
    #[arg(long, value_parser = parse_kind)]
    kind: BesselKind,
    #[arg(long)]
    n: u32,
    #[arg(long, allow_hyphen_values = true)]
    nu: f64,
    #[arg(long, allow_hyphen_values = true)]
    t: f64,
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct FracArgs {
    #[arg(long, value_parser = parse_kind)]
    kind: BesselKind,
    #[arg(long, allow_hyphen_values = true)]
    alpha: f64,
    #[arg(long, allow_hyphen_values = true)]
    nu0: f64,
    #[arg(long, allow_hyphen_values = true)]
    nu: f64,
    #[arg(long, allow_hyphen_values = true)]
    t: f64,
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormArg {
    Derived,
    Printed,
}

#[derive(Args)]
struct TailArgs {
    #[arg(long, value_parser = parse_kind)]
    kind: BesselKind,
    #[arg(long, allow_hyphen_values = true)]
    nu: f64,
    #[arg(long, allow_hyphen_values = true)]
    t: f64,
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    /// Coefficient form of the semi-infinite piece.
    #[arg(long, value_enum, default_value = "derived")]
    form: FormArg,
    /// Also evaluate the truncated direct quadrature.
    #[arg(long)]
    oracle: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct SelftestArgs {
    /// Run only suites whose name contains this string.
    #[arg(long)]
    filter: Option<String>,
    /// Force every quadrature tolerance to this value.
    #[arg(long)]
    force_tol: Option<f64>,
}

/// Formats with 17 significant digits.
pub fn fmt17(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        x.to_string()
    }
}

#[derive(Serialize)]
struct PointReport<'a> {
    command: &'a str,
    value: Option<f64>,
    value_text: String,
    err_est: f64,
    n_evals: usize,
    converged: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    note: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle: Option<OracleReport>,
}

#[derive(Serialize)]
struct OracleReport {
    value: f64,
    cutoff: f64,
    remainder_bound: f64,
    sufficient: bool,
    difference: f64,
}

const LIMIT_NOTE: &str = "limit value at t = 0";

fn emit(report: &PointReport, json: bool) -> u8 {
    if json {
        println!("{}", serde_json::to_string_pretty(report).expect("report serializes"));
    } else {
        println!("value     = {}", report.value_text);
        println!("err_est   = {:.3e}", report.err_est);
        println!("n_evals   = {}", report.n_evals);
        println!("converged = {}", report.converged);
        if let Some(o) = &report.oracle {
            println!("oracle    = {} (cut-off {}, remainder bound {:.1e}{})", fmt17(o.value), o.cutoff, o.remainder_bound,
                if o.sufficient { "" } else { ", insufficient" });
            println!("difference = {:.3e}", o.difference);
        }
        if let Some(n) = report.note {
            println!("note: {n}");
        }
    }
    if report.converged {
        EXIT_OK
    } else {
        EXIT_NONCONVERGED
    }
}

fn point_report<'a>(command: &'a str, r: QuadResult<f64>, note: Option<&'static str>) -> PointReport<'a> {
    PointReport {
        command,
        value: r.value.is_finite().then_some(r.value),
        value_text: fmt17(r.value),
        err_est: r.err_est,
        n_evals: r.n_evals,
        converged: r.converged,
        note,
        oracle: None,
    }
}

/// Exit code for a library error: bad input is a usage error, anything else
/// is an evaluation failure.
pub fn error_code(e: &Error) -> u8 {
    match e {
        Error::InvalidRequest(_) | Error::Domain(_) | Error::InvalidInterval { .. } => EXIT_USAGE,
        _ => EXIT_NONCONVERGED,
    }
}

fn fail(e: Error) -> u8 {
    eprintln!("error: {e}");
    error_code(&e)
}

fn cmd_deriv(a: &DerivArgs) -> u8 {
    let req = DerivRequest::new(a.kind, a.n, a.nu, a.t, a.tol);
    if a.t == 0.0 {
        // Y and K have no finite value at t = 0, so report the limit for every kind.
        let probe = DerivRequest { t: 1.0, ..req };
        if let Err(e) = probe.validate() {
            return fail(e);
        }
        let r = QuadResult::exact(value_at_zero(a.kind, a.n, a.nu));
        return emit(&point_report("deriv", r, Some(LIMIT_NOTE)), a.json);
    }
    match deriv(&req) {
        Ok(r) => emit(&point_report("deriv", r, None), a.json),
        Err(e) => fail(e),
    }
}

fn cmd_frac(a: &FracArgs) -> u8 {
    let req = FracRequest::new(a.kind, a.alpha, a.nu0, a.nu, a.t, a.tol);
    if a.t == 0.0 {
        let probe = FracRequest { t: 1.0, ..req };
        if let Err(e) = probe.validate() {
            return fail(e);
        }
        let r = QuadResult::exact(frac_value_at_zero(a.kind, a.alpha, a.nu0, a.nu));
        return emit(&point_report("frac", r, Some(LIMIT_NOTE)), a.json);
    }
    match frac_eval(&req) {
        Ok(r) => emit(&point_report("frac", r, None), a.json),
        Err(e) => fail(e),
    }
}

fn cmd_tail(a: &TailArgs) -> u8 {
    let form = match a.form {
        FormArg::Derived => TailForm::Derived,
        FormArg::Printed => TailForm::Printed,
    };
    let r = match a.kind {
        BesselKind::J => tail_j_form(form, a.nu, a.t, a.tol),
        BesselKind::I => tail_i_form(form, a.nu, a.t, a.tol),
        k => Err(Error::InvalidRequest(format!("tail integrals are defined for J and I, got {k}"))),
    };
    let r = match r {
        Ok(r) => r,
        Err(e) => return fail(e),
    };
    let mut report = point_report("tail", r, None);
    if a.oracle {
        match tail_oracle(a.kind, a.nu, a.t, truncation_point(a.nu, a.t)) {
            Ok(o) => {
                report.oracle = Some(OracleReport {
                    value: o.value,
                    cutoff: o.cutoff,
                    remainder_bound: o.remainder_bound,
                    sufficient: o.sufficient,
                    difference: r.value - o.value,
                })
            }
            Err(e) => return fail(e),
        }
    }
    emit(&report, a.json)
}

fn cmd_selftest(a: &SelftestArgs) -> u8 {
    let opts = SelftestOptions { filter: a.filter.clone(), force_tol: a.force_tol };
    let outcomes = match selftest::run(&opts) {
        Ok(o) => o,
        Err(e) => return fail(e),
    };
    let mut failed = 0;
    for o in &outcomes {
        let mark = if o.passed { "PASS" } else { "FAIL" };
        println!("{mark}  {:<26} {:<40} {}", o.suite, o.name, o.detail);
        failed += usize::from(!o.passed);
    }
    println!("{} checks, {failed} failed", outcomes.len());
    if failed == 0 {
        EXIT_OK
    } else {
        EXIT_SELFTEST
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { EXIT_OK });
        }
    };
    let code = match &cli.command {
        Command::Deriv(a) => cmd_deriv(a),
        Command::Frac(a) => cmd_frac(a),
        Command::Tail(a) => cmd_tail(a),
        Command::Grid(a) => grid::run(a),
        Command::Bench(a) => bench::run(a),
        Command::Selftest(a) => cmd_selftest(a),
    };
    ExitCode::from(code)
}
