use std::time::Instant;

use bessel_order::bessel::BesselKind;
use bessel_order::deriv::{deriv, DerivRequest};
use bessel_order::finite_diff::bessel_order_fd;
use bessel_order::Error;
use clap::Args;
use serde::Serialize;

use crate::{error_code, EXIT_DISAGREE, EXIT_OK, EXIT_USAGE};

pub const SCHEMA: &str = "besselord-bench/1";
/// Relative agreement required between the two methods.
pub const AGREEMENT: f64 = 1e-6;
const POINTS: [(f64, f64); 3] = [(5.0, 5.0), (0.5, 1.0), (2.3, 3.0)];

#[derive(Args)]
pub struct BenchArgs {
    /// Suites to run: deriv-n1, deriv-n2, deriv-n3, deriv-n4 or all.
    #[arg(long, value_delimiter = ',', default_value = "deriv-n3")]
    suite: Vec<String>,
    /// Quadrature tolerances for the integral method.
    #[arg(long, value_delimiter = ',', default_value = "1e-6,1e-8,1e-10")]
    tolerances: Vec<f64>,
    /// Timed repetitions per case; the median is reported.
    #[arg(long, default_value_t = 5)]
    repeats: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct BenchCase {
    pub kind: String,
    pub n: u32,
    pub nu: f64,
    pub t: f64,
    pub tol: f64,
    pub time_integral: f64,
    pub time_baseline: f64,
    pub chi: f64,
    pub values_agree: bool,
    pub value_integral: f64,
    pub value_baseline: f64,
    pub n_evals_integral: usize,
    pub n_evals_baseline: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct ExternalReference {
    pub chi: f64,
    pub reproducible: bool,
    pub note: &'static str,
}

#[derive(Debug, Clone, Serialize)]
pub struct BenchReport {
    pub schema: &'static str,
    pub chi_label: &'static str,
    pub baseline: &'static str,
    pub repeats: usize,
    pub external_reference: ExternalReference,
    pub cases: Vec<BenchCase>,
}

fn parse_suite(s: &str) -> Result<Vec<u32>, String> {
    match s {
        "all" => Ok(vec![1, 2, 3, 4]),
        "deriv-n1" => Ok(vec![1]),
        "deriv-n2" => Ok(vec![2]),
        "deriv-n3" => Ok(vec![3]),
        "deriv-n4" => Ok(vec![4]),
        other => Err(format!("unknown suite {other:?}; expected deriv-n1..deriv-n4 or all")),
    }
}

fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(f64::total_cmp);
    let m = v.len() / 2;
    if v.len() % 2 == 1 {
        v[m]
    } else {
        0.5 * (v[m - 1] + v[m])
    }
}

fn timed<T>(repeats: usize, mut f: impl FnMut() -> Result<T, Error>) -> Result<(T, f64), Error> {
    let mut times = Vec::with_capacity(repeats);
    let mut last = None;
    for _ in 0..repeats {
        let start = Instant::now();
        let v = f()?;
        times.push(start.elapsed().as_secs_f64());
        last = Some(v);
    }
    Ok((last.expect("repeats >= 1"), median(times)))
}

/// Times one case. Timings are floored at one nanosecond so that χ stays
/// positive and finite.
pub fn bench_case(kind: BesselKind, n: u32, nu: f64, t: f64, tol: f64, repeats: usize) -> Result<BenchCase, Error> {
    let req = DerivRequest::new(kind, n, nu, t, tol);
    let (integral, ti) = timed(repeats, || deriv(&req))?;
    let (baseline, tb) = timed(repeats, || bessel_order_fd(kind, n, nu, t))?;
    let (ti, tb) = (ti.max(1e-9), tb.max(1e-9));
    let diff = (integral.value - baseline.value).abs();
    Ok(BenchCase {
        kind: kind.to_string(),
        n,
        nu,
        t,
        tol,
        time_integral: ti,
        time_baseline: tb,
        chi: tb / ti,
        values_agree: integral.converged && diff <= AGREEMENT * baseline.value.abs(),
        value_integral: integral.value,
        value_baseline: baseline.value,
        n_evals_integral: integral.n_evals,
        n_evals_baseline: baseline.n_evals,
    })
}

pub fn report(orders: &[u32], tolerances: &[f64], repeats: usize) -> Result<BenchReport, Error> {
    let mut cases = Vec::new();
    for &n in orders {
        for kind in BesselKind::ALL {
            for &(nu, t) in &POINTS {
                for &tol in tolerances {
                    cases.push(bench_case(kind, n, nu, t, tol, repeats)?);
                }
            }
        }
    }
    Ok(BenchReport {
        schema: SCHEMA,
        chi_label: "chi vs. FD baseline",
        baseline: "Richardson-extrapolated central differences of the base functions",
        repeats,
        external_reference: ExternalReference {
            chi: 35.0,
            reproducible: false,
            note: "reference ratio measured against a computer-algebra derivative routine; not comparable with this baseline",
        },
        cases,
    })
}

pub fn run(a: &BenchArgs) -> u8 {
    if a.repeats == 0 {
        eprintln!("error: --repeats must be at least 1");
        return EXIT_USAGE;
    }
    if a.tolerances.is_empty() || a.tolerances.iter().any(|t| !(*t > 0.0 && t.is_finite())) {
        eprintln!("error: tolerances must be positive");
        return EXIT_USAGE;
    }
    let mut orders = Vec::new();
    for s in &a.suite {
        match parse_suite(s) {
            Ok(o) => orders.extend(o),
            Err(e) => {
                eprintln!("error: {e}");
                return EXIT_USAGE;
            }
        }
    }
    orders.sort_unstable();
    orders.dedup();
    let rep = match report(&orders, &a.tolerances, a.repeats) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return error_code(&e);
        }
    };
    println!("{}", serde_json::to_string_pretty(&rep).expect("report serializes"));
    if rep.cases.iter().all(|c| c.values_agree) {
        EXIT_OK
    } else {
        EXIT_DISAGREE
    }
}
