use std::io::{self, BufWriter, Write};

use bessel_order::bessel::BesselKind;
use bessel_order::deriv::{deriv, value_at_zero, DerivRequest};
use bessel_order::frac::{frac_eval, frac_value_at_zero, FracRequest};
use bessel_order::quad::QuadResult;
use bessel_order::Error;
use clap::Args;
use rayon::prelude::*;

use crate::{error_code, fmt17, parse_kind, EXIT_OK, EXIT_USAGE};

#[derive(Args)]
pub struct GridArgs {
    #[arg(long, value_parser = parse_kind)]
    kind: BesselKind,
    /// Derivative order.
    #[arg(long, conflicts_with = "alpha", required_unless_present = "alpha")]
    n: Option<u32>,
    /// Fractional integration order (instead of --n).
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<f64>,
    /// Lower limit for --alpha.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    nu0: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    nu_min: f64,
    #[arg(long, default_value_t = 10.0, allow_hyphen_values = true)]
    nu_max: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    t_min: f64,
    #[arg(long, default_value_t = 10.0, allow_hyphen_values = true)]
    t_max: f64,
    #[arg(long, default_value_t = 64)]
    nu_steps: usize,
    #[arg(long, default_value_t = 64)]
    t_steps: usize,
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
}

/// Rectangular sweep; both axes include their end points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub nu_min: f64,
    pub nu_max: f64,
    pub t_min: f64,
    pub t_max: f64,
    pub nu_steps: usize,
    pub t_steps: usize,
}

impl GridSpec {
    pub fn validate(&self) -> Result<(), String> {
        let finite = [self.nu_min, self.nu_max, self.t_min, self.t_max].iter().all(|x| x.is_finite());
        if !finite {
            return Err("grid bounds must be finite".into());
        }
        if !(self.nu_min < self.nu_max && self.t_min < self.t_max) {
            return Err("grid needs min < max on both axes".into());
        }
        if self.nu_steps < 2 || self.t_steps < 2 {
            return Err("grid needs at least 2 steps per axis".into());
        }
        Ok(())
    }

    fn axis(min: f64, max: f64, steps: usize, i: usize) -> f64 {
        if i + 1 == steps {
            max
        } else {
            min + (max - min) * i as f64 / (steps - 1) as f64
        }
    }

    /// Points in row-major order: ν outer, t inner.
    pub fn points(&self) -> Vec<(f64, f64)> {
        let mut out = Vec::with_capacity(self.nu_steps * self.t_steps);
        for i in 0..self.nu_steps {
            let nu = Self::axis(self.nu_min, self.nu_max, self.nu_steps, i);
            for j in 0..self.t_steps {
                out.push((nu, Self::axis(self.t_min, self.t_max, self.t_steps, j)));
            }
        }
        out
    }
}

#[derive(Clone, Copy)]
enum Mode {
    Deriv(u32),
    Frac { alpha: f64, nu0: f64 },
}

struct Row {
    value: f64,
    err_est: f64,
    status: String,
}

fn limit_status(v: f64) -> String {
    format!("limit {v}")
}

fn eval(kind: BesselKind, mode: Mode, nu: f64, t: f64, tol: f64) -> Row {
    let result: Result<Row, Error> = (|| {
        let (r, at_zero): (QuadResult<f64>, bool) = match mode {
            Mode::Deriv(n) => {
                let req = DerivRequest::new(kind, n, nu, t, tol);
                if t == 0.0 {
                    DerivRequest { t: 1.0, ..req }.validate()?;
                    (QuadResult::exact(value_at_zero(kind, n, nu)), true)
                } else {
                    (deriv(&req)?, false)
                }
            }
            Mode::Frac { alpha, nu0 } => {
                let req = FracRequest::new(kind, alpha, nu0, nu, t, tol);
                if t == 0.0 {
                    FracRequest { t: 1.0, ..req }.validate()?;
                    (QuadResult::exact(frac_value_at_zero(kind, alpha, nu0, nu)), true)
                } else {
                    (frac_eval(&req)?, false)
                }
            }
        };
        let status = if at_zero {
            limit_status(r.value)
        } else if r.converged {
            "ok".to_string()
        } else {
            "nonconverged".to_string()
        };
        Ok(Row { value: r.value, err_est: r.err_est, status })
    })();
    result.unwrap_or_else(|e| Row {
        value: f64::NAN,
        err_est: f64::NAN,
        status: format!("error: {}", e.to_string().replace(',', ";")),
    })
}

pub fn run(a: &GridArgs) -> u8 {
    let spec = GridSpec {
        nu_min: a.nu_min,
        nu_max: a.nu_max,
        t_min: a.t_min,
        t_max: a.t_max,
        nu_steps: a.nu_steps,
        t_steps: a.t_steps,
    };
    if let Err(e) = spec.validate() {
        eprintln!("error: {e}");
        return EXIT_USAGE;
    }
    let mode = match (a.n, a.alpha) {
        (Some(n), _) => Mode::Deriv(n),
        (None, Some(alpha)) => Mode::Frac { alpha, nu0: a.nu0 },
        (None, None) => unreachable!("clap requires --n or --alpha"),
    };
    // Reject malformed requests up front rather than once per row.
    let probe = match mode {
        Mode::Deriv(n) => DerivRequest::new(a.kind, n, spec.nu_max, 1.0, a.tol).validate(),
        Mode::Frac { alpha, nu0 } => FracRequest::new(a.kind, alpha, nu0, nu0 + 1.0, 1.0, a.tol).validate(),
    };
    if let Err(e) = probe {
        eprintln!("error: {e}");
        return error_code(&e);
    }
    let points = spec.points();
    let rows: Vec<Row> = points.par_iter().map(|&(nu, t)| eval(a.kind, mode, nu, t, a.tol)).collect();
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let written = (|| -> io::Result<()> {
        writeln!(out, "nu,t,value,err_est,status")?;
        for ((nu, t), r) in points.iter().zip(&rows) {
            writeln!(out, "{},{},{},{},{}", fmt17(*nu), fmt17(*t), fmt17(r.value), fmt17(r.err_est), r.status)?;
        }
        out.flush()
    })();
    if let Err(e) = written {
        eprintln!("error: {e}");
        return EXIT_USAGE;
    }
    EXIT_OK
}
