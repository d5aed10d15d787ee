//! Self-test suites: a handful of fast invariant and oracle checks per
//! module, runnable from the command line.

use std::f64::consts::PI;

use crate::bessel::{self, int_with, BesselKind};
use crate::complex::{c_pow_principal, Complex, I};
use crate::deriv::{self, deriv, di_dnu_series, dj_dnu_series, DerivRequest};
use crate::error::{Error, Result};
use crate::finite_diff::bessel_order_fd;
use crate::frac::{frac_eval, frac_int_exp, riemann_liouville_oracle, FracRequest};
use crate::gamma::{gamma, rgamma};
use crate::incgamma::{gamma_reg_lower, GammaParams};
use crate::quad::{exp_sinh, sinh_sinh, tanh_sinh, QuadConfig, QuadResult};
use crate::tail::{sine_integral_limit, tail_i, tail_j, tail_oracle, truncation_point};

pub const SUITES: [&str; 6] = [
    "core_complex",
    "quadrature",
    "bessel_base",
    "order_derivatives",
    "fractional",
    "infinite_order_integrals",
];

#[derive(Debug, Clone, Default, PartialEq)]
pub struct SelftestOptions {
    /// Run only suites whose name contains this string.
    pub filter: Option<String>,
    /// Override every quadrature tolerance.
    pub force_tol: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    pub suite: &'static str,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

type CheckFn = fn(f64) -> Result<Verdict>;

struct Check {
    suite: &'static str,
    name: &'static str,
    tol: f64,
    run: CheckFn,
}

struct Verdict {
    passed: bool,
    detail: String,
}

fn compare(got: f64, expect: f64, bound: f64) -> Verdict {
    let err = (got - expect).abs() / expect.abs().max(1.0);
    Verdict {
        passed: err <= bound,
        detail: format!("got {got:.17e}, expected {expect:.17e}, error {err:.2e} (bound {bound:.0e})"),
    }
}

// Non-converged quadrature fails the check regardless of the value.
fn converged(r: QuadResult<f64>) -> Result<f64> {
    if r.converged {
        Ok(r.value)
    } else {
        Err(Error::NonConvergence("quadrature"))
    }
}

fn checks() -> Vec<Check> {
    vec![
        Check { suite: "core_complex", name: "principal powers", tol: 1e-12, run: |_| {
            let r = c_pow_principal(Complex::new(-1.0, 0.0), 0.5)?;
            let s = c_pow_principal(I * PI, 2.0)?;
            let err = (r - I).norm() + (s + PI * PI).norm() / (PI * PI);
            Ok(Verdict { passed: err < 1e-15, detail: format!("error {err:.2e}") })
        }},
        Check { suite: "core_complex", name: "incomplete gamma recurrence", tol: 1e-12, run: |_| {
            let mut worst: f64 = 0.0;
            for (a, z) in [(0.5, Complex::new(1.5, -2.0)), (2.3, Complex::new(-3.0, 4.0)), (1.0, Complex::new(12.0, 7.0))] {
                let p0 = gamma_reg_lower(a, z, &GammaParams::new(a))?;
                let p1 = gamma_reg_lower(a + 1.0, z, &GammaParams::new(a + 1.0))?;
                let term = (z.ln() * a - z).exp() * rgamma(a + 1.0);
                worst = worst.max((p1 - (p0 - term)).norm());
            }
            Ok(Verdict { passed: worst < 1e-12, detail: format!("worst error {worst:.2e}") })
        }},
        Check { suite: "core_complex", name: "incomplete gamma conjugation", tol: 1e-12, run: |_| {
            let z = Complex::new(-2.5, 3.5);
            let p = gamma_reg_lower(0.7, z, &GammaParams::new(0.7))?;
            let q = gamma_reg_lower(0.7, z.conj(), &GammaParams::new(0.7))?;
            let err = (p.conj() - q).norm();
            Ok(Verdict { passed: err < 1e-14, detail: format!("error {err:.2e}") })
        }},
        Check { suite: "quadrature", name: "endpoint singularity", tol: 1e-12, run: |tol| {
            let r = tanh_sinh(|x: f64| 1.0 / x.sqrt(), 0.0, 1.0, &QuadConfig::with_tol(tol))?;
            Ok(compare(converged(r)?, 2.0, 1e-12))
        }},
        Check { suite: "quadrature", name: "half line", tol: 1e-12, run: |tol| {
            let r = exp_sinh(|x: f64| x * (-x).exp(), 0.0, &QuadConfig::with_tol(tol))?;
            Ok(compare(converged(r)?, 1.0, 1e-12))
        }},
        Check { suite: "quadrature", name: "whole line", tol: 1e-12, run: |tol| {
            let r = sinh_sinh(|x: f64| (-x * x).exp(), &QuadConfig::with_tol(tol))?;
            Ok(compare(converged(r)?, PI.sqrt(), 1e-12))
        }},
        Check { suite: "bessel_base", name: "integral vs series", tol: 1e-12, run: |tol| {
            let cfg = QuadConfig::with_tol(tol);
            let j = converged(int_with(BesselKind::J, 1.3, 2.7, &cfg)?)?;
            let i = converged(int_with(BesselKind::I, 1.3, 2.7, &cfg)?)?;
            let vj = compare(j, bessel::j_series(1.3, 2.7, bessel::SERIES_TERMS)?.value, 1e-11);
            let vi = compare(i, bessel::i_series(1.3, 2.7, bessel::SERIES_TERMS)?.value, 1e-11);
            Ok(Verdict { passed: vj.passed && vi.passed, detail: format!("J: {}; I: {}", vj.detail, vi.detail) })
        }},
        Check { suite: "bessel_base", name: "half-integer closed forms", tol: 1e-12, run: |tol| {
            let cfg = QuadConfig::with_tol(tol);
            let t: f64 = 1.7;
            let y = converged(int_with(BesselKind::Y, 0.5, t, &cfg)?)?;
            let k = converged(int_with(BesselKind::K, 0.5, t, &cfg)?)?;
            let vy = compare(y, -(2.0 / (PI * t)).sqrt() * t.cos(), 1e-11);
            let vk = compare(k, (PI / (2.0 * t)).sqrt() * (-t).exp(), 1e-11);
            Ok(Verdict { passed: vy.passed && vk.passed, detail: format!("Y: {}; K: {}", vy.detail, vk.detail) })
        }},
        Check { suite: "order_derivatives", name: "first derivative vs series", tol: 1e-12, run: |tol| {
            let j = converged(deriv(&DerivRequest::new(BesselKind::J, 1, 0.5, 2.0, tol))?)?;
            let i = converged(deriv(&DerivRequest::new(BesselKind::I, 1, 0.5, 2.0, tol))?)?;
            let vj = compare(j, dj_dnu_series(0.5, 2.0)?.value, 1e-9);
            let vi = compare(i, di_dnu_series(0.5, 2.0)?.value, 1e-9);
            Ok(Verdict { passed: vj.passed && vi.passed, detail: format!("J: {}; I: {}", vj.detail, vi.detail) })
        }},
        Check { suite: "order_derivatives", name: "third derivative vs finite differences", tol: 1e-12, run: |tol| {
            let d = converged(deriv(&DerivRequest::new(BesselKind::K, 3, 2.3, 3.0, tol))?)?;
            Ok(compare(d, bessel_order_fd(BesselKind::K, 3, 2.3, 3.0)?.value, 1e-6))
        }},
        Check { suite: "order_derivatives", name: "zero-argument identity", tol: 1e-12, run: |tol| {
            let (lhs, rhs) = deriv::zero_argument_identity(2, 1.5, tol)?;
            Ok(compare(converged(lhs)?, converged(rhs)?, 1e-10))
        }},
        Check { suite: "fractional", name: "alpha = 1 reduction", tol: 1e-12, run: |tol| {
            let f = converged(frac_eval(&FracRequest::new(BesselKind::K, 1.0, 0.5, 1.5, 2.0, tol))?)?;
            let mut failure = None;
            let r = tanh_sinh(
                |mu: f64| bessel::value(BesselKind::K, mu, 2.0).unwrap_or_else(|e| {
                    failure.get_or_insert(e);
                    0.0
                }),
                0.5,
                1.5,
                &QuadConfig::with_tol(tol),
            )?;
            if let Some(e) = failure {
                return Err(e);
            }
            Ok(compare(f, converged(r)?, 1e-8))
        }},
        Check { suite: "fractional", name: "Riemann-Liouville oracle", tol: 1e-12, run: |tol| {
            let f = converged(frac_eval(&FracRequest::new(BesselKind::J, 0.5, 0.5, 2.0, 2.0, tol))?)?;
            let o = riemann_liouville_oracle(|mu| bessel::value(BesselKind::J, mu, 2.0), 0.5, 0.5, 2.0, tol)?;
            Ok(compare(f, converged(o)?, 1e-8))
        }},
        Check { suite: "fractional", name: "exponential closed form", tol: 1e-12, run: |tol| {
            let s = -1.3;
            let exact = frac_int_exp(0.5, Complex::new(s, 0.0), 0.2, 1.4)?.re;
            let o = riemann_liouville_oracle(|mu| Ok((s * mu).exp()), 0.5, 0.2, 1.4, tol)?;
            Ok(compare(exact, converged(o)?, 1e-10))
        }},
        Check { suite: "infinite_order_integrals", name: "tail of J vs truncation", tol: 1e-12, run: |tol| {
            let (nu, t) = (0.0, 2.0);
            let o = tail_oracle(BesselKind::J, nu, t, truncation_point(nu, t))?;
            Ok(compare(converged(tail_j(nu, t, tol)?)?, o.value, 1e-9))
        }},
        Check { suite: "infinite_order_integrals", name: "tail of I vs truncation", tol: 1e-12, run: |tol| {
            let (nu, t) = (1.0, 2.0);
            let o = tail_oracle(BesselKind::I, nu, t, truncation_point(nu, t))?;
            let v = compare(converged(tail_i(nu, t, tol)?)?, o.value, 1e-9);
            Ok(v)
        }},
        Check { suite: "infinite_order_integrals", name: "sine integral limit", tol: 1e-12, run: |_| {
            let v = sine_integral_limit(1e4)?;
            Ok(Verdict { passed: (v - 0.5).abs() < 1e-4, detail: format!("got {v:.10}") })
        }},
        Check { suite: "core_complex", name: "gamma function", tol: 1e-12, run: |_| {
            Ok(compare(gamma(4.5), 11.631728396567448, 1e-14))
        }},
    ]
}

/// Runs the selected suites in order.
pub fn run(opts: &SelftestOptions) -> Result<Vec<CheckOutcome>> {
    if let Some(f) = &opts.filter {
        if !SUITES.iter().any(|s| s.contains(f.as_str())) {
            return Err(Error::InvalidRequest(format!("no suite matches filter {f:?}")));
        }
    }
    if let Some(t) = opts.force_tol {
        if !(t > 0.0 && t.is_finite()) {
            return Err(Error::InvalidRequest(format!("forced tolerance must be > 0, got {t}")));
        }
    }
    let mut all = checks();
    all.sort_by_key(|c| SUITES.iter().position(|s| *s == c.suite));
    let selected = all
        .into_iter()
        .filter(|c| opts.filter.as_deref().is_none_or(|f| c.suite.contains(f)));
    Ok(selected
        .map(|c| {
            let tol = opts.force_tol.unwrap_or(c.tol);
            let (passed, detail) = match (c.run)(tol) {
                Ok(v) => (v.passed, v.detail),
                Err(e) => (false, e.to_string()),
            };
            CheckOutcome { suite: c.suite, name: c.name, passed, detail }
        })
        .collect())
}
