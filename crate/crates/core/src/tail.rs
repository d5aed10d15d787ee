//! Semi-infinite order-integrals ∫_ν^∞ J_μ(t) dμ and ∫_ν^∞ I_μ(t) dμ, from
//! the representations obtained by integrating the base integrals over the
//! order, and a truncated direct-quadrature oracle.

use std::f64::consts::PI;

use crate::bessel::{value, BesselKind};
use crate::error::{Error, Result};
use crate::gamma::ln_gamma;
use crate::quad::{exp_sinh, tanh_sinh, QuadConfig, QuadResult};

/// Below this the finite-part integrands use their Taylor expansions.
const REMOVABLE_X: f64 = 1e-6;
/// Target for the truncation remainder of the oracle.
pub const TRUNCATION_TARGET: f64 = 1e-12;
const TRUNCATION_SAFETY: f64 = 10.0;
const ORACLE_SEGMENT: f64 = 5.0;

/// Coefficient of cos πν in the semi-infinite piece. Integrating
/// `e^{−μx} sin μπ` over `(ν, ∞)` gives `π cos πν + x sin πν`; an alternative
/// printing of the same formula carries `cos πν` with coefficient 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TailForm {
    Derived,
    Printed,
}

impl TailForm {
    fn cos_coefficient(self) -> f64 {
        match self {
            TailForm::Derived => PI,
            TailForm::Printed => 1.0,
        }
    }
}

fn check(nu: f64, t: f64, tol: f64) -> Result<()> {
    if !(nu.is_finite() && nu >= 0.0) {
        return Err(Error::InvalidRequest(format!("order must be >= 0, got {nu}")));
    }
    if !(t.is_finite() && t > 0.0) {
        return Err(Error::InvalidRequest(format!("argument must be > 0, got {t}")));
    }
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::InvalidRequest(format!("tolerance must be > 0, got {tol}")));
    }
    Ok(())
}

// sin(t sin x − νx)/x, finite at x = 0 with limit t − ν.
fn j_finite_integrand(x: f64, nu: f64, t: f64) -> f64 {
    if x < REMOVABLE_X {
        let d = t - nu;
        let x2 = x * x;
        return d - (t + d * d * d) * x2 / 6.0;
    }
    (t * x.sin() - nu * x).sin() / x
}

// e^{t cos x} sin(νx)/x, finite at x = 0 with limit ν e^t.
fn i_finite_integrand(x: f64, nu: f64, t: f64) -> f64 {
    if x < REMOVABLE_X {
        let x2 = x * x;
        return t.exp() * nu * (1.0 - (nu * nu + 3.0 * t) * x2 / 6.0);
    }
    (t * x.cos()).exp() * (nu * x).sin() / x
}

fn reflected_piece<D>(nu: f64, form: TailForm, damp: D, cfg: &QuadConfig) -> Result<QuadResult<f64>>
where
    D: Fn(f64) -> f64,
{
    let (s, c) = (PI * nu).sin_cos();
    let cc = form.cos_coefficient() * c;
    exp_sinh(
        |x: f64| (damp(x) - nu * x).exp() * (cc + x * s) / (PI * PI + x * x),
        0.0,
        cfg,
    )
}

/// ∫_ν^∞ J_μ(t) dμ with the chosen coefficient form.
pub fn tail_j_form(form: TailForm, nu: f64, t: f64, tol: f64) -> Result<QuadResult<f64>> {
    check(nu, t, tol)?;
    let piece = QuadConfig::with_tol(0.5 * tol);
    let a = tanh_sinh(|x: f64| j_finite_integrand(x, nu, t), 0.0, PI, &piece)?;
    let b = reflected_piece(nu, form, |x| -t * x.sinh(), &piece)?;
    let r = a.combine(-1.0, b).scale(1.0 / PI);
    Ok(QuadResult { value: 0.5 + r.value, ..r })
}

/// ∫_ν^∞ I_μ(t) dμ with the chosen coefficient form.
pub fn tail_i_form(form: TailForm, nu: f64, t: f64, tol: f64) -> Result<QuadResult<f64>> {
    check(nu, t, tol)?;
    let piece = QuadConfig::with_tol(0.5 * tol);
    let a = tanh_sinh(|x: f64| i_finite_integrand(x, nu, t), 0.0, PI, &piece)?;
    let b = reflected_piece(nu, form, |x| -t * x.cosh(), &piece)?;
    let r = a.combine(1.0, b).scale(-1.0 / PI);
    Ok(QuadResult { value: 0.5 * t.exp() + r.value, ..r })
}

/// ∫_ν^∞ J_μ(t) dμ.
pub fn tail_j(nu: f64, t: f64, tol: f64) -> Result<QuadResult<f64>> {
    tail_j_form(TailForm::Derived, nu, t, tol)
}

/// ∫_ν^∞ I_μ(t) dμ.
pub fn tail_i(nu: f64, t: f64, tol: f64) -> Result<QuadResult<f64>> {
    tail_i_form(TailForm::Derived, nu, t, tol)
}

/// Bound on ∫_N^∞ |Z_μ(t)| dμ for Z = J or I, from the leading series term:
/// `|Z_μ(t)| ≤ (t/2)^μ e^{t²/4}/Γ(μ+1)`, decreasing in μ once μ > t/2, so the
/// integral is at most the integrand at N times a geometric factor; a safety
/// factor covers the rest.
pub fn truncation_bound(n: f64, t: f64) -> f64 {
    let log_term = n * (0.5 * t).ln() - ln_gamma(n + 1.0) + 0.25 * t * t;
    // Ratio of consecutive unit steps is at most t/(2(N+1)).
    let ratio = 0.5 * t / (n + 1.0);
    let geometric = if ratio < 1.0 { 1.0 / (1.0 - ratio) } else { f64::INFINITY };
    TRUNCATION_SAFETY * log_term.exp() * geometric
}

/// Smallest integer cut-off above `nu` meeting the truncation target.
pub fn truncation_point(nu: f64, t: f64) -> f64 {
    let mut n = (nu.max(0.5 * t) + 1.0).ceil();
    while truncation_bound(n, t) >= TRUNCATION_TARGET && n < 1000.0 {
        n += 1.0;
    }
    n
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailOracle {
    pub value: f64,
    pub err_est: f64,
    pub cutoff: f64,
    pub remainder_bound: f64,
    pub sufficient: bool,
}

/// `∫_ν^N Z_μ(t) dμ` by direct quadrature of the baseline function, with the
/// truncation remainder bound. Warns when the bound misses the target.
pub fn tail_oracle(kind: BesselKind, nu: f64, t: f64, cutoff: f64) -> Result<TailOracle> {
    if !kind.is_regular() {
        return Err(Error::InvalidRequest(format!("no tail oracle for kind {kind}")));
    }
    check(nu, t, 1.0)?;
    if !(cutoff > nu) {
        return Err(Error::InvalidInterval { a: nu, b: cutoff });
    }
    let cfg = QuadConfig::with_tol(1e-13);
    let mut value_sum = 0.0;
    let mut err = 0.0;
    let mut lo = nu;
    while lo < cutoff {
        let hi = (lo + ORACLE_SEGMENT).min(cutoff);
        let mut failure = None;
        let r = tanh_sinh(
            |mu: f64| match value(kind, mu, t) {
                Ok(v) => v,
                Err(e) => {
                    failure.get_or_insert(e);
                    0.0
                }
            },
            lo,
            hi,
            &cfg,
        )?;
        if let Some(e) = failure {
            return Err(e);
        }
        value_sum += r.value;
        err += r.err_est;
        lo = hi;
    }
    let remainder_bound = truncation_bound(cutoff, t);
    let sufficient = remainder_bound < TRUNCATION_TARGET;
    if !sufficient {
        log::warn!(
            "truncation at N = {cutoff} leaves a remainder bound of {remainder_bound:e} for t = {t}"
        );
    }
    Ok(TailOracle {
        value: value_sum,
        err_est: err,
        cutoff,
        remainder_bound,
        sufficient,
    })
}

/// `(1/π)∫₀^π sin(bx)/x dx = Si(bπ)/π`, integrated period by period in
/// `u = bx`; tends to ½.
pub fn sine_integral_limit(b: f64) -> Result<f64> {
    if !(b > 0.0 && b.is_finite()) {
        return Err(Error::InvalidRequest(format!("b must be > 0, got {b}")));
    }
    let cfg = QuadConfig::with_tol(1e-12);
    let upper = b * PI;
    let mut sum = 0.0;
    let mut lo = 0.0;
    while lo < upper {
        let hi = (lo + PI).min(upper);
        let r = tanh_sinh(|u: f64| if u == 0.0 { 1.0 } else { u.sin() / u }, lo, hi, &cfg)?;
        sum += r.value;
        lo = hi;
    }
    Ok(sum / PI)
}
