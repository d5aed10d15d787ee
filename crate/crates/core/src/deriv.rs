//! Derivatives of J, Y, I and K with respect to the order, from the integral
//! representations differentiated under the integral sign.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::bessel::{j_series, y0_series, k0_series, i_series, BesselKind, SeriesValue, SERIES_TERMS, SERIES_T_MAX};
use crate::complex::{powi, CompensatedSum, Complex, I};
use crate::error::{Error, Result};
use crate::gamma::{digamma, rgamma};
use crate::quad::{exp_sinh, sinh_sinh, tanh_sinh, QuadConfig, QuadResult};

/// Highest supported derivative order.
pub const MAX_N: u32 = 12;

/// ln(1e300): integrand peaks above this risk overflow.
const LOG_PEAK_LIMIT: f64 = 690.7755278982137;

const APELBLAT_TOL: f64 = 1e-12;

/// f₁⁽ⁿ⁾ = xⁿ cos(t sin x − νx − nπ/2).
pub fn kernel_f1(n: u32, x: f64, nu: f64, t: f64) -> f64 {
    x.powi(n as i32) * (t * x.sin() - nu * x - n as f64 * FRAC_PI_2).cos()
}

/// f₂⁽ⁿ⁾ = xⁿ sin(t sin x − νx − nπ/2).
pub fn kernel_f2(n: u32, x: f64, nu: f64, t: f64) -> f64 {
    x.powi(n as i32) * (t * x.sin() - nu * x - n as f64 * FRAC_PI_2).sin()
}

fn lemma_complex(n: u32, x: f64, nu: f64) -> Complex {
    let phase = Complex::from_polar(1.0, PI * nu);
    powi(Complex::new(-x, PI), n) * phase * (-nu * x).exp()
}

/// f₃⁽ⁿ⁾ = e^{−νx} Im[(iπ − x)ⁿ e^{iπν}].
pub fn kernel_f3(n: u32, x: f64, nu: f64) -> f64 {
    lemma_complex(n, x, nu).im
}

/// f₄⁽ⁿ⁾ = e^{−νx} Re[(iπ − x)ⁿ e^{iπν}].
pub fn kernel_f4(n: u32, x: f64, nu: f64) -> f64 {
    lemma_complex(n, x, nu).re
}

// e^{log_damp}·e^{−νx}(iπ − x)ⁿe^{iπν}, folding xⁿ into the exponent for
// large x so that neither factor overflows.
fn damped_lemma(n: u32, x: f64, nu: f64, log_damp: f64) -> Complex {
    if x <= 1.0 {
        return lemma_complex(n, x, nu) * log_damp.exp();
    }
    let scale = (log_damp - nu * x + n as f64 * x.ln()).exp();
    if scale == 0.0 {
        return Complex::new(0.0, 0.0);
    }
    let phase = Complex::from_polar(1.0, PI * nu);
    powi(Complex::new(-1.0, PI / x), n) * phase * scale
}

// xⁿ e^{log_damp} for x ≥ 0.
fn damped_power(n: u32, x: f64, log_damp: f64) -> f64 {
    if n == 0 {
        return log_damp.exp();
    }
    if x <= 1.0 {
        return x.powi(n as i32) * log_damp.exp();
    }
    (log_damp + n as f64 * x.ln()).exp()
}

/// A fully specified derivative evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivRequest {
    pub kind: BesselKind,
    pub n: u32,
    pub nu: f64,
    pub t: f64,
    pub tol: f64,
}

impl DerivRequest {
    pub fn new(kind: BesselKind, n: u32, nu: f64, t: f64, tol: f64) -> Self {
        Self { kind, n, nu, t, tol }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n > MAX_N {
            return Err(Error::InvalidRequest(format!(
                "derivative order {} exceeds the supported maximum {MAX_N}",
                self.n
            )));
        }
        if !(self.nu.is_finite() && self.nu >= 0.0) {
            return Err(Error::InvalidRequest(format!("order must be >= 0, got {}", self.nu)));
        }
        if !(self.t.is_finite() && self.t >= 0.0) {
            return Err(Error::InvalidRequest(format!("argument must be >= 0, got {}", self.t)));
        }
        if self.t == 0.0 && !self.kind.is_regular() {
            return Err(Error::InvalidRequest(format!(
                "{} is unbounded at t = 0; use value_at_zero",
                self.kind
            )));
        }
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(Error::InvalidRequest(format!("tolerance must be > 0, got {}", self.tol)));
        }
        Ok(())
    }
}

/// Limit of ∂ⁿ/∂νⁿ of the given kind as t → 0⁺.
///
/// J and I vanish for ν > 0. At ν = 0 they tend to 1 for n = 0 and, for
/// n ≥ 1, diverge like lnⁿ(t/2). Y tends to −∞ and K to +∞.
pub fn value_at_zero(kind: BesselKind, n: u32, nu: f64) -> f64 {
    match kind {
        BesselKind::Y => f64::NEG_INFINITY,
        BesselKind::K => f64::INFINITY,
        BesselKind::J | BesselKind::I => {
            if nu > 0.0 {
                0.0
            } else if n == 0 {
                1.0
            } else if n % 2 == 1 {
                f64::NEG_INFINITY
            } else {
                f64::INFINITY
            }
        }
    }
}

fn warn_on_peak(req: &DerivRequest) {
    if req.kind != BesselKind::Y {
        return;
    }
    // Maximum of n ln x + νx − t sinh x: at cosh x = ν/t when ν > t.
    let ratio = req.nu / req.t;
    if ratio <= 1.0 {
        return;
    }
    let x = ratio.acosh();
    let peak = req.n as f64 * x.ln().max(0.0) + req.nu * x - req.t * x.sinh();
    if peak > LOG_PEAK_LIMIT {
        log::warn!(
            "Y derivative integrand peaks near e^{peak:.0} at nu = {}, t = {}; expect overflow",
            req.nu,
            req.t
        );
    }
}

/// ∂ⁿ/∂νⁿ of the requested kind. Each quadrature piece gets half the
/// tolerance; the reported error estimate is their sum.
pub fn deriv(req: &DerivRequest) -> Result<QuadResult<f64>> {
    req.validate()?;
    if req.t == 0.0 {
        return Ok(QuadResult::exact(value_at_zero(req.kind, req.n, req.nu)));
    }
    warn_on_peak(req);
    let DerivRequest { kind, n, nu, t, tol } = *req;
    let piece = QuadConfig::with_tol(0.5 * tol);
    let whole = QuadConfig::with_tol(tol);
    let nf = n as f64;
    let r = match kind {
        BesselKind::J => {
            let a = tanh_sinh(|x: f64| kernel_f1(n, x, nu, t), 0.0, PI, &piece)?;
            let b = exp_sinh(|x: f64| damped_lemma(n, x, nu, -t * x.sinh()).im, 0.0, &piece)?;
            a.combine(-1.0, b).scale(1.0 / PI)
        }
        BesselKind::Y => {
            let a = tanh_sinh(|x: f64| kernel_f2(n, x, nu, t), 0.0, PI, &piece)?;
            let b = exp_sinh(
                |x: f64| {
                    let sh = t * x.sinh();
                    damped_power(n, x, nu * x - sh) + damped_lemma(n, x, nu, -sh).re
                },
                0.0,
                &piece,
            )?;
            a.combine(-1.0, b).scale(1.0 / PI)
        }
        BesselKind::I => {
            let a = tanh_sinh(
                |x: f64| x.powi(n as i32) * (t * x.cos()).exp() * (nu * x + nf * FRAC_PI_2).cos(),
                0.0,
                PI,
                &piece,
            )?;
            let b = exp_sinh(|x: f64| damped_lemma(n, x, nu, -t * x.cosh()).im, 0.0, &piece)?;
            a.combine(-1.0, b).scale(1.0 / PI)
        }
        BesselKind::K => {
            let r = sinh_sinh(
                |x: f64| {
                    let e = nu * x - t * x.cosh();
                    let p = damped_power(n, x.abs(), e);
                    if x < 0.0 && n % 2 == 1 {
                        -p
                    } else {
                        p
                    }
                },
                &whole,
            )?;
            r.scale(0.5)
        }
    };
    Ok(r)
}

// J_ν ln(t/2) − (t/2)^ν Σ s^k ψ(ν+k+1)(t/2)^{2k}/(k! Γ(ν+k+1)).
fn first_derivative_series(nu: f64, t: f64, sign: f64) -> Result<SeriesValue> {
    if !(nu.is_finite() && nu >= 0.0) {
        return Err(Error::Domain(format!("order must be >= 0, got {nu}")));
    }
    if !(t.is_finite() && t >= 0.0) {
        return Err(Error::Domain(format!("argument must be >= 0, got {t}")));
    }
    if t == 0.0 {
        let value = if nu > 0.0 { 0.0 } else { f64::NEG_INFINITY };
        return Ok(SeriesValue { value, terms: 0, warning: false });
    }
    let half = 0.5 * t;
    let q = sign * half * half;
    let mut c = half.powf(nu) * rgamma(nu + 1.0);
    let mut psi = digamma(nu + 1.0)?;
    let mut base = CompensatedSum::<f64>::new();
    let mut weighted = CompensatedSum::<f64>::new();
    let mut k = 0usize;
    while k < SERIES_TERMS {
        base.add(c);
        weighted.add(c * psi);
        let kf = k as f64;
        psi += 1.0 / (nu + kf + 1.0);
        k += 1;
        c *= q / ((kf + 1.0) * (kf + 1.0 + nu));
        let small = |s: &CompensatedSum<f64>, term: f64| term.abs() < 1e-17 * s.value().abs();
        if c == 0.0 || (small(&base, c) && small(&weighted, c * psi)) {
            break;
        }
    }
    Ok(SeriesValue {
        value: base.value() * half.ln() - weighted.value(),
        terms: k,
        warning: t > SERIES_T_MAX,
    })
}

/// ∂J_ν(t)/∂ν from the ψ-weighted power series.
pub fn dj_dnu_series(nu: f64, t: f64) -> Result<SeriesValue> {
    first_derivative_series(nu, t, -1.0)
}

/// ∂I_ν(t)/∂ν from the ψ-weighted power series.
pub fn di_dnu_series(nu: f64, t: f64) -> Result<SeriesValue> {
    first_derivative_series(nu, t, 1.0)
}

fn check_apelblat(nu: f64, t: f64) -> Result<()> {
    if !(nu.is_finite() && nu > 0.0) {
        return Err(Error::Domain(format!("order must be > 0, got {nu}")));
    }
    if !(t.is_finite() && t > 0.0) {
        return Err(Error::Domain(format!("argument must be > 0, got {t}")));
    }
    Ok(())
}

fn apelblat_quad<F>(mut integrand: F, a: f64, b: f64) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    let mut failure = None;
    let r = tanh_sinh(
        |x: f64| {
            if failure.is_some() {
                return 0.0;
            }
            integrand(x).unwrap_or_else(|e| {
                failure = Some(e);
                0.0
            })
        },
        a,
        b,
        &QuadConfig::with_tol(APELBLAT_TOL),
    )?;
    if let Some(e) = failure {
        return Err(e);
    }
    if !r.converged {
        return Err(Error::NonConvergence("first-derivative integral"));
    }
    Ok(r.value)
}

// With u = sin²θ the integral is ½∫₀¹ Z₀(t(1−u)) Z_ν(tu) du/u. For ν ≥ ½ it is
// evaluated over θ' = π/2 − θ, putting the tan θ factor at the lower limit.
// Smaller orders make the integrand behave like u^{ν−1}; there u = (1−r)^{1/ν}
// turns ν du/u into a bounded measure and cancels the ν prefactor.
fn apelblat<Z0, Zn>(nu: f64, t: f64, prefactor: f64, z0: Z0, zn: Zn) -> Result<f64>
where
    Z0: Fn(f64) -> Result<f64>,
    Zn: Fn(f64) -> Result<f64>,
{
    check_apelblat(nu, t)?;
    if nu >= 0.5 {
        let v = apelblat_quad(
            |phi| {
                let (s, c) = phi.sin_cos();
                let outer = t * c * c;
                if outer <= 0.0 {
                    return Ok(0.0);
                }
                Ok(c / s * z0(outer)? * zn(t * s * s)?)
            },
            0.0,
            FRAC_PI_2,
        )?;
        return Ok(prefactor * v);
    }
    let leading = (0.5 * t).powf(nu) * rgamma(nu + 1.0);
    let integrand = |r: f64| -> Result<f64> {
        let log_u = (-r).ln_1p() / nu;
        let one_minus_u = -log_u.exp_m1();
        if one_minus_u <= 0.0 {
            return Ok(0.0);
        }
        let u = log_u.exp();
        // Z_ν(tu)/u^ν, with its limit at u = 0.
        let g = if u > 0.0 { zn(t * u)? / u.powf(nu) } else { leading };
        Ok(z0(t * one_minus_u)? * g)
    };
    // u falls from 1 to e^{-10} over r ∈ (0, 10ν).
    let split = (10.0 * nu).min(0.5);
    let v = apelblat_quad(integrand, 0.0, split)? + apelblat_quad(integrand, split, 1.0)?;
    Ok(0.5 * prefactor / nu * v)
}

/// ∂J_ν(t)/∂ν = πν ∫₀^{π/2} tan θ Y₀(t sin²θ) J_ν(t cos²θ) dθ, ν > 0.
pub fn dj_dnu_apelblat(nu: f64, t: f64) -> Result<f64> {
    apelblat(nu, t, PI * nu, y0_series, |x| Ok(j_series(nu, x, SERIES_TERMS)?.value))
}

/// ∂I_ν(t)/∂ν = −2ν ∫₀^{π/2} tan θ K₀(t sin²θ) I_ν(t cos²θ) dθ, ν > 0.
pub fn di_dnu_apelblat(nu: f64, t: f64) -> Result<f64> {
    apelblat(nu, t, -2.0 * nu, k0_series, |x| Ok(i_series(nu, x, SERIES_TERMS)?.value))
}

/// Both sides of the identity behind the t = 0 limits:
/// `Im ∫₀^∞ (iπ − x)ⁿ e^{(iπ − x)ν} dx` and `Re ∫₀^π (ix)ⁿ e^{iνx} dx`.
pub fn zero_argument_identity(n: u32, nu: f64, tol: f64) -> Result<(QuadResult<f64>, QuadResult<f64>)> {
    if !(nu.is_finite() && nu > 0.0) {
        return Err(Error::Domain(format!("order must be > 0, got {nu}")));
    }
    let cfg = QuadConfig::with_tol(tol);
    let lhs = exp_sinh(|x: f64| damped_lemma(n, x, nu, 0.0), 0.0, &cfg)?.map(|z| z.im);
    let rhs = tanh_sinh(|x: f64| powi(I * x, n) * Complex::from_polar(1.0, nu * x), 0.0, PI, &cfg)?
        .map(|z| z.re);
    Ok((lhs, rhs))
}
