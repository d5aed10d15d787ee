//! Regularized lower incomplete gamma function P(a, z) for real `a > 0` and
//! complex `z`.
//!
//! Everything is built on Tricomi's entire function `γ*(a, w) = w^{-a} P(a, w)`,
//! which has no branch cut. The kernels of the fractional module need
//! `e^c · γ*(a, w)` with large, partially cancelling exponents in `c` and `w`,
//! so [`gamma_star_exp`] folds the prefactor into the evaluation instead of
//! multiplying afterwards.
//!
//! Regimes, with `L = |w| − |Re w|` measuring how far `w` sits from the real
//! axis (the series lose about `e^L` to cancellation):
//!
//! * `Re w > 0`, `|w| > a + 25`: continued fraction for the upper function.
//! * `L > 7` and `|w| > a`: the same continued fraction.
//! * `Re w ≥ 0` otherwise: `γ* = e^{-w}/Γ(a+1) Σ w^k/(a+1)_k`.
//! * `Re w < 0` otherwise: `γ* = 1/Γ(a+1) Σ (-w)^k/k! · a/(a+k)` (Kummer
//!   transformed, terms nearly positive), with running rescaling so that
//!   `|w|` in the hundreds does not overflow.

use crate::complex::{ln_principal, Complex, CompensatedSum};
use crate::error::{Error, Result};
use crate::gamma::rgamma;

const CF_SWITCH_REAL: f64 = 25.0;
const CF_SWITCH_OFF_AXIS: f64 = 7.0;
const FPMIN: f64 = 1e-300;
// Below e^{-750} every result underflows, whatever 1/Γ(a+1) is for a ≤ 170.
const UNDERFLOW_EXPONENT: f64 = -750.0;
const RESCALE_ABOVE: f64 = 1e250;
const RESCALE_BY: f64 = 1e-250;

/// Controls for [`gamma_reg_lower`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaParams {
    pub a: f64,
    pub series_terms_max: usize,
    pub cf_terms_max: usize,
    pub tol: f64,
}

impl GammaParams {
    pub fn new(a: f64) -> Self {
        Self {
            a,
            series_terms_max: 20_000,
            cf_terms_max: 20_000,
            tol: 1e-16,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.a > 0.0) || !self.a.is_finite() {
            return Err(Error::Domain(format!(
                "incomplete gamma order must be positive, got {}",
                self.a
            )));
        }
        if !(self.tol > 0.0) {
            return Err(Error::Domain(format!("tolerance must be positive, got {}", self.tol)));
        }
        Ok(())
    }

    fn stop_tol(&self) -> f64 {
        self.tol.max(0.25 * f64::EPSILON)
    }
}

/// P(a, z) = γ(a, z)/Γ(a) with the principal branch of `z^a`.
pub fn gamma_reg_lower(a: f64, z: Complex, params: &GammaParams) -> Result<Complex> {
    let params = GammaParams { a, ..*params };
    params.validate()?;
    if z == Complex::new(0.0, 0.0) {
        return Ok(Complex::new(0.0, 0.0));
    }
    gamma_star_exp_impl(&params, z, ln_principal(z) * a)
}

/// `γ*(a, w) = w^{-a} P(a, w)`, entire in `w`.
pub fn gamma_star(a: f64, w: Complex) -> Result<Complex> {
    gamma_star_exp(a, w, Complex::new(0.0, 0.0))
}

/// `e^c · γ*(a, w)` evaluated without forming `e^c` or `γ*` separately.
pub fn gamma_star_exp(a: f64, w: Complex, c: Complex) -> Result<Complex> {
    let params = GammaParams::new(a);
    params.validate()?;
    gamma_star_exp_impl(&params, w, c)
}

fn gamma_star_exp_impl(p: &GammaParams, w: Complex, c: Complex) -> Result<Complex> {
    let a = p.a;
    let r = w.norm();
    if r == 0.0 {
        return Ok(c.exp() * rgamma(a + 1.0));
    }
    // |γ*(a, w)| ≤ e^{max(0, −Re w)}/Γ(a+1) from the integral over (0, 1).
    if c.re + (-w.re).max(0.0) < UNDERFLOW_EXPONENT {
        return Ok(Complex::new(0.0, 0.0));
    }
    let off_axis = r - w.re.abs();
    let use_cf = (w.re > 0.0 && r > a + CF_SWITCH_REAL) || (off_axis > CF_SWITCH_OFF_AXIS && r > a);
    if use_cf {
        match upper_fraction(p, w) {
            Ok(f) => {
                // γ* = w^{-a} − e^{-w} F / Γ(a)
                let lead = (c - ln_principal(w) * a).exp();
                let tail = if f == Complex::new(0.0, 0.0) {
                    Complex::new(0.0, 0.0)
                } else {
                    (c - w + ln_principal(f)).exp() * rgamma(a)
                };
                return Ok(lead - tail);
            }
            Err(_) => log::debug!("continued fraction stalled at w = {w}, falling back to series"),
        }
    }
    if w.re >= 0.0 {
        series_direct(p, w, c)
    } else {
        series_kummer(p, w, c)
    }
}

// Σ w^k/(a+1)_k, prefactor e^{c-w}/Γ(a+1).
fn series_direct(p: &GammaParams, w: Complex, c: Complex) -> Result<Complex> {
    let a = p.a;
    let mut sum = CompensatedSum::<Complex>::new();
    let mut term = Complex::new(1.0, 0.0);
    let mut log_scale = 0.0;
    sum.add(term);
    let stop = p.stop_tol();
    let r = w.norm();
    for k in 1..=p.series_terms_max {
        term *= w / (a + k as f64);
        if term.norm() > RESCALE_ABOVE {
            term *= RESCALE_BY;
            sum.scale(RESCALE_BY);
            log_scale -= RESCALE_BY.ln();
        }
        sum.add(term);
        if (k as f64) > r - a && term.norm() <= stop * sum.value().norm() {
            return Ok(assemble(sum.value(), c - w + log_scale, a));
        }
    }
    Err(Error::NonConvergence("incomplete gamma power series"))
}

// Σ (-w)^k/k! · a/(a+k), prefactor e^c/Γ(a+1).
fn series_kummer(p: &GammaParams, w: Complex, c: Complex) -> Result<Complex> {
    let a = p.a;
    let mut sum = CompensatedSum::<Complex>::new();
    let mut pow = Complex::new(1.0, 0.0);
    let mut log_scale = 0.0;
    sum.add(pow);
    let stop = p.stop_tol();
    let r = w.norm();
    for k in 1..=p.series_terms_max {
        let kf = k as f64;
        pow *= -w / kf;
        if pow.norm() > RESCALE_ABOVE {
            pow *= RESCALE_BY;
            sum.scale(RESCALE_BY);
            log_scale -= RESCALE_BY.ln();
        }
        let term = pow * (a / (a + kf));
        sum.add(term);
        if kf > r && term.norm() <= stop * sum.value().norm() {
            return Ok(assemble(sum.value(), c + log_scale, a));
        }
    }
    Err(Error::NonConvergence("incomplete gamma Kummer series"))
}

// e^{exponent} · s / Γ(a+1)
fn assemble(s: Complex, exponent: Complex, a: f64) -> Complex {
    let m = s.norm();
    if m == 0.0 {
        return Complex::new(0.0, 0.0);
    }
    (exponent + m.ln()).exp() * (s / m) * rgamma(a + 1.0)
}

// Modified Lentz evaluation of F in Γ(a, w) = e^{-w} w^a F(w).
fn upper_fraction(p: &GammaParams, w: Complex) -> Result<Complex> {
    let a = p.a;
    let tiny = Complex::new(FPMIN, 0.0);
    let mut b = w + 1.0 - a;
    let mut c = Complex::new(1.0 / FPMIN, 0.0);
    let mut d = if b.norm() < FPMIN { tiny } else { b }.inv();
    let mut h = d;
    let stop = p.stop_tol();
    for i in 1..=p.cf_terms_max {
        let fi = i as f64;
        let an = -fi * (fi - a);
        b += 2.0;
        d = d * an + b;
        if d.norm() < FPMIN {
            d = tiny;
        }
        c = b + c.inv() * an;
        if c.norm() < FPMIN {
            c = tiny;
        }
        d = d.inv();
        let del = d * c;
        h *= del;
        if (del - 1.0).norm() <= stop {
            return Ok(h);
        }
    }
    Err(Error::NonConvergence("incomplete gamma continued fraction"))
}
