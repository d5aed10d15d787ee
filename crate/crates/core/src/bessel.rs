//! Baseline J, Y, I and K: power series, quotient definitions for
//! non-integer order, and the classical integral representations.
//!
//! Everything here serves as an oracle for the derivative and fractional
//! modules, so the code paths are kept separate from theirs.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::str::FromStr;

use crate::complex::CompensatedSum;
use crate::error::{Error, Result};
use crate::gamma::{rgamma, EULER_GAMMA};
use crate::quad::{exp_sinh, sinh_sinh, tanh_sinh, QuadConfig, QuadResult};

/// Series truncation cap.
pub const SERIES_TERMS: usize = 200;
/// Above this argument the alternating J series loses too many digits.
pub const SERIES_T_MAX: f64 = 30.0;
/// Minimum distance from an integer for the quotient definitions.
pub const NEAR_INTEGER: f64 = 1e-3;
/// Default tolerance of the integral forms.
pub const INT_TOL: f64 = 1e-12;

const SERIES_REL: f64 = 1e-17;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BesselKind {
    J,
    Y,
    I,
    K,
}

impl BesselKind {
    pub const ALL: [BesselKind; 4] = [BesselKind::J, BesselKind::Y, BesselKind::I, BesselKind::K];

    /// J and I are finite at the origin; Y and K are not.
    pub fn is_regular(self) -> bool {
        matches!(self, BesselKind::J | BesselKind::I)
    }
}

impl fmt::Display for BesselKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            BesselKind::J => "J",
            BesselKind::Y => "Y",
            BesselKind::I => "I",
            BesselKind::K => "K",
        };
        f.write_str(s)
    }
}

impl FromStr for BesselKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "J" | "j" => Ok(BesselKind::J),
            "Y" | "y" => Ok(BesselKind::Y),
            "I" | "i" => Ok(BesselKind::I),
            "K" | "k" => Ok(BesselKind::K),
            other => Err(Error::InvalidRequest(format!("unknown kind {other:?}"))),
        }
    }
}

/// An order/argument pair with `ν ≥ 0` and `t ≥ 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalPoint {
    pub nu: f64,
    pub t: f64,
}

impl EvalPoint {
    pub fn new(nu: f64, t: f64) -> Result<Self> {
        if !(nu.is_finite() && nu >= 0.0) {
            return Err(Error::Domain(format!("order must be finite and >= 0, got {nu}")));
        }
        if !(t.is_finite() && t >= 0.0) {
            return Err(Error::Domain(format!("argument must be finite and >= 0, got {t}")));
        }
        Ok(Self { nu, t })
    }
}

/// A truncated series value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesValue {
    pub value: f64,
    pub terms: usize,
    /// Set when `t` exceeds the range where the series is trustworthy.
    pub warning: bool,
}

fn check_series_args(nu: f64, t: f64) -> Result<()> {
    if !(nu.is_finite() && nu >= 0.0) {
        return Err(Error::Domain(format!("series order must be >= 0, got {nu}")));
    }
    if !(t.is_finite() && t >= 0.0) {
        return Err(Error::Domain(format!("series argument must be >= 0, got {t}")));
    }
    Ok(())
}

// Σ_k sign^k (t/2)^{2k+ν} / (k! Γ(k+ν+1)) for any real ν and t > 0.
fn power_series(nu: f64, t: f64, sign: f64, terms: usize) -> (f64, usize) {
    let half = 0.5 * t;
    let q = sign * half * half;
    let mut term = half.powf(nu) * rgamma(nu + 1.0);
    let mut sum = CompensatedSum::<f64>::new();
    let mut k = 0usize;
    // With a zero leading coefficient (negative integer ν) the recurrence
    // cannot start; those orders are handled by the callers.
    while k < terms {
        sum.add(term);
        k += 1;
        let kf = k as f64;
        term *= q / (kf * (kf + nu));
        let s = sum.value();
        if term.abs() < SERIES_REL * s.abs() || term == 0.0 {
            break;
        }
    }
    (sum.value(), k)
}

fn series_at_zero(nu: f64) -> SeriesValue {
    SeriesValue {
        value: if nu == 0.0 { 1.0 } else { 0.0 },
        terms: 0,
        warning: false,
    }
}

/// Power series of J_ν(t), capped at `terms` terms.
pub fn j_series(nu: f64, t: f64, terms: usize) -> Result<SeriesValue> {
    check_series_args(nu, t)?;
    if t == 0.0 {
        return Ok(series_at_zero(nu));
    }
    let (value, used) = power_series(nu, t, -1.0, terms);
    Ok(SeriesValue {
        value,
        terms: used,
        warning: t > SERIES_T_MAX,
    })
}

/// Power series of I_ν(t), capped at `terms` terms.
pub fn i_series(nu: f64, t: f64, terms: usize) -> Result<SeriesValue> {
    check_series_args(nu, t)?;
    if t == 0.0 {
        return Ok(series_at_zero(nu));
    }
    let (value, used) = power_series(nu, t, 1.0, terms);
    Ok(SeriesValue {
        value,
        terms: used,
        warning: t > SERIES_T_MAX,
    })
}

fn is_integer(x: f64) -> bool {
    x == x.round()
}

// J_μ(t) or I_μ(t) for any real μ and t > 0.
fn signed_series(mu: f64, t: f64, sign: f64) -> f64 {
    if mu < 0.0 && is_integer(mu) {
        let n = -mu;
        let v = power_series(n, t, sign, SERIES_TERMS).0;
        // J_{-n} = (-1)^n J_n, I_{-n} = I_n.
        return if sign < 0.0 && n % 2.0 == 1.0 { -v } else { v };
    }
    power_series(mu, t, sign, SERIES_TERMS).0
}

/// J_μ(t) from the series for any real order, `t > 0`.
pub fn j_any(mu: f64, t: f64) -> f64 {
    signed_series(mu, t, -1.0)
}

/// I_μ(t) from the series for any real order, `t > 0`.
pub fn i_any(mu: f64, t: f64) -> f64 {
    signed_series(mu, t, 1.0)
}

fn distance_to_integer(x: f64) -> f64 {
    (x - x.round()).abs()
}

fn check_combo(nu: f64, t: f64) -> Result<()> {
    if !(t.is_finite() && t > 0.0) {
        return Err(Error::Domain(format!("argument must be > 0, got {t}")));
    }
    if !nu.is_finite() {
        return Err(Error::Domain(format!("order must be finite, got {nu}")));
    }
    if distance_to_integer(nu) <= NEAR_INTEGER {
        return Err(Error::NearIntegerOrder(nu));
    }
    Ok(())
}

/// Y_ν(t) = (J_ν cos νπ − J_{−ν}) / sin νπ for non-integer ν.
pub fn y_combo(nu: f64, t: f64) -> Result<f64> {
    check_combo(nu, t)?;
    let (s, c) = (PI * nu).sin_cos();
    Ok((j_any(nu, t) * c - j_any(-nu, t)) / s)
}

/// K_ν(t) = π/2 (I_{−ν} − I_ν) / sin νπ for non-integer ν.
pub fn k_combo(nu: f64, t: f64) -> Result<f64> {
    check_combo(nu, t)?;
    Ok(FRAC_PI_2 * (i_any(-nu, t) - i_any(nu, t)) / (PI * nu).sin())
}

// Harmonic-weighted tail Σ_{k≥1} s^{k+1} H_k q^k/(k!)², shared by Y₀ and K₀.
fn harmonic_series(q: f64, sign: f64) -> f64 {
    let mut sum = CompensatedSum::<f64>::new();
    let mut term = 1.0;
    let mut harmonic = 0.0;
    for k in 1..=SERIES_TERMS {
        let kf = k as f64;
        term *= sign * q / (kf * kf);
        harmonic += 1.0 / kf;
        let add = harmonic * term;
        sum.add(add);
        if add.abs() < SERIES_REL * sum.value().abs() {
            break;
        }
    }
    sum.value()
}

/// Y₀(t) from its logarithmic series, `t > 0`.
pub fn y0_series(t: f64) -> Result<f64> {
    if !(t.is_finite() && t > 0.0) {
        return Err(Error::Domain(format!("Y0 needs t > 0, got {t}")));
    }
    let q = 0.25 * t * t;
    let j0 = power_series(0.0, t, -1.0, SERIES_TERMS).0;
    let tail = -harmonic_series(q, -1.0);
    Ok(2.0 / PI * (((0.5 * t).ln() + EULER_GAMMA) * j0 + tail))
}

/// K₀(t) from its logarithmic series, `t > 0`.
pub fn k0_series(t: f64) -> Result<f64> {
    if !(t.is_finite() && t > 0.0) {
        return Err(Error::Domain(format!("K0 needs t > 0, got {t}")));
    }
    let q = 0.25 * t * t;
    let i0 = power_series(0.0, t, 1.0, SERIES_TERMS).0;
    Ok(-((0.5 * t).ln() + EULER_GAMMA) * i0 + harmonic_series(q, 1.0))
}

fn check_int_args(nu: f64, t: f64) -> Result<()> {
    if !(nu.is_finite() && nu >= 0.0) {
        return Err(Error::Domain(format!("order must be >= 0, got {nu}")));
    }
    if !(t.is_finite() && t > 0.0) {
        return Err(Error::Domain(format!("integral forms need t > 0, got {t}")));
    }
    Ok(())
}

fn half_tol(cfg: &QuadConfig) -> QuadConfig {
    QuadConfig {
        tol: 0.5 * cfg.tol,
        ..*cfg
    }
}

/// J_ν(t) from the Schläfli integral, with quadrature diagnostics.
pub fn j_int_with(nu: f64, t: f64, cfg: &QuadConfig) -> Result<QuadResult<f64>> {
    check_int_args(nu, t)?;
    let piece = half_tol(cfg);
    let finite = tanh_sinh(|x: f64| (t * x.sin() - nu * x).cos(), 0.0, PI, &piece)?;
    let s = (nu * PI).sin();
    if s == 0.0 {
        return Ok(finite.scale(1.0 / PI));
    }
    let tail = exp_sinh(|x: f64| (-t * x.sinh() - nu * x).exp(), 0.0, &piece)?;
    Ok(finite.combine(-s, tail).scale(1.0 / PI))
}

/// Y_ν(t) from its integral representation, with quadrature diagnostics.
pub fn y_int_with(nu: f64, t: f64, cfg: &QuadConfig) -> Result<QuadResult<f64>> {
    check_int_args(nu, t)?;
    let piece = half_tol(cfg);
    let c = (nu * PI).cos();
    let finite = tanh_sinh(|x: f64| (t * x.sin() - nu * x).sin(), 0.0, PI, &piece)?;
    let tail = exp_sinh(
        |x: f64| {
            let sh = t * x.sinh();
            (nu * x - sh).exp() + c * (-nu * x - sh).exp()
        },
        0.0,
        &piece,
    )?;
    Ok(finite.combine(-1.0, tail).scale(1.0 / PI))
}

/// I_ν(t) from its integral representation, with quadrature diagnostics.
pub fn i_int_with(nu: f64, t: f64, cfg: &QuadConfig) -> Result<QuadResult<f64>> {
    check_int_args(nu, t)?;
    let piece = half_tol(cfg);
    let finite = tanh_sinh(|x: f64| (t * x.cos()).exp() * (nu * x).cos(), 0.0, PI, &piece)?;
    let s = (nu * PI).sin();
    if s == 0.0 {
        return Ok(finite.scale(1.0 / PI));
    }
    let tail = exp_sinh(|x: f64| (-t * x.cosh() - nu * x).exp(), 0.0, &piece)?;
    Ok(finite.combine(-s, tail).scale(1.0 / PI))
}

/// K_ν(t) = ½∫ e^{νx − t cosh x} dx over the real line.
pub fn k_int_with(nu: f64, t: f64, cfg: &QuadConfig) -> Result<QuadResult<f64>> {
    check_int_args(nu, t)?;
    let r = sinh_sinh(|x: f64| (nu * x - t * x.cosh()).exp(), cfg)?;
    Ok(r.scale(0.5))
}

fn converged(r: QuadResult<f64>, what: &'static str) -> Result<f64> {
    if r.converged {
        Ok(r.value)
    } else {
        Err(Error::NonConvergence(what))
    }
}

pub fn j_int(nu: f64, t: f64) -> Result<f64> {
    converged(j_int_with(nu, t, &QuadConfig::with_tol(INT_TOL))?, "J integral")
}

pub fn y_int(nu: f64, t: f64) -> Result<f64> {
    converged(y_int_with(nu, t, &QuadConfig::with_tol(INT_TOL))?, "Y integral")
}

pub fn i_int(nu: f64, t: f64) -> Result<f64> {
    converged(i_int_with(nu, t, &QuadConfig::with_tol(INT_TOL))?, "I integral")
}

pub fn k_int(nu: f64, t: f64) -> Result<f64> {
    converged(k_int_with(nu, t, &QuadConfig::with_tol(INT_TOL))?, "K integral")
}

/// Integral form of the given kind.
pub fn int_with(kind: BesselKind, nu: f64, t: f64, cfg: &QuadConfig) -> Result<QuadResult<f64>> {
    match kind {
        BesselKind::J => j_int_with(nu, t, cfg),
        BesselKind::Y => y_int_with(nu, t, cfg),
        BesselKind::I => i_int_with(nu, t, cfg),
        BesselKind::K => k_int_with(nu, t, cfg),
    }
}

// The K quotient cancels badly once I_ν grows, and 1/sin νπ amplifies series
// rounding near integers, so the baseline uses quotients only for Y away
// from integers.
const QUOTIENT_MARGIN: f64 = 0.05;

/// Best available baseline value: series or quotient where safe, integral
/// forms otherwise.
pub fn value(kind: BesselKind, nu: f64, t: f64) -> Result<f64> {
    let series_ok = t <= SERIES_T_MAX;
    match kind {
        BesselKind::J if series_ok => Ok(j_series(nu, t, SERIES_TERMS)?.value),
        BesselKind::I if series_ok => Ok(i_series(nu, t, SERIES_TERMS)?.value),
        BesselKind::Y if series_ok && distance_to_integer(nu) > QUOTIENT_MARGIN => y_combo(nu, t),
        _ => refined_int(kind, nu, t),
    }
}

// Integral form to near-full relative accuracy: after a converged pass at the
// default tolerance, small values are recomputed with a tolerance scaled to
// their size, keeping the better of the two passes.
fn refined_int(kind: BesselKind, nu: f64, t: f64) -> Result<f64> {
    let first = converged(int_with(kind, nu, t, &QuadConfig::with_tol(INT_TOL))?, "integral form")?;
    if first.abs() >= 1.0 || first == 0.0 {
        return Ok(first);
    }
    let cfg = QuadConfig::with_tol((1e-14 * first.abs()).max(1e-300));
    let second = int_with(kind, nu, t, &cfg)?;
    Ok(second.value)
}

/// Baseline value for any real order, `t > 0`. Negative orders use the
/// reflection formulas when the integral forms are needed.
pub fn value_any(kind: BesselKind, mu: f64, t: f64) -> Result<f64> {
    if mu >= 0.0 {
        return value(kind, mu, t);
    }
    let nu = -mu;
    let (s, c) = (PI * nu).sin_cos();
    let non_integer = distance_to_integer(nu) > NEAR_INTEGER;
    if t <= SERIES_T_MAX {
        match kind {
            BesselKind::J => return Ok(j_any(mu, t)),
            BesselKind::I => return Ok(i_any(mu, t)),
            BesselKind::Y if non_integer => return y_combo(mu, t),
            _ => {}
        }
    }
    match kind {
        BesselKind::K => value(BesselKind::K, nu, t),
        // J_{-ν} = cos νπ J_ν − sin νπ Y_ν
        BesselKind::J => Ok(c * value(BesselKind::J, nu, t)? - s * value(BesselKind::Y, nu, t)?),
        // Y_{-ν} = sin νπ J_ν + cos νπ Y_ν
        BesselKind::Y => Ok(s * value(BesselKind::J, nu, t)? + c * value(BesselKind::Y, nu, t)?),
        // I_{-ν} = I_ν + (2/π) sin νπ K_ν
        BesselKind::I => Ok(value(BesselKind::I, nu, t)? + 2.0 / PI * s * value(BesselKind::K, nu, t)?),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs().max(1.0)
    }

    #[test]
    fn values_at_origin() {
        assert_eq!(j_series(0.0, 0.0, 10).unwrap().value, 1.0);
        assert_eq!(j_series(2.5, 0.0, 10).unwrap().value, 0.0);
        assert_eq!(i_series(0.0, 0.0, 10).unwrap().value, 1.0);
    }

    #[test]
    fn series_reference_values() {
        // 50-digit references.
        assert!(close(j_series(1.0, 2.0, 200).unwrap().value, 0.5767248077568734, 1e-15));
        assert!(close(j_series(0.0, 1.0, 200).unwrap().value, 0.7651976865579666, 1e-15));
        assert!(close(i_series(3.0, 4.0, 200).unwrap().value, 3.337275778420344, 1e-14));
        let half = (2.0 / PI).sqrt() * 1f64.sinh();
        assert!(close(i_series(0.5, 1.0, 200).unwrap().value, half, 1e-15));
    }

    #[test]
    fn large_argument_sets_warning() {
        assert!(j_series(1.0, 31.0, 200).unwrap().warning);
        assert!(!j_series(1.0, 29.0, 200).unwrap().warning);
        assert!(j_series(-1.0, 1.0, 200).is_err());
    }

    #[test]
    fn integral_forms_match_references() {
        assert!(close(k_int(0.5, 1.0).unwrap(), (FRAC_PI_2).sqrt() * (-1f64).exp(), 1e-12));
        assert!(close(j_int(0.0, 1.0).unwrap(), j_series(0.0, 1.0, 200).unwrap().value, 1e-11));
        assert!(close(y_int(0.5, 1.0).unwrap(), -j_any(-0.5, 1.0), 1e-11));
        assert!(close(j_int(1.0, 2.0).unwrap(), 0.5767248077568734, 1e-11));
        assert!(close(i_int(3.0, 4.0).unwrap(), 3.337275778420344, 1e-11));
        assert!(close(y_int(0.25, 3.0).unwrap(), 0.4473801012748924, 1e-11));
        assert!(close(k_int(1.5, 1.0).unwrap(), 0.9221370088957891, 1e-11));
    }

    #[test]
    fn combos() {
        let k = (PI / 4.0).sqrt() * (-2f64).exp();
        assert!(close(k_combo(0.5, 2.0).unwrap(), k, 1e-14));
        assert!(close(y_combo(0.25, 3.0).unwrap(), y_int(0.25, 3.0).unwrap(), 1e-10));
        assert!(close(k_combo(1.5, 1.0).unwrap(), k_int(1.5, 1.0).unwrap(), 1e-10));
        assert_eq!(y_combo(2.0005, 1.0), Err(Error::NearIntegerOrder(2.0005)));
        assert!(k_combo(3.0, 1.0).is_err());
    }

    #[test]
    fn zeroth_order_log_series() {
        // 50-digit references for Y₀(1), K₀(1), Y₀(5), K₀(0.01).
        assert!(close(y0_series(1.0).unwrap(), 0.08825696421567696, 1e-14));
        assert!(close(k0_series(1.0).unwrap(), 0.42102443824070834, 1e-14));
        assert!(close(y0_series(5.0).unwrap(), -0.3085176252490338, 1e-13));
        assert!(close(k0_series(0.01).unwrap(), 4.721244730161094, 1e-14));
        assert!(close(y0_series(2.0).unwrap(), y_int(0.0, 2.0).unwrap(), 1e-11));
    }

    #[test]
    fn series_and_integrals_agree_on_grid() {
        for nu in [0.0, 0.25, 0.5, 1.0, 2.5, 5.0] {
            for t in [0.5, 1.0, 2.0, 5.0, 10.0] {
                let js = j_series(nu, t, 200).unwrap().value;
                assert!(close(j_int(nu, t).unwrap(), js, 1e-10), "J {nu} {t}");
                let is = i_series(nu, t, 200).unwrap().value;
                assert!(close(i_int(nu, t).unwrap(), is, 1e-10), "I {nu} {t}");
                let k = k_int(nu, t).unwrap();
                assert!(k > 0.0);
                if distance_to_integer(nu) > NEAR_INTEGER {
                    assert!(close(y_int(nu, t).unwrap(), y_combo(nu, t).unwrap(), 1e-10));
                    assert!(close(k, k_combo(nu, t).unwrap(), 1e-10), "K {nu} {t}");
                }
            }
        }
    }

    #[test]
    fn wronskian_from_integrals() {
        for nu in [0.0, 0.3, 1.0, 2.5] {
            for t in [0.5, 2.0, 7.0] {
                let w = j_int(nu + 1.0, t).unwrap() * y_int(nu, t).unwrap()
                    - j_int(nu, t).unwrap() * y_int(nu + 1.0, t).unwrap();
                assert!((w - 2.0 / (PI * t)).abs() < 1e-9, "{nu} {t}: {w}");
            }
        }
    }

    #[test]
    fn k_kernel_is_even_in_order() {
        let cfg = QuadConfig::with_tol(INT_TOL);
        for (nu, t) in [(0.7, 1.0), (3.0, 0.5), (5.0, 10.0)] {
            let a = k_int_with(nu, t, &cfg).unwrap();
            let b = sinh_sinh(|x: f64| (-nu * x - t * x.cosh()).exp(), &cfg).unwrap().scale(0.5);
            assert_eq!(a.value.to_bits(), b.value.to_bits());
        }
    }

    #[test]
    fn negative_orders() {
        // Y_{-1.5}(2) = sin(1.5π) J_{1.5}(2) + 0 = -J_{1.5}(2)
        let j = value(BesselKind::J, 1.5, 2.0).unwrap();
        assert!(close(value_any(BesselKind::Y, -1.5, 2.0).unwrap(), -j, 1e-13));
        assert!(close(value_any(BesselKind::J, -2.0, 2.0).unwrap(), value(BesselKind::J, 2.0, 2.0).unwrap(), 1e-14));
        let k = value(BesselKind::K, 2.0, 3.0).unwrap();
        assert_eq!(value_any(BesselKind::K, -2.0, 3.0).unwrap(), k);
        // Large argument goes through the reflection formulas.
        let a = value_any(BesselKind::J, -0.3, 35.0).unwrap();
        let b = (0.3 * PI).cos() * j_int(0.3, 35.0).unwrap()
            - (0.3 * PI).sin() * y_int(0.3, 35.0).unwrap();
        assert!(close(a, b, 1e-14));
        assert!(close(a, -0.1337929600352844, 1e-11));
    }

    #[test]
    fn kind_parsing() {
        assert_eq!("Y".parse::<BesselKind>().unwrap(), BesselKind::Y);
        assert!("Q".parse::<BesselKind>().is_err());
        assert_eq!(BesselKind::K.to_string(), "K");
    }

    #[test]
    fn eval_point_rejects_negative_order() {
        assert!(EvalPoint::new(-0.5, 1.0).is_err());
        assert!(EvalPoint::new(0.5, 0.0).is_ok());
    }
}
