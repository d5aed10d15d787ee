//! Real gamma-family functions: Γ, ln Γ, 1/Γ and ψ.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_860_606_512_090_082_4;

const LANCZOS_G: f64 = 607.0 / 128.0;

// Godfrey's coefficients for g = 607/128, n = 15.
#[allow(clippy::excessive_precision)]
const LANCZOS_COEF: [f64; 15] = [
    0.999_999_999_999_997_09,
    57.156_235_665_862_923_5,
    -59.597_960_355_475_491_2,
    14.136_097_974_741_747_1,
    -0.491_913_816_097_620_199,
    0.339_946_499_848_118_887e-4,
    0.465_236_289_270_485_756e-4,
    -0.983_744_753_048_795_646e-4,
    0.158_088_703_224_912_489e-3,
    -0.210_264_441_724_104_883e-3,
    0.217_439_618_115_212_643e-3,
    -0.164_318_106_536_763_890e-3,
    0.844_182_239_838_527_433e-4,
    -0.261_908_384_015_814_087e-4,
    0.368_991_826_595_316_234e-5,
];

// Lanczos series sum A_g(x) for Γ(x + 1) = √(2π) (x+g+½)^{x+½} e^{-(x+g+½)} A_g(x).
fn lanczos_sum(x: f64) -> f64 {
    let mut s = LANCZOS_COEF[0];
    for (k, c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        s += c / (x + k as f64);
    }
    s
}

fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && x == x.floor()
}

/// Γ(x) for real x. Poles at non-positive integers return ±∞.
pub fn gamma(x: f64) -> f64 {
    if is_nonpositive_integer(x) {
        return f64::INFINITY;
    }
    if x < 0.5 {
        return PI / ((PI * x).sin() * gamma(1.0 - x));
    }
    if x > 171.7 {
        return f64::INFINITY;
    }
    // Exact factorials for small integers keep the integer recurrences tight.
    if x == x.floor() && x <= 30.0 {
        let mut f = 1.0;
        let mut k = 2.0;
        while k < x {
            f *= k;
            k += 1.0;
        }
        return f;
    }
    let y = x - 1.0;
    let base = y + LANCZOS_G + 0.5;
    // Split the power to avoid overflow before the exponential decays it.
    let half = base.powf(0.5 * (y + 0.5));
    (2.0 * PI).sqrt() * half * (half * (-base).exp()) * lanczos_sum(y)
}

/// ln Γ(x) for x > 0.
pub fn ln_gamma(x: f64) -> f64 {
    debug_assert!(x > 0.0);
    if x < 0.5 {
        // Reflection keeps the Lanczos sum in its accurate range.
        return (PI / (PI * x).sin()).ln() - ln_gamma(1.0 - x);
    }
    if x < 20.0 {
        return gamma(x).ln();
    }
    let y = x - 1.0;
    let base = y + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (y + 0.5) * base.ln() - base + lanczos_sum(y).ln()
}

/// 1/Γ(x), entire: zero at the non-positive integers.
pub fn rgamma(x: f64) -> f64 {
    if is_nonpositive_integer(x) {
        return 0.0;
    }
    if x < 0.5 {
        return (PI * x).sin() * gamma(1.0 - x) / PI;
    }
    if x > 171.0 {
        return (-ln_gamma(x)).exp();
    }
    1.0 / gamma(x)
}

const DIGAMMA_SHIFT: f64 = 10.0;

// B_{2k} / (2k) for k = 1..7.
const DIGAMMA_ASYMPTOTIC: [f64; 7] = [
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32760.0,
    1.0 / 12.0,
];

/// Digamma ψ(x) = Γ'(x)/Γ(x).
///
/// Shifts `x` upward with ψ(x) = ψ(x + 1) − 1/x until `x ≥ 10`, then applies
/// the asymptotic expansion `ln x − 1/(2x) − Σ B_{2k}/(2k x^{2k})`. Negative
/// arguments go through the reflection formula.
pub fn digamma(x: f64) -> Result<f64> {
    if is_nonpositive_integer(x) {
        return Err(Error::Pole(x));
    }
    if !x.is_finite() {
        return Err(Error::Domain(format!("digamma of {x}")));
    }
    if x < 0.0 {
        // ψ(x) = ψ(1 − x) − π cot(πx)
        return Ok(digamma(1.0 - x)? - PI / (PI * x).tan());
    }
    let mut shift = 0.0;
    let mut y = x;
    while y < DIGAMMA_SHIFT {
        shift -= 1.0 / y;
        y += 1.0;
    }
    let r2 = 1.0 / (y * y);
    let mut poly = 0.0;
    for c in DIGAMMA_ASYMPTOTIC.iter().rev() {
        poly = poly * r2 + c;
    }
    Ok(shift + y.ln() - 0.5 / y - r2 * poly)
}
