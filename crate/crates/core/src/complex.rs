//! Complex helpers: principal-branch logarithm and powers, integer powers by
//! repeated multiplication, and compensated summation.

use std::f64::consts::PI;
use std::ops::{Add, Sub};

use crate::error::{Error, Result};

/// Complex value type used throughout the crate.
pub type Complex = num_complex::Complex64;

/// The imaginary unit.
pub const I: Complex = Complex::new(0.0, 1.0);

/// Principal argument in `(-π, π]`.
///
/// Points on the negative real axis map to `+π` regardless of the sign of a
/// zero imaginary part.
#[inline]
pub fn arg_principal(z: Complex) -> f64 {
    if z.im == 0.0 && z.re < 0.0 {
        PI
    } else {
        z.im.atan2(z.re)
    }
}

/// Principal logarithm `ln|z| + i·Arg z`.
#[inline]
pub fn ln_principal(z: Complex) -> Complex {
    Complex::new(z.norm().ln(), arg_principal(z))
}

/// `z^a = exp(a·(ln|z| + i·Arg z))` on the principal branch.
///
/// `0^a` is `0` for `a > 0` and a domain error otherwise.
pub fn c_pow_principal(z: Complex, a: f64) -> Result<Complex> {
    if z == Complex::new(0.0, 0.0) {
        if a > 0.0 {
            return Ok(Complex::new(0.0, 0.0));
        }
        return Err(Error::Domain(format!(
            "0 raised to non-positive power {a}"
        )));
    }
    Ok((ln_principal(z) * a).exp())
}

/// `z^n` by repeated multiplication (square-and-multiply).
pub fn powi(z: Complex, n: u32) -> Complex {
    let mut acc = Complex::new(1.0, 0.0);
    let mut base = z;
    let mut e = n;
    while e > 0 {
        if e & 1 == 1 {
            acc *= base;
        }
        base *= base;
        e >>= 1;
    }
    acc
}

/// Values that can be accumulated with Neumaier's compensated summation.
pub trait Summable: Copy + Add<Output = Self> + Sub<Output = Self> {
    fn zero() -> Self;
    fn abs_ge(a: Self, b: Self) -> Self;
}

impl Summable for f64 {
    #[inline]
    fn zero() -> Self {
        0.0
    }

    // Compensation term for a + b, ordered by magnitude.
    #[inline]
    fn abs_ge(a: Self, b: Self) -> Self {
        let s = a + b;
        if a.abs() >= b.abs() {
            (a - s) + b
        } else {
            (b - s) + a
        }
    }
}

impl Summable for Complex {
    #[inline]
    fn zero() -> Self {
        Complex::new(0.0, 0.0)
    }

    #[inline]
    fn abs_ge(a: Self, b: Self) -> Self {
        Complex::new(f64::abs_ge(a.re, b.re), f64::abs_ge(a.im, b.im))
    }
}

/// Neumaier (improved Kahan) running sum.
#[derive(Debug, Clone, Copy)]
pub struct CompensatedSum<T: Summable> {
    sum: T,
    comp: T,
}

impl<T: Summable> Default for CompensatedSum<T> {
    fn default() -> Self {
        Self::new()
    }
}

impl<T: Summable> CompensatedSum<T> {
    pub fn new() -> Self {
        Self {
            sum: T::zero(),
            comp: T::zero(),
        }
    }

    #[inline]
    pub fn add(&mut self, x: T) {
        let c = T::abs_ge(self.sum, x);
        self.sum = self.sum + x;
        self.comp = self.comp + c;
    }

    #[inline]
    pub fn value(&self) -> T {
        self.sum + self.comp
    }

    /// Multiplies the running sum and its compensation by `factor`.
    #[inline]
    pub fn scale(&mut self, factor: f64)
    where
        T: std::ops::Mul<f64, Output = T>,
    {
        self.sum = self.sum * factor;
        self.comp = self.comp * factor;
    }
}
