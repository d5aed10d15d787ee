//! Order derivatives and fractional order-integrals of the Bessel functions
//! J, Y, I and K, evaluated from integral representations with
//! double-exponential quadrature.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bessel;
pub mod complex;
pub mod deriv;
pub mod error;
pub mod finite_diff;
pub mod frac;
pub mod gamma;
pub mod incgamma;
pub mod quad;
pub mod selftest;
pub mod tail;

pub use complex::Complex;
pub use error::{Error, Result};
