//! Richardson-extrapolated central differences, used as an independent
//! oracle for order derivatives.

use crate::bessel::{value_any, BesselKind};
use crate::error::{Error, Result};

/// Highest derivative order with a stencil.
pub const MAX_ORDER: u32 = 4;

const DEFAULT_STEP: f64 = 0.5;
const TABLE_SIZE: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FdResult {
    pub value: f64,
    pub err_est: f64,
    pub n_evals: usize,
}

// Second-order central stencils: (offsets in units of h, weights, power of h).
fn stencil(n: u32) -> (&'static [f64], &'static [f64], i32) {
    match n {
        1 => (&[-1.0, 1.0], &[-0.5, 0.5], 1),
        2 => (&[-1.0, 0.0, 1.0], &[1.0, -2.0, 1.0], 2),
        3 => (&[-2.0, -1.0, 1.0, 2.0], &[-0.5, 1.0, -1.0, 0.5], 3),
        _ => (&[-2.0, -1.0, 0.0, 1.0, 2.0], &[1.0, -4.0, 6.0, -4.0, 1.0], 4),
    }
}

fn central<F>(f: &mut F, x: f64, h: f64, n: u32, evals: &mut usize) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    let (offsets, weights, p) = stencil(n);
    let mut acc = 0.0;
    for (o, w) in offsets.iter().zip(weights) {
        acc += w * f(x + o * h)?;
        *evals += 1;
    }
    Ok(acc / h.powi(p))
}

/// n-th derivative of `f` at `x` by central differences with step halving
/// and Richardson extrapolation, keeping the tableau entry with the
/// smallest error estimate.
pub fn richardson<F>(mut f: F, x: f64, n: u32, h0: f64) -> Result<FdResult>
where
    F: FnMut(f64) -> Result<f64>,
{
    if n == 0 || n > MAX_ORDER {
        return Err(Error::InvalidRequest(format!(
            "finite differences support orders 1..={MAX_ORDER}, got {n}"
        )));
    }
    if !(h0 > 0.0 && h0.is_finite()) {
        return Err(Error::InvalidRequest(format!("step must be > 0, got {h0}")));
    }
    let mut evals = 0;
    let mut prev_row: Vec<f64> = Vec::with_capacity(TABLE_SIZE);
    let mut best = FdResult {
        value: f64::NAN,
        err_est: f64::INFINITY,
        n_evals: 0,
    };
    let mut h = h0;
    for i in 0..TABLE_SIZE {
        let mut row = Vec::with_capacity(i + 1);
        row.push(central(&mut f, x, h, n, &mut evals)?);
        let mut factor = 1.0;
        for j in 1..=i {
            factor *= 4.0;
            let r = row[j - 1] + (row[j - 1] - prev_row[j - 1]) / (factor - 1.0);
            let err = (r - row[j - 1]).abs().max((r - prev_row[j - 1]).abs());
            if err <= best.err_est {
                best = FdResult {
                    value: r,
                    err_est: err,
                    n_evals: evals,
                };
            }
            row.push(r);
        }
        prev_row = row;
        h *= 0.5;
    }
    best.n_evals = evals;
    Ok(best)
}

/// ∂ⁿ/∂νⁿ of a baseline Bessel function by extrapolated differences.
pub fn bessel_order_fd(kind: BesselKind, n: u32, nu: f64, t: f64) -> Result<FdResult> {
    richardson(|mu| value_any(kind, mu, t), nu, n, DEFAULT_STEP)
}
