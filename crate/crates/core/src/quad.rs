//! Double-exponential quadrature: tanh-sinh on finite intervals, exp-sinh on
//! `(a, ∞)` and sinh-sinh on the whole line.
//!
//! Every rule is the trapezoidal sum in the transformed variable `τ` with
//! step `h = h0 / 2^level`. Level 0 samples `τ = k·h0`; each later level adds
//! only the odd multiples of the new step, so no node is evaluated twice.
//! Refinement stops when two successive level sums agree to
//! `tol · max(1, |S|)` (after at least [`MIN_LEVEL`] levels).
//!
//! Nodes next to a finite endpoint are produced as `endpoint ± d·δ` with the
//! complement `δ = 1 − tanh u` computed directly, so integrable endpoint
//! singularities see their true distance to the endpoint. Near `b` that
//! distance cannot drop below one ulp of `b`, so singular endpoints are best
//! placed at the lower limit (ideally at 0).
//!
//! Complex integrands share the node set and are summed componentwise.

use std::f64::consts::FRAC_PI_2;
use std::ops::{Add, Mul, Sub};

use crate::complex::{Complex, CompensatedSum, Summable};
use crate::error::{Error, Result};

/// Lowest level at which convergence may be declared.
pub const MIN_LEVEL: u32 = 2;

// Terms smaller than this fraction of the running Σ|w f|·h end a tail.
const TAIL_REL: f64 = 1e-18;
// No tail is cut before |τ| reaches this value.
const TAIL_MIN_TAU: f64 = 1.5;
// Non-finite integrand values end the tail past this |τ| or right after a
// negligible term; elsewhere they are an error.
const EDGE_TAU: f64 = 3.0;
// Hard limit on |τ|; every transform has saturated well before this.
const TAU_MAX: f64 = 8.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadConfig {
    /// Mixed tolerance: converged when |S_L − S_{L−1}| ≤ tol · max(1, |S_L|).
    pub tol: f64,
    /// Number of step halvings after the initial step.
    pub max_level: u32,
    /// Initial step in the transformed variable.
    pub h0: f64,
    /// Absolute magnitude below which a tail term counts as negligible.
    pub cutoff: f64,
}

impl Default for QuadConfig {
    fn default() -> Self {
        Self {
            tol: 1e-10,
            max_level: 10,
            h0: 1.0,
            cutoff: 1e-300,
        }
    }
}

impl QuadConfig {
    pub fn with_tol(tol: f64) -> Self {
        Self {
            tol,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.tol > 0.0) {
            return Err(Error::InvalidRequest(format!("tolerance must be positive, got {}", self.tol)));
        }
        if self.max_level < 3 {
            return Err(Error::InvalidRequest(format!(
                "max_level must be at least 3, got {}",
                self.max_level
            )));
        }
        if !(self.h0 > 0.0) || !self.h0.is_finite() {
            return Err(Error::InvalidRequest(format!("initial step must be positive, got {}", self.h0)));
        }
        Ok(())
    }
}

/// Outcome of one quadrature call.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult<T> {
    pub value: T,
    pub err_est: f64,
    pub n_evals: usize,
    pub converged: bool,
    pub level_used: u32,
}

impl<T: Copy> QuadResult<T> {
    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> QuadResult<U> {
        QuadResult {
            value: f(self.value),
            err_est: self.err_est,
            n_evals: self.n_evals,
            converged: self.converged,
            level_used: self.level_used,
        }
    }
}

impl QuadResult<f64> {
    /// A result known exactly, with no quadrature performed.
    pub fn exact(value: f64) -> Self {
        Self {
            value,
            err_est: 0.0,
            n_evals: 0,
            converged: true,
            level_used: 0,
        }
    }

    /// Combines two pieces as `self + sign·other`: errors and counts add.
    pub fn combine(self, sign: f64, other: QuadResult<f64>) -> Self {
        Self {
            value: self.value + sign * other.value,
            err_est: self.err_est + other.err_est,
            n_evals: self.n_evals + other.n_evals,
            converged: self.converged && other.converged,
            level_used: self.level_used.max(other.level_used),
        }
    }

    pub fn scale(self, factor: f64) -> Self {
        Self {
            value: self.value * factor,
            err_est: self.err_est * factor.abs(),
            ..self
        }
    }
}

/// Integrand value types: real or complex.
pub trait QuadValue:
    Summable + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self>
{
    fn magnitude(&self) -> f64;
    fn finite(&self) -> bool;
}

impl QuadValue for f64 {
    #[inline]
    fn magnitude(&self) -> f64 {
        self.abs()
    }
    #[inline]
    fn finite(&self) -> bool {
        self.is_finite()
    }
}

impl QuadValue for Complex {
    #[inline]
    fn magnitude(&self) -> f64 {
        self.re.abs().max(self.im.abs())
    }
    #[inline]
    fn finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
}

/// A node of a transformed rule: abscissa and weight `dx/dτ`.
#[derive(Debug, Clone, Copy)]
struct Node {
    x: f64,
    w: f64,
}

trait Transform {
    /// Node at `τ`, or `None` once the map has saturated (endpoint reached or
    /// overflow).
    fn node(&self, tau: f64) -> Option<Node>;
}

struct TanhSinh {
    a: f64,
    b: f64,
    half: f64,
}

impl Transform for TanhSinh {
    fn node(&self, tau: f64) -> Option<Node> {
        let u = FRAC_PI_2 * tau.sinh();
        // e = e^{-2|u|}; 1 − tanh|u| = 2e/(1+e); sech²u = 4e/(1+e)².
        let e = (-2.0 * u.abs()).exp();
        if e == 0.0 {
            return None;
        }
        let delta = self.half * 2.0 * e / (1.0 + e);
        let x = if tau >= 0.0 { self.b - delta } else { self.a + delta };
        if x <= self.a || x >= self.b {
            return None;
        }
        // The weight is proportional to δ; rescale it to the distance the
        // rounded node actually has from its endpoint.
        let actual = if tau >= 0.0 { self.b - x } else { x - self.a };
        let w = self.half * FRAC_PI_2 * tau.cosh() * 4.0 * e / ((1.0 + e) * (1.0 + e)) * (actual / delta);
        Some(Node { x, w })
    }
}

struct ExpSinh {
    a: f64,
}

impl Transform for ExpSinh {
    fn node(&self, tau: f64) -> Option<Node> {
        let g = (FRAC_PI_2 * tau.sinh()).exp();
        if g == 0.0 || !g.is_finite() {
            return None;
        }
        let x = self.a + g;
        if x == self.a || !x.is_finite() {
            return None;
        }
        Some(Node {
            x,
            w: FRAC_PI_2 * tau.cosh() * g,
        })
    }
}

struct SinhSinh;

impl Transform for SinhSinh {
    fn node(&self, tau: f64) -> Option<Node> {
        let u = FRAC_PI_2 * tau.sinh();
        let x = u.sinh();
        let w = FRAC_PI_2 * tau.cosh() * u.cosh();
        if !x.is_finite() || !w.is_finite() {
            return None;
        }
        Some(Node { x, w })
    }
}

/// ∫_a^b f(x) dx with the tanh-sinh rule.
pub fn tanh_sinh<T, F>(f: F, a: f64, b: f64, cfg: &QuadConfig) -> Result<QuadResult<T>>
where
    T: QuadValue,
    F: FnMut(f64) -> T,
{
    if !(a < b) || !a.is_finite() || !b.is_finite() {
        return Err(Error::InvalidInterval { a, b });
    }
    let rule = TanhSinh {
        a,
        b,
        half: 0.5 * (b - a),
    };
    integrate(f, &rule, cfg)
}

/// ∫_a^∞ f(x) dx with the exp-sinh rule.
pub fn exp_sinh<T, F>(f: F, a: f64, cfg: &QuadConfig) -> Result<QuadResult<T>>
where
    T: QuadValue,
    F: FnMut(f64) -> T,
{
    if !a.is_finite() {
        return Err(Error::InvalidInterval { a, b: f64::INFINITY });
    }
    integrate(f, &ExpSinh { a }, cfg)
}

/// ∫_{−∞}^{∞} f(x) dx with the sinh-sinh rule.
pub fn sinh_sinh<T, F>(f: F, cfg: &QuadConfig) -> Result<QuadResult<T>>
where
    T: QuadValue,
    F: FnMut(f64) -> T,
{
    integrate(f, &SinhSinh, cfg)
}

struct Accumulator<T: Summable> {
    total: CompensatedSum<T>,
    abs_total: f64,
    n_evals: usize,
}

// Tail state of one direction of a sweep.
#[derive(Clone, Copy)]
struct Direction {
    sign: f64,
    active: bool,
    small_run: u32,
}

// Evaluates one node; `Ok(None)` ends the direction.
fn visit<T, F, R>(f: &mut F, rule: &R, dir: &Direction, tau: f64, n_evals: &mut usize) -> Result<Option<T>>
where
    T: QuadValue,
    F: FnMut(f64) -> T,
    R: Transform,
{
    if tau.abs() > TAU_MAX {
        return Ok(None);
    }
    let Some(node) = rule.node(tau) else {
        return Ok(None);
    };
    if node.w == 0.0 {
        return Ok(None);
    }
    let fx = f(node.x);
    *n_evals += 1;
    if !fx.finite() {
        if dir.small_run > 0 || tau.abs() > EDGE_TAU {
            return Ok(None);
        }
        return Err(Error::NonFiniteIntegrand { x: node.x });
    }
    Ok(Some(fx * node.w))
}

// Sums τ = ±(start + stride·k), k = 0, 1, ..., pairing the two directions so
// that mirrored integrands on symmetric rules give identical sums.
#[allow(clippy::too_many_arguments)]
fn sweep<T, F, R>(
    f: &mut F,
    rule: &R,
    acc: &mut Accumulator<T>,
    h: f64,
    start: f64,
    stride: f64,
    cutoff: f64,
) -> Result<()>
where
    T: QuadValue,
    F: FnMut(f64) -> T,
    R: Transform,
{
    let mut dirs = [
        Direction { sign: 1.0, active: true, small_run: 0 },
        Direction { sign: -1.0, active: true, small_run: 0 },
    ];
    let mut k = 0usize;
    while dirs.iter().any(|d| d.active) {
        let step = start + stride * k as f64;
        k += 1;
        let mut pair = [None, None];
        for (slot, dir) in pair.iter_mut().zip(dirs.iter_mut()) {
            if !dir.active {
                continue;
            }
            match visit(f, rule, dir, dir.sign * step, &mut acc.n_evals)? {
                Some(term) => *slot = Some(term),
                None => dir.active = false,
            }
        }
        let (sum, mags) = match pair {
            [Some(p), Some(m)] => (p + m, [p.magnitude(), m.magnitude()]),
            [Some(p), None] => (p, [p.magnitude(), 0.0]),
            [None, Some(m)] => (m, [0.0, m.magnitude()]),
            [None, None] => break,
        };
        acc.total.add(sum);
        acc.abs_total += mags[0] + mags[1];
        let threshold = cutoff.max(TAIL_REL * acc.abs_total * h);
        for (dir, (mag, present)) in dirs.iter_mut().zip(mags.iter().zip(pair.iter())) {
            if present.is_none() {
                continue;
            }
            if *mag <= threshold && step >= TAIL_MIN_TAU {
                dir.small_run += 1;
                if dir.small_run >= 2 {
                    dir.active = false;
                }
            } else {
                dir.small_run = 0;
            }
        }
    }
    Ok(())
}

fn integrate<T, F, R>(mut f: F, rule: &R, cfg: &QuadConfig) -> Result<QuadResult<T>>
where
    T: QuadValue,
    F: FnMut(f64) -> T,
    R: Transform,
{
    cfg.validate()?;
    let mut acc = Accumulator {
        total: CompensatedSum::<T>::new(),
        abs_total: 0.0,
        n_evals: 0,
    };

    // Level 0: τ = 0, ±h0, ±2h0, ...
    let mut h = cfg.h0;
    if let Some(node) = rule.node(0.0) {
        let fx = f(node.x);
        acc.n_evals += 1;
        if !fx.finite() {
            return Err(Error::NonFiniteIntegrand { x: node.x });
        }
        let term = fx * node.w;
        acc.abs_total += term.magnitude();
        acc.total.add(term);
    }
    sweep(&mut f, rule, &mut acc, h, h, h, cfg.cutoff)?;
    let mut prev = acc.total.value() * h;
    let mut result = QuadResult {
        value: prev,
        err_est: f64::INFINITY,
        n_evals: acc.n_evals,
        converged: false,
        level_used: 0,
    };

    for level in 1..=cfg.max_level {
        h *= 0.5;
        // New nodes: odd multiples of h.
        sweep(&mut f, rule, &mut acc, h, h, 2.0 * h, cfg.cutoff)?;
        let current = acc.total.value() * h;
        let diff = (current - prev).magnitude();
        let rounding = 4.0 * f64::EPSILON * acc.abs_total * h;
        let err_est = diff.max(rounding);
        let scale = current.magnitude().max(1.0);
        result = QuadResult {
            value: current,
            err_est,
            n_evals: acc.n_evals,
            converged: level >= MIN_LEVEL && err_est <= cfg.tol * scale,
            level_used: level,
        };
        if result.converged {
            break;
        }
        prev = current;
    }
    Ok(result)
}
