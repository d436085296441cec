//! Panel quadrature on (t_min, ∞) for Gil-Pelaez type integrands.
//!
//! Panels grow geometrically from `t_min` until their width reaches a cap of a
//! few periods of the integrand's dominant oscillation; every panel is
//! integrated with a fixed-order Gauss-Legendre rule. After each panel the
//! integrand supplies an estimate of the remaining tail with an error bound,
//! and integration stops once that bound has stayed below `abs_tol/10` for
//! three consecutive panels.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Panel width relative to the left end while the panels are growing.
const GROWTH: f64 = 1.0;
/// Oscillation periods allowed inside one panel.
const PERIODS_PER_PANEL: f64 = 4.0;
const QUIET_PANELS: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureOptions {
    pub t_min: f64,
    pub abs_tol: f64,
    pub max_panels: usize,
    pub panel_order: usize,
}

impl Default for QuadratureOptions {
    fn default() -> Self {
        QuadratureOptions {
            t_min: 1e-30,
            abs_tol: 1e-6,
            max_panels: 2000,
            panel_order: 32,
        }
    }
}

impl QuadratureOptions {
    pub fn validate(&self) -> Result<()> {
        if !(self.t_min > 0.0) {
            return Err(Error::range("t_min", "must be positive"));
        }
        if !(self.abs_tol > 0.0) {
            return Err(Error::range("abs_tol", "must be positive"));
        }
        if self.max_panels < 1 {
            return Err(Error::range("max_panels", "must be at least 1"));
        }
        if self.panel_order < 2 {
            return Err(Error::range("panel_order", "must be at least 2"));
        }
        Ok(())
    }
}

/// Nodes and weights of the n-point Gauss-Legendre rule on [−1, 1].
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        // Tricomi initial guess, then Newton on P_n
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            let pn = if n == 1 { x } else { p1 };
            let pm = if n == 1 { 1.0 } else { p0 };
            dp = n as f64 * (x * pn - pm) / (x * x - 1.0);
            let dx = pn / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

/// Estimate of ∫_t^∞ f with a bound on its error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailEstimate {
    pub value: f64,
    pub error: f64,
}

/// Integrand of a tail integral together with what the engine needs to stop.
pub trait TailIntegrand {
    /// Value of the integrand at `t > 0`.
    fn value(&self, t: f64) -> f64;

    /// Remaining integral beyond `t`.
    fn tail(&self, t: f64) -> TailEstimate;

    /// Largest angular frequency present in the integrand; zero when it does
    /// not oscillate.
    fn frequency(&self) -> f64;
}

/// Result of a tail integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailIntegral {
    pub value: f64,
    pub panels: usize,
    pub t_end: f64,
}

/// ∫_{t_min}^∞ f(t) dt.
pub fn integrate_tail<F: TailIntegrand>(f: &F, opts: &QuadratureOptions) -> Result<TailIntegral> {
    opts.validate()?;
    let (nodes, weights) = gauss_legendre(opts.panel_order);
    let freq = f.frequency().abs();
    let width_cap = if freq > 0.0 {
        PERIODS_PER_PANEL * 2.0 * PI / freq
    } else {
        f64::INFINITY
    };
    let quiet_level = opts.abs_tol / 10.0;

    let mut total = 0.0;
    let mut left = opts.t_min;
    let mut quiet = 0;
    let mut tail = f.tail(left);
    for panel in 1..=opts.max_panels {
        let width = (GROWTH * left).min(width_cap);
        let right = left + width;
        let (mid, half) = (0.5 * (left + right), 0.5 * width);
        let contribution: f64 = nodes
            .iter()
            .zip(&weights)
            .map(|(x, w)| w * f.value(mid + half * x))
            .sum::<f64>()
            * half;
        if !contribution.is_finite() {
            return Err(Error::Domain(format!("non-finite integrand on [{left}, {right}]")));
        }
        total += contribution;
        left = right;

        tail = f.tail(left);
        quiet = if tail.error < quiet_level { quiet + 1 } else { 0 };
        if quiet >= QUIET_PANELS {
            return Ok(TailIntegral {
                value: total + tail.value,
                panels: panel,
                t_end: left,
            });
        }
    }
    Err(Error::Convergence {
        panels: opts.max_panels,
        t: left,
        tail: tail.error,
    })
}
