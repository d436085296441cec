//! Gil-Pelaez inversion: F(x) = 1/2 − (1/π)∫₀^∞ ℑ{e^{−𝚥tx}φ(t)}/t dt.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::quadrature::{integrate_tail, QuadratureOptions, TailEstimate, TailIntegrand};
use crate::error::{Error, Result};
use crate::special_fn::ComplexValue;

/// Integrand ℑ{e^{−𝚥ωt}H(t)} with H slowly varying next to the carrier.
pub(crate) struct Oscillatory<H> {
    pub h: H,
    /// Signed angular frequency of the carrier.
    pub omega: f64,
}

impl<H: Fn(f64) -> Complex64> Oscillatory<H> {
    fn derivative(&self, t: f64) -> Complex64 {
        let step = 1e-4 * t;
        ((self.h)(t + step) - (self.h)(t - step)) / (2.0 * step)
    }
}

impl<H: Fn(f64) -> Complex64> TailIntegrand for Oscillatory<H> {
    fn value(&self, t: f64) -> f64 {
        (unit(-self.omega * t) * (self.h)(t)).im
    }

    fn tail(&self, t: f64) -> TailEstimate {
        let h = (self.h)(t);
        if self.omega == 0.0 {
            return TailEstimate {
                value: 0.0,
                error: h.norm() * t,
            };
        }
        // two rounds of integration by parts against the carrier
        let dh = self.derivative(t);
        let jw = Complex64::new(0.0, self.omega);
        let value = (unit(-self.omega * t) * (h / jw + dh / (jw * jw))).im;
        let error = dh.norm() / (self.omega * self.omega);
        TailEstimate {
            value,
            error: if error.is_finite() { error } else { f64::INFINITY },
        }
    }

    fn frequency(&self) -> f64 {
        self.omega.abs()
    }
}

fn unit(phase: f64) -> Complex64 {
    Complex64::from_polar(1.0, phase)
}

/// ∫₀^∞ ℑ{e^{−𝚥ωt}H(t)} dt, with the sliver below `t_min` taken as a rectangle.
pub(crate) fn oscillatory_integral<H: Fn(f64) -> Complex64>(
    h: H,
    omega: f64,
    opts: &QuadratureOptions,
) -> Result<f64> {
    let integrand = Oscillatory { h, omega };
    let head = opts.t_min * integrand.value(opts.t_min);
    let tail = integrate_tail(&integrand, opts)?;
    Ok(head + tail.value)
}

/// Clamp a probability into [0, 1], refusing excursions beyond ten tolerances.
pub(crate) fn clamp_probability(value: f64, abs_tol: f64) -> Result<f64> {
    let slack = 10.0 * abs_tol;
    if !value.is_finite() || value < -slack || value > 1.0 + slack {
        return Err(Error::ProbabilityExcursion {
            value,
            tol: abs_tol,
        });
    }
    Ok(value.clamp(0.0, 1.0))
}

/// CDF at `x` of the distribution with characteristic function `cf`.
pub fn gil_pelaez_cdf<F>(cf: F, x: f64, opts: &QuadratureOptions) -> Result<f64>
where
    F: Fn(f64) -> ComplexValue,
{
    let integral = oscillatory_integral(|t| cf(t) / t, x, opts)?;
    clamp_probability(0.5 - integral / PI, opts.abs_tol)
}
