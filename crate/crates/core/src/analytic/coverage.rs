//! Exposure, information, energy and joint coverage probabilities.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::cf::{psi_kernel, ShotNoiseCf};
use super::inversion::{clamp_probability, oscillatory_integral};
use super::quadrature::QuadratureOptions;
use crate::error::{Error, Result};
use crate::model::{harvest_threshold, NetworkParams, RectennaModel};
use crate::special_fn::{gamma_real, upper_gamma_int};

/// Exposure limit τ (W/m²), SINR threshold γ (linear) and harvest threshold ε (W).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoverageThresholds {
    pub tau: f64,
    pub gamma: f64,
    pub eps: f64,
}

impl CoverageThresholds {
    pub fn validate(&self, rect: &RectennaModel) -> Result<()> {
        if !(self.tau >= 0.0) {
            return Err(Error::range("tau", "exposure limit must be non-negative"));
        }
        if !(self.gamma >= 0.0 && self.gamma.is_finite()) {
            return Err(Error::range("gamma", "SINR threshold must be finite and non-negative"));
        }
        if !(self.eps >= 0.0) {
            return Err(Error::range("eps", "energy threshold must be non-negative"));
        }
        if self.eps >= rect.saturation() {
            return Err(Error::Saturation {
                eps: self.eps,
                bound: rect.saturation(),
            });
        }
        Ok(())
    }
}

/// (1 + 𝚥t·scale/μ)^{−μ}, the CF of −scale·h for h ~ gamma(μ, 1/μ).
fn gamma_factor(t: f64, scale: f64, mu: u32) -> Complex64 {
    Complex64::new(1.0, t * scale / mu as f64).powi(-(mu as i32))
}

fn unit(phase: f64) -> Complex64 {
    Complex64::from_polar(1.0, phase)
}

fn mpe_with(
    tau: f64,
    opts: &QuadratureOptions,
    kernel: ShotNoiseCf,
    serving: impl Fn(f64) -> Complex64,
) -> Result<f64> {
    if !(tau >= 0.0) {
        return Err(Error::range("tau", "exposure limit must be non-negative"));
    }
    if tau == 0.0 {
        return Ok(0.0);
    }
    let x = 4.0 * PI * tau;
    let integral = oscillatory_integral(|t| kernel.eval(t) * serving(t) / t, x, opts)?;
    clamp_probability(0.5 - integral / PI, opts.abs_tol)
}

/// p_s(τ) = P{MPE < τ}.
pub fn mpe_prob(tau: f64, p: &NetworkParams, opts: &QuadratureOptions) -> Result<f64> {
    p.validate()?;
    let exponent = p.alpha + 2.0;
    let k = p.serving_power() * p.d0.powf(-exponent);
    let kernel = psi_kernel(p, exponent)?;
    mpe_with(tau, opts, kernel, |t| gamma_factor(t, -k, p.mu))
}

/// p_s(τ) in the μ → ∞ limit of the interference, with the serving term in the
/// single-pole form (1 − 𝚥tP₀d₀^{−α−2})^{−1}.
pub fn mpe_prob_asymptotic(tau: f64, p: &NetworkParams, opts: &QuadratureOptions) -> Result<f64> {
    p.validate()?;
    let exponent = p.alpha + 2.0;
    let k = p.serving_power() * p.d0.powf(-exponent);
    let kernel = ShotNoiseCf::deterministic_fading(&p.interferer_classes(), exponent)?;
    mpe_with(tau, opts, kernel, |t| gamma_factor(t, -k, 1))
}

/// p_o(γ) = P{SINR > γ}.
pub fn info_coverage(gamma: f64, p: &NetworkParams, opts: &QuadratureOptions) -> Result<f64> {
    p.validate()?;
    if !(gamma >= 0.0 && gamma.is_finite()) {
        return Err(Error::range("gamma", "SINR threshold must be finite and non-negative"));
    }
    if gamma == 0.0 {
        return Ok(1.0);
    }
    let a = p.serving_power() * p.d0.powf(-p.alpha) / gamma;
    let b = p.effective_noise();
    let kernel = psi_kernel(p, p.alpha)?;
    let h = |t: f64| kernel.eval(t) * gamma_factor(t, a, p.mu) / t;
    let integral = oscillatory_integral(h, -b, opts)?;
    clamp_probability(0.5 - integral / PI, opts.abs_tol)
}

/// p_e(ε) = P{E > ε}.
pub fn energy_coverage(eps: f64, p: &NetworkParams, opts: &QuadratureOptions) -> Result<f64> {
    p.validate()?;
    let delta = harvest_threshold(eps, p.rho, &p.rectenna)?;
    if delta == 0.0 {
        return Ok(1.0);
    }
    let c = p.serving_power() * p.d0.powf(-p.alpha);
    let kernel = psi_kernel(p, p.alpha)?;
    let h = |t: f64| kernel.eval(t) * gamma_factor(t, -c, p.mu) / t;
    let integral = oscillatory_integral(h, delta, opts)?;
    clamp_probability(0.5 + integral / PI, opts.abs_tol)
}

/// p_J(γ, ε) = P{SINR > γ, E > ε}.
pub fn joint_coverage(th: &CoverageThresholds, p: &NetworkParams, opts: &QuadratureOptions) -> Result<f64> {
    p.validate()?;
    th.validate(&p.rectenna)?;
    if th.gamma == 0.0 {
        return energy_coverage(th.eps, p, opts);
    }
    let mu = p.mu;
    let gamma = th.gamma;
    let delta = harvest_threshold(th.eps, p.rho, &p.rectenna)?;
    let c = p.serving_power() * p.d0.powf(-p.alpha);
    let b = p.effective_noise();
    // h₀ must exceed ξ for the two interference limits to be ordered
    let xi = gamma * (delta + b) / (c * (1.0 + gamma));
    let gamma_mu = gamma_real(mu as f64)?;
    let kernel = psi_kernel(p, p.alpha)?;
    let mu_f = mu as f64;

    // both terms carry the carrier e^{−𝚥ωt}; strip it so the rest is smooth
    let omega = (delta - gamma * b) / (1.0 + gamma);
    let h = |t: f64| {
        let energy = upper_gamma_int(mu, xi * Complex64::new(mu_f, -t * c))
            .map(|ug| ug * unit(-t * delta) * gamma_factor(t, -c, mu));
        let info = upper_gamma_int(mu, xi * Complex64::new(mu_f, t * c / gamma))
            .map(|ug| ug * unit(t * b) * gamma_factor(t, c / gamma, mu));
        match (energy, info) {
            (Ok(e), Ok(i)) => unit(omega * t) * (e - i) * kernel.eval(t) / (gamma_mu * t),
            _ => Complex64::new(f64::NAN, f64::NAN),
        }
    };
    let integral = oscillatory_integral(h, omega, opts)?;
    clamp_probability(integral / PI, opts.abs_tol)
}

/// P{MPE < τ}·P{SINR > γ, E > ε}, treating the exposure event as independent.
pub fn joint_with_mpe(th: &CoverageThresholds, p: &NetworkParams, opts: &QuadratureOptions) -> Result<f64> {
    let coverage = joint_coverage(th, p, opts)?;
    if th.tau.is_infinite() {
        return Ok(coverage);
    }
    Ok(mpe_prob(th.tau, p, opts)? * coverage)
}

/// Γ(n, x)/Γ(n) for real x ≥ 0, including x = ∞.
fn regularized_upper(n: u32, x: f64) -> Result<f64> {
    if x.is_infinite() {
        return Ok(0.0);
    }
    Ok(upper_gamma_int(n, Complex64::new(x, 0.0))?.re / gamma_real(n as f64)?)
}

/// Ξ = max(γ(N₀ + N_C/ρ), δ): the serving power h₀P₀d₀^{−α} needed for both
/// coverage events when there is no interference.
pub fn coverage_floor(th: &CoverageThresholds, p: &NetworkParams) -> Result<f64> {
    let delta = harvest_threshold(th.eps, p.rho, &p.rectenna)?;
    Ok((th.gamma * p.effective_noise()).max(delta))
}

/// Closed-form P{MPE < τ, SINR > γ, E > ε} without interference.
pub fn no_interference_joint(th: &CoverageThresholds, p: &NetworkParams) -> Result<f64> {
    p.validate()?;
    th.validate(&p.rectenna)?;
    let floor = coverage_floor(th, p)?;
    let mu = p.mu as f64;
    let p0 = p.serving_power();
    let lower = mu * p.d0.powf(p.alpha) * floor / p0;
    let upper = 4.0 * PI * th.tau * mu * p.d0.powf(p.alpha + 2.0) / p0;
    let v = regularized_upper(p.mu, lower)? - regularized_upper(p.mu, upper)?;
    Ok(v.clamp(0.0, 1.0))
}

/// Transmit power maximizing `no_interference_joint`; does not depend on μ.
pub fn optimal_power(th: &CoverageThresholds, p: &NetworkParams) -> Result<f64> {
    p.validate()?;
    th.validate(&p.rectenna)?;
    let floor = coverage_floor(th, p)?;
    let exposure = 4.0 * PI * th.tau * p.d0 * p.d0;
    if !(floor > 0.0 && exposure > 0.0 && exposure.is_finite()) {
        return Err(Error::Domain(
            "optimal power needs a positive exposure limit and a positive coverage floor".into(),
        ));
    }
    let m2 = p.antenna.main * p.antenna.main;
    let scale = p.d0.powf(p.alpha) / m2;
    if exposure == floor {
        // (a − b)/ln(a/b) → b as a → b
        return Ok(scale * floor);
    }
    let rel = (exposure - floor) / floor;
    Ok(scale * (exposure - floor) / rel.ln_1p())
}
