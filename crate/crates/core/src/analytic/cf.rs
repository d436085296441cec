//! Characteristic function of Poisson shot-noise interference under Nakagami fading.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::NetworkParams;
use crate::special_fn::{beta_ext, cpow_principal, gamma_real, ComplexValue};

/// φ(t) = exp(κ·(−𝚥t)^{2/a}) for a fixed, pre-summed coefficient κ.
///
/// Any product of interference CFs with a common exponent collapses to this
/// form, since (−𝚥tP/μ)^{2/a} = (P/μ)^{2/a}·(−𝚥t)^{2/a} on the principal branch.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShotNoiseCf {
    coef: f64,
    power: f64,
}

impl ShotNoiseCf {
    /// CF of a single PPP of density `lam` and transmit power `p` under Nakagami-`mu` fading.
    pub fn single(lam: f64, p: f64, a_exp: f64, mu: u32) -> Result<Self> {
        Self::from_classes(&[(lam, p)], a_exp, mu)
    }

    /// Product of the CFs of independent classes `(density, power)` sharing an exponent.
    pub fn from_classes(classes: &[(f64, f64)], a_exp: f64, mu: u32) -> Result<Self> {
        check_exponent(a_exp)?;
        if mu == 0 {
            return Err(Error::Domain("Nakagami parameter must be >= 1".into()));
        }
        let s = 2.0 / a_exp;
        let beta = beta_ext(-s, mu as f64 + s)?;
        let mut coef = 0.0;
        for &(lam, p) in classes {
            if lam < 0.0 || p < 0.0 {
                return Err(Error::Domain("density and power must be non-negative".into()));
            }
            if lam > 0.0 && p > 0.0 {
                coef += 2.0 * PI * lam / a_exp * (p / mu as f64).powf(s) * beta;
            }
        }
        Ok(ShotNoiseCf { coef, power: s })
    }

    /// Limit μ → ∞: κ = 2πΓ(−2/a)/a · Σ λ_i P_i^{2/a}.
    pub fn deterministic_fading(classes: &[(f64, f64)], a_exp: f64) -> Result<Self> {
        check_exponent(a_exp)?;
        let s = 2.0 / a_exp;
        let weight: f64 = classes
            .iter()
            .filter(|(lam, p)| *lam > 0.0 && *p > 0.0)
            .map(|(lam, p)| lam * p.powf(s))
            .sum();
        Ok(ShotNoiseCf {
            coef: 2.0 * PI * gamma_real(-s)? / a_exp * weight,
            power: s,
        })
    }

    pub fn eval(&self, t: f64) -> ComplexValue {
        if t == 0.0 || self.coef == 0.0 {
            return Complex64::new(1.0, 0.0);
        }
        // (−𝚥t)^s has modulus |t|^s and argument ∓πs/2
        let arg = if t > 0.0 { -0.5 * PI * self.power } else { 0.5 * PI * self.power };
        (self.coef * Complex64::from_polar(t.abs().powf(self.power), arg)).exp()
    }
}

fn check_exponent(a_exp: f64) -> Result<()> {
    if a_exp > 2.0 && a_exp.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "path-loss exponent {a_exp} must exceed 2 for the interference to be finite"
        )))
    }
}

/// CF of the interference from a PPP of density `lam`, transmit power `p`,
/// path-loss exponent `a_exp` and Nakagami-`mu` fading.
pub fn interference_cf(t: f64, lam: f64, p: f64, a_exp: f64, mu: u32) -> Result<ComplexValue> {
    check_exponent(a_exp)?;
    if lam == 0.0 || t == 0.0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    let s = 2.0 / a_exp;
    let scaled = cpow_principal(Complex64::new(0.0, -t * p / mu as f64), s)?;
    let beta = beta_ext(-s, mu as f64 + s)?;
    Ok((2.0 * PI * lam / a_exp * scaled * beta).exp())
}

/// ψ(t): product of the three thinned-class CFs, λ_i = p_L q_i λ, P_i = g_i P_t.
pub fn psi(t: f64, p: &NetworkParams, a_exp: f64) -> Result<ComplexValue> {
    p.interferer_classes()
        .iter()
        .try_fold(Complex64::new(1.0, 0.0), |acc, &(lam, power)| {
            Ok(acc * interference_cf(t, lam, power, a_exp, p.mu)?)
        })
}

/// ψ as a precomputed kernel, for repeated evaluation inside integrands.
pub fn psi_kernel(p: &NetworkParams, a_exp: f64) -> Result<ShotNoiseCf> {
    ShotNoiseCf::from_classes(&p.interferer_classes(), a_exp, p.mu)
}
